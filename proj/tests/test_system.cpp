#include <catch_amalgamated.hpp>

#include "limcert/cocycle.hpp"
#include "test_support.hpp"

using namespace limcert;
using limcert::testing::RatGen;

TEST_CASE("eta family closed forms and tables") {
    const auto h = EtaFamily::harmonic(1, 1, 1);
    CHECK(h.exponent_at(0) == Rat(1));
    CHECK(h.exponent_at(4) == Rat(1, 5));
    CHECK(*h.first_level_below(Rat(1, 5)) == 5);  // strict inequality
    CHECK(*h.first_level_below(Rat(2)) == 0);
    CHECK(!h.first_level_below(Rat(0)).has_value());

    CHECK(parse_eta_family("1/(n+1)") == h);
    CHECK(parse_eta_family("1/(2n+2)") == EtaFamily::harmonic(1, 2, 2));
    CHECK(parse_eta_family("2/(1*n+2)") == EtaFamily::harmonic(2, 1, 2));
    CHECK_THROWS_AS(parse_eta_family("garbage"), ParseError);

    CHECK_THROWS_AS(EtaFamily::harmonic(0, 1, 1), InvalidConfigError);
    CHECK_THROWS_AS(EtaFamily::table({Rat(1), Rat(1, 3), Rat(1, 2)}), InvalidConfigError);  // permuted
    CHECK_THROWS_AS(EtaFamily::table({Rat(1), Rat(0)}), InvalidConfigError);

    const auto t = EtaFamily::table({Rat(1), Rat(1, 2), Rat(1, 3)});
    CHECK(t.exponent_at(2) == Rat(1, 3));
    CHECK_THROWS_AS(t.exponent_at(3), HorizonExceededError);
}

TEST_CASE("system construction and level specs") {
    const auto bidisk = build_system(SystemKind::BidiskOpenDagger, {});
    CHECK(bidisk.arity() == 2);
    const auto level1 = bidisk.level(1);
    REQUIRE(level1.base.size() == 2);
    CHECK(level1.base[0].radius.e == Rat(1, 2));
    CHECK(level1.base[0].mode == Mode::Dagger);
    CHECK(level1.base[1].radius.e == Rat(0));
    CHECK(level1.base[1].mode == Mode::Dagger);

    const auto stein = build_system(SystemKind::OpenDiskStein, {});
    CHECK(stein.arity() == 1);
    CHECK(stein.level(2).base.size() == 1);
    CHECK(stein.level(2).base[0].radius.e == Rat(1, 3));
    CHECK(stein.level(2).base[0].mode == Mode::Closed);
    CHECK(stein.exponent_limit() == Rat(0));

    // nesting: level exponents strictly decrease, so level m sits inside level n for m >= n
    for (long n = 0; n < 6; ++n) CHECK(bidisk.level_exponent(n + 1) < bidisk.level_exponent(n));

    SystemConfig bad;
    bad.prime = 4;
    CHECK_THROWS_AS(build_system(SystemKind::OpenDiskStein, bad), InvalidConfigError);
    CHECK_THROWS_AS(build_system(SystemKind::AnnulusFrechetFactor, SystemConfig{}), InvalidConfigError);
}

TEST_CASE("delta of a coherent thread vanishes except the final entry") {
    const auto sys = build_system(SystemKind::OpenDiskStein, {});
    const auto f = TruncatedSeries::monomial(2, 0, Rat(3));
    const std::vector<TruncatedSeries> w = {f, f, f};
    const auto v = delta_apply(w, sys);
    REQUIRE(v.size() == 3);
    CHECK(v[0].is_zero());
    CHECK(v[1].is_zero());
    CHECK(v[2] == f);
}

TEST_CASE("delta of the power thread") {
    const auto sys = build_system(SystemKind::OpenDiskStein, {});
    std::vector<TruncatedSeries> w;
    for (Exp n = 0; n <= 2; ++n) w.push_back(TruncatedSeries::monomial(n, 0, Rat(1)));
    const auto v = delta_apply(w, sys);
    CHECK(v[0] == TruncatedSeries::monomial(0, 0, Rat(1)) - TruncatedSeries::monomial(1, 0, Rat(1)));
    CHECK(v[1] == TruncatedSeries::monomial(1, 0, Rat(1)) - TruncatedSeries::monomial(2, 0, Rat(1)));
    CHECK(v[2] == TruncatedSeries::monomial(2, 0, Rat(1)));
}

TEST_CASE("telescoping re-sum inverts delta") {
    RatGen gen(401);
    const auto sys = build_system(SystemKind::BidiskOpenDagger, {});
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<TruncatedSeries> w;
        for (int n = 0; n < 5; ++n) {
            TruncatedSeries f;
            const int terms = static_cast<int>(gen.integer(0, 4));
            for (int t = 0; t < terms; ++t) f.set(gen.integer(0, 6), gen.integer(0, 6), gen());
            w.push_back(std::move(f));
        }
        const auto v = delta_apply(w, sys);
        for (std::size_t n = 0; n < w.size(); ++n) {
            TruncatedSeries resum;
            for (std::size_t t = n; t < v.size(); ++t) resum = resum + v[t];
            REQUIRE(resum == w[n]);
        }
    }
    CHECK_THROWS_AS(delta_apply(std::vector<TruncatedSeries>{TruncatedSeries{}}, sys),
                    PreconditionViolatedError);
}

TEST_CASE("zero cocycle lifts to the zero thread") {
    const auto sys = build_system(SystemKind::OpenDiskStein, {});
    const CocycleRule zero{0, 0, 0, 0, Rat(0), Rat(0), 0};
    const auto res = delta_solve(zero, sys, 4);
    REQUIRE(res.lifted());
    for (const auto& lc : res.levels) CHECK(lc.cert.verdict == MembershipVerdict::Member);
}

TEST_CASE("the power cocycle lifts through the open-disk system") {
    const auto sys = build_system(SystemKind::OpenDiskStein, {});
    const CocycleRule xn{0, 1, 0, 0, Rat(0), Rat(0), std::nullopt};  // v_n = x^n
    const auto res = delta_solve(xn, sys, 8);
    REQUIRE(res.lifted());
    CHECK(res.levels.size() == 9);
    REQUIRE(res.tail.has_value());
    CHECK(res.tail->rule == "slope-limit-nonnegative");
    CHECK(res.tail->limit_slack == Rat(0));
    for (const auto& lc : res.levels) {
        CHECK(lc.cert.verdict == MembershipVerdict::Member);
        // at level n the tail norms run along slope e_n > 0
        REQUIRE(lc.cert.witness.has_value());
    }
}

TEST_CASE("finite-support cocycles lift as polynomials") {
    const auto sys = build_system(SystemKind::OpenDiskStein, {});
    const CocycleRule only_v0{3, 0, 0, 0, Rat(-2), Rat(0), 1};
    const auto res = delta_solve(only_v0, sys, 6);
    REQUIRE(res.lifted());
    CHECK(!res.tail.has_value());
    CHECK(res.levels[0].cert.note == "finite tail");
    CHECK(res.levels[1].cert.note == "zero tail");
}

TEST_CASE("an under-decaying cocycle obstructs at the exact first failing level") {
    const auto sys = build_system(SystemKind::OpenDiskStein, {});
    // slack(n) = -1/5 + e_n: fails first at e_4 = 1/5 (exact hit, bounded)
    const CocycleRule rule{0, 1, 0, 0, Rat(0), make_rat(-1, 5), std::nullopt};
    const auto res = delta_solve(rule, sys, 2);
    REQUIRE(!res.lifted());
    REQUIRE(res.obstruction.has_value());
    CHECK(res.obstruction->level == 4);
    CHECK(res.obstruction->slope == Rat(1, 5));
    CHECK(res.obstruction->verdict_at_slope == LimitVerdict::Bounded);

    // a non-exact-hit variant diverges to -inf at its first failing level:
    // slack(n) = -2/7 + e_n turns negative first at e_3 = 1/4
    const CocycleRule worse{0, 1, 0, 0, Rat(0), make_rat(-2, 7), std::nullopt};
    const auto res2 = delta_solve(worse, sys, 2);
    REQUIRE(!res2.lifted());
    CHECK(res2.obstruction->level == 3);
    CHECK(res2.obstruction->slope == Rat(1, 4));
    CHECK(res2.obstruction->verdict_at_slope == LimitVerdict::DivergesToMinusInf);
}

TEST_CASE("bidisk growth rules obstruct through the tail search") {
    const auto sys = build_system(SystemKind::BidiskOpenDagger, {});
    // slack(n) = -1/3 + e_n hits zero exactly at e_2 = 1/3; with horizon 0
    // the failure is located symbolically, not by the explicit level checks
    const CocycleRule rule{0, 1, 0, 1, Rat(0), make_rat(-1, 3), std::nullopt};
    const auto res = delta_solve(rule, sys, 0);
    REQUIRE(!res.lifted());
    CHECK(res.obstruction->level == 2);
    CHECK(res.obstruction->verdict_at_slope == LimitVerdict::Bounded);

    // with enough decay the same shape lifts through every dagger level
    const CocycleRule good{0, 1, 0, 1, Rat(0), Rat(1, 100), std::nullopt};
    const auto res2 = delta_solve(good, sys, 6);
    REQUIRE(res2.lifted());
    REQUIRE(res2.tail.has_value());
    CHECK(res2.tail->limit_slack == Rat(1, 100));
}

TEST_CASE("an immediately failing cocycle is reported at its level") {
    const auto sys = build_system(SystemKind::OpenDiskStein, {});
    const CocycleRule flat{0, 0, 0, 0, Rat(0), Rat(0), std::nullopt};  // constant scalars, no decay
    const auto res = delta_solve(flat, sys, 5);
    REQUIRE(!res.lifted());
    CHECK(res.obstruction->level == 0);
    CHECK(res.obstruction->verdict_at_slope == LimitVerdict::Bounded);
}

TEST_CASE("table-backed families raise HorizonExceeded on asymptotic questions") {
    SystemConfig cfg;
    cfg.eta = EtaFamily::table({Rat(1), Rat(1, 2), Rat(1, 3)});
    const auto sys = build_system(SystemKind::OpenDiskStein, cfg);
    const CocycleRule xn{0, 1, 0, 0, Rat(0), Rat(0), std::nullopt};
    CHECK_THROWS_AS(delta_solve(xn, sys, 2), HorizonExceededError);
    // finite cocycles inside the table still work
    const CocycleRule fin{1, 0, 0, 0, Rat(0), Rat(0), 2};
    CHECK(delta_solve(fin, sys, 2).lifted());
}

TEST_CASE("cocycle rule validation") {
    CHECK_THROWS_AS((CocycleRule{0, -1, 0, 0, Rat(0), Rat(0), std::nullopt}).validate(1),
                    PreconditionViolatedError);
    CHECK_THROWS_AS((CocycleRule{0, 0, 1, 0, Rat(0), Rat(0), std::nullopt}).validate(1),
                    PreconditionViolatedError);
    CHECK_THROWS_AS((CocycleRule{5, -2, 0, 0, Rat(0), Rat(0), 4}).validate(2), PreconditionViolatedError);
    CHECK_NOTHROW((CocycleRule{5, -1, 0, 0, Rat(0), Rat(0), 4}).validate(2));  // stays nonnegative
}

TEST_CASE("standard corpora have the advertised shapes") {
    const auto corpus = standard_open_disk_corpus();
    CHECK(corpus.size() == 100);
    CHECK(corpus.front() == CocycleRule{0, 1, 0, 0, Rat(0), Rat(0), std::nullopt});
    for (const auto& rule : corpus) CHECK_NOTHROW(rule.validate(1));

    const auto finite = standard_bidisk_finite_corpus(50);
    for (const auto& rule : finite) {
        REQUIRE(rule.support_end.has_value());
        CHECK_NOTHROW(rule.validate(2));
        for (long n = 0; n < *rule.support_end; ++n) CHECK(rule.exp_i(n) + rule.exp_j(n) <= 50);
    }
}
