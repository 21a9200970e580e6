#include <catch_amalgamated.hpp>

#include "limcert/certificate.hpp"
#include "test_support.hpp"

using namespace limcert;
using limcert::testing::RatGen;

namespace {

InverseSystem default_bidisk() { return build_system(SystemKind::BidiskOpenDagger, {}); }

// Draw precondition-satisfying inputs: n <= 5, m <= n+5, e_lambda in (-2,0),
// e_eta in (0, e_n).
GridPoint random_inputs(RatGen& gen, const InverseSystem& sys) {
    GridPoint g;
    g.n = gen.integer(0, 5);
    g.m = g.n + gen.integer(0, 5);
    do {
        g.e_lambda = make_rat(-gen.integer(1, 40), gen.integer(21, 40));
    } while (!(g.e_lambda > -2 && g.e_lambda < 0));
    const Rat e_n = sys.level_exponent(g.n);
    g.e_eta = e_n * make_rat(gen.integer(1, 39), 40);
    return g;
}

}  // namespace

TEST_CASE("worked certificate: n=0 m=1 e_lambda=-1/2 e_eta=1/2") {
    const auto sys = default_bidisk();
    const auto cert = criterion_failure_witness(0, 1, make_rat(-1, 2), Rat(1, 2), sys);
    CHECK(cert.d == 1);
    CHECK(cert.e_rho == Rat(5, 12));
    CHECK(cert.e_delta == make_rat(-1, 24));
    CHECK(cert.e_eta_prime == Rat(11, 24));
    CHECK(cert.sum_slope(sys) == Rat(1, 3));
    CHECK(cert.l == 2);
    CHECK(cert.env == Envelope{make_rat(-5, 12), Sublinear::CeilSqrt, Rat(0)});
    CHECK(verify_certificate(cert, sys).ok());
}

TEST_CASE("worked certificate: n=1 m=2 e_lambda=-1/4 e_eta=1/3") {
    const auto sys = default_bidisk();
    const auto cert = criterion_failure_witness(1, 2, make_rat(-1, 4), Rat(1, 3), sys);
    CHECK(cert.d == 1);
    CHECK(cert.e_rho == Rat(7, 24));
    CHECK(cert.e_delta == make_rat(-1, 48));
    CHECK(cert.e_eta_prime == Rat(5, 16));
    CHECK(cert.sum_slope(sys) == Rat(1, 4));
    CHECK(verify_certificate(cert, sys).ok());
}

TEST_CASE("constructor preconditions") {
    const auto sys = default_bidisk();
    CHECK_THROWS_AS(criterion_failure_witness(0, 1, Rat(1, 2), Rat(1, 2), sys), PreconditionViolatedError);
    CHECK_THROWS_AS(criterion_failure_witness(1, 0, make_rat(-1, 2), Rat(1, 4), sys), PreconditionViolatedError);
    CHECK_THROWS_AS(criterion_failure_witness(1, 1, make_rat(-1, 2), Rat(1, 2), sys),  // e_eta = e_1
                    PreconditionViolatedError);
    CHECK_THROWS_AS(criterion_failure_witness(0, 0, make_rat(-1, 2), Rat(0), sys), PreconditionViolatedError);
    CHECK_THROWS_AS(criterion_failure_witness(0, 0, make_rat(-1, 2), Rat(1, 2),
                                              build_system(SystemKind::OpenDiskStein, {})),
                    PreconditionViolatedError);
}

TEST_CASE("large lambda drops force d > 1") {
    const auto sys = default_bidisk();
    // e_eta = 9/10 with e_lambda = -1/10 at m = 0 needs the drop to pass e_0 = 1
    const auto cert = criterion_failure_witness(0, 0, make_rat(-1, 10), make_rat(19, 20), sys);
    CHECK(cert.d == 1);  // 19/20 - 1/10 = 17/20 < 1 already
    const auto sys2 = default_bidisk();
    const auto cert2 = criterion_failure_witness(1, 1, make_rat(-1, 20), make_rat(49, 100), sys2);
    // drop must fall below e_1 = 1/2: 49/100 - d/20 < 1/2 iff d > -1/5, so d = 1
    CHECK(cert2.d == 1);
    // force a genuinely multi-step d: e_eta just below e_n, tiny lambda, deep m
    const auto cert3 = criterion_failure_witness(0, 3, make_rat(-1, 100), make_rat(99, 100), sys);
    // drop below e_3 = 1/4: 99/100 - d/100 < 25/100 iff d > 74
    CHECK(cert3.d == 75);
    CHECK(verify_certificate(cert3, sys).ok());
}

TEST_CASE("deep levels and extreme parameters stay exact") {
    const auto sys = default_bidisk();
    // e_30 = 1/31, e_40 = 1/41: d must clear the gap in steps of 1/997
    const auto cert = criterion_failure_witness(30, 40, make_rat(-1, 997), make_rat(1, 32), sys);
    CHECK(cert.d == 7);  // smallest d with 1/32 - d/997 < 1/41
    CHECK(verify_certificate(cert, sys).ok());
}

TEST_CASE("round-trip soundness on 1000 random draws") {
    const auto sys = default_bidisk();
    RatGen gen(501);
    for (int k = 0; k < 1000; ++k) {
        const auto g = random_inputs(gen, sys);
        const auto cert = criterion_failure_witness(g.n, g.m, g.e_lambda, g.e_eta, sys);
        const auto rep = verify_certificate(cert, sys);
        if (!rep.ok()) {
            CAPTURE(g.n, g.m, format_rat(g.e_lambda), format_rat(g.e_eta));
            for (const auto& name : rep.failed_names()) UNSCOPED_INFO("failed: " << name);
        }
        REQUIRE(rep.ok());
    }
}

namespace {

struct Mutation {
    const char* field;
    const char* expect_prefix;  // check group that must fail
    ObstructionCertificate (*apply)(ObstructionCertificate, const InverseSystem&);
};

bool any_failed_with_prefix(const VerificationReport& rep, const std::string& prefix) {
    for (const auto& name : rep.failed_names())
        if (name.rfind(prefix, 0) == 0) return true;
    return false;
}

}  // namespace

TEST_CASE("single-field mutations are rejected with the correct named check") {
    const auto sys = default_bidisk();
    RatGen gen(502);

    const Mutation mutations[] = {
        {"e_rho := e_m (kills I2 upper)", "I2",
         [](ObstructionCertificate c, const InverseSystem& s) {
             c.e_rho = s.level_exponent(c.m);
             return c;
         }},
        {"e_rho := lower bound (kills I2 lower)", "I2",
         [](ObstructionCertificate c, const InverseSystem& s) {
             const Rat drop = c.e_eta + Rat(c.d) * c.e_lambda;
             const Rat e_m1 = s.level_exponent(c.m + 1);
             c.e_rho = e_m1 > drop ? e_m1 : drop;
             return c;
         }},
        {"e_delta := -e_delta (kills I3 sign)", "I3",
         [](ObstructionCertificate c, const InverseSystem&) {
             c.e_delta = -c.e_delta;
             return c;
         }},
        {"e_delta := 2 e_delta (kills I3 equation)", "I3",
         [](ObstructionCertificate c, const InverseSystem&) {
             c.e_delta = Rat(2) * c.e_delta;
             return c;
         }},
        {"e_eta_prime := e_m (kills I3 strictness)", "I3",
         [](ObstructionCertificate c, const InverseSystem& s) {
             c.e_eta_prime = s.level_exponent(c.m);
             return c;
         }},
        {"alpha := -sum_slope (kills I4 divergence at the sum slope)", "I4",
         [](ObstructionCertificate c, const InverseSystem& s) {
             c.env.alpha = -c.sum_slope(s);
             return c;
         }},
        {"alpha := -e_m (kills I4 divergence at rho)", "I4",
         [](ObstructionCertificate c, const InverseSystem& s) {
             c.env.alpha = -s.level_exponent(c.m);
             return c;
         }},
        {"d := 0 (kills I1 positivity)", "I1",
         [](ObstructionCertificate c, const InverseSystem&) {
             c.d = 0;
             return c;
         }},
        {"e_eta := e_m - d*e_lambda + 1 (kills I1 drop)", "I1",
         [](ObstructionCertificate c, const InverseSystem& s) {
             c.e_eta = s.level_exponent(c.m) - Rat(c.d) * c.e_lambda + Rat(1);
             return c;
         }},
        {"target := m+2 (kills T1)", "T1",
         [](ObstructionCertificate c, const InverseSystem&) {
             c.l = c.m + 2;
             return c;
         }},
    };

    long total = 0;
    for (int k = 0; k < 50; ++k) {
        const auto g = random_inputs(gen, sys);
        const auto cert = criterion_failure_witness(g.n, g.m, g.e_lambda, g.e_eta, sys);
        REQUIRE(verify_certificate(cert, sys).ok());

        for (const auto& mut : mutations) {
            const auto broken = mut.apply(cert, sys);
            const auto rep = verify_certificate(broken, sys);
            CAPTURE(mut.field, k);
            REQUIRE(!rep.ok());  // zero false accepts
            REQUIRE(any_failed_with_prefix(rep, mut.expect_prefix));
            ++total;
        }
    }
    CHECK(total == 50 * std::size(mutations));
}

TEST_CASE("tampered e_rho is caught by the named I2 check") {
    const auto sys = default_bidisk();
    auto cert = criterion_failure_witness(0, 1, make_rat(-1, 2), Rat(1, 2), sys);
    cert.e_rho = Rat(1, 2);  // = e_m, violates I2.rho_above_eta_m
    const auto rep = verify_certificate(cert, sys);
    REQUIRE(!rep.ok());
    bool saw = false;
    for (const auto& c : rep.checks)
        if (c.name == "I2.rho_above_eta_m") {
            saw = true;
            CHECK(!c.pass);
        }
    CHECK(saw);
}

TEST_CASE("verification reports instead of throwing on unresolvable levels") {
    SystemConfig cfg;
    cfg.eta = EtaFamily::table({Rat(1), Rat(1, 2)});
    const auto sys = build_system(SystemKind::BidiskOpenDagger, cfg);
    auto cert = criterion_failure_witness(0, 0, make_rat(-1, 2), Rat(1, 2), sys);
    REQUIRE(verify_certificate(cert, sys).ok());
    cert.m = 7;  // past the exponent table
    const auto rep = verify_certificate(cert, sys);
    REQUIRE(!rep.ok());
    CHECK(rep.failed_names() == std::vector<std::string>{"P0.levels_resolvable"});
}

TEST_CASE("grid verdict certifies the default grid") {
    const auto sys = default_bidisk();
    const auto grid = default_grid(sys);
    REQUIRE(grid.size() == 36);
    const auto verdict = lim1_verdict(sys, grid);
    CHECK(verdict.kind == Lim1Verdict::Kind::NonZeroCertified);
    CHECK(verdict.certificates.size() == 36);

    CHECK(lim1_verdict(sys, std::vector<GridPoint>{}).kind == Lim1Verdict::Kind::Inconclusive);
}

TEST_CASE("verdict stability across primes and eta families") {
    const std::vector<EtaFamily> families = {EtaFamily::harmonic(1, 1, 1), EtaFamily::harmonic(1, 2, 2),
                                             EtaFamily::harmonic(2, 1, 2)};
    for (const Int prime : {2, 3, 5}) {
        for (const auto& fam : families) {
            SystemConfig cfg;
            cfg.prime = prime;
            cfg.eta = fam;
            const auto sys = build_system(SystemKind::BidiskOpenDagger, cfg);
            const auto verdict = lim1_verdict(sys, default_grid(sys));
            CAPTURE(prime.str(), fam.str());
            REQUIRE(verdict.kind == Lim1Verdict::Kind::NonZeroCertified);
            REQUIRE(verdict.certificates.size() == 36);
        }
    }
}

TEST_CASE("finite truncations never see the obstruction") {
    const auto sys = default_bidisk();
    for (const auto& rule : standard_bidisk_finite_corpus(20)) {
        const auto res = delta_solve(rule, sys, 6);
        CAPTURE(rule.i0, rule.j0, rule.i_step);
        REQUIRE(res.lifted());
    }
}

TEST_CASE("open-disk corpus verdict is vanishing evidence") {
    const auto stein = build_system(SystemKind::OpenDiskStein, {});
    const auto verdict = lim1_verdict(stein, standard_open_disk_corpus(), 8);
    CHECK(verdict.kind == Lim1Verdict::Kind::VanishesEvidence);
    CHECK(verdict.solver.lifted == 100);

    CHECK(lim1_verdict(stein, std::vector<CocycleRule>{}, 8).kind == Lim1Verdict::Kind::Inconclusive);

    // a corpus with a non-liftable entry stays inconclusive, never "nonzero"
    auto tainted = standard_open_disk_corpus();
    tainted.push_back(CocycleRule{0, 0, 0, 0, Rat(0), Rat(0), std::nullopt});
    const auto v2 = lim1_verdict(stein, tainted, 8);
    CHECK(v2.kind == Lim1Verdict::Kind::Inconclusive);
    CHECK(!v2.diagnostics.empty());
}
