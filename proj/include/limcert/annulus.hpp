#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "limcert/certificate.hpp"

namespace limcert {

// Finite-support Laurent series in one variable with exact rational
// coefficients. The optional tail envelopes give the exact coefficient
// valuations of the two infinite tails: tail_neg(t) = v(a_{-t}) for t >= 1
// and tail_pos(t) = v(a_t) for t >= 0; membership decisions use the
// envelopes, the stored support is a realized finite window.
struct LaurentTruncatedSeries {
    std::map<Exp, Rat> support;
    std::optional<Envelope> tail_neg;
    std::optional<Envelope> tail_pos;

    void set(Exp i, Rat coeff) {
        if (coeff == 0)
            support.erase(i);
        else
            support[i] = std::move(coeff);
    }

    friend bool operator==(const LaurentTruncatedSeries&, const LaurentTruncatedSeries&) = default;
};

// Half-open annulus r < |x| <= R in log coordinates: e_r > e_R. The inner
// boundary is open, the outer one dagger (overconvergent).
struct AnnulusSpec {
    Rat e_r, e_R;

    void validate() const {
        if (!(e_r > e_R)) throw PreconditionViolatedError("annulus needs e_r > e_R (r < R)");
    }

    friend bool operator==(const AnnulusSpec&, const AnnulusSpec&) = default;
};

// F/L decomposition: F collects the strictly negative powers (the Frechet
// direction at the inner boundary), L the nonnegative ones (the LB direction
// at the outer boundary). merge(split(f)) == f exactly.
inline std::pair<LaurentTruncatedSeries, LaurentTruncatedSeries> fl_split(const LaurentTruncatedSeries& f) {
    LaurentTruncatedSeries fpart, lpart;
    for (const auto& [i, c] : f.support) (i < 0 ? fpart : lpart).support.emplace(i, c);
    fpart.tail_neg = f.tail_neg;
    lpart.tail_pos = f.tail_pos;
    return {std::move(fpart), std::move(lpart)};
}

inline LaurentTruncatedSeries fl_merge(const LaurentTruncatedSeries& fpart, const LaurentTruncatedSeries& lpart) {
    for (const auto& [i, c] : fpart.support)
        if (i >= 0) throw PreconditionViolatedError("F part may only hold negative powers");
    if (fpart.tail_pos) throw PreconditionViolatedError("F part may not carry a positive tail");
    for (const auto& [i, c] : lpart.support)
        if (i < 0) throw PreconditionViolatedError("L part may only hold nonnegative powers");
    if (lpart.tail_neg) throw PreconditionViolatedError("L part may not carry a negative tail");

    LaurentTruncatedSeries out;
    out.support = fpart.support;
    out.support.insert(lpart.support.begin(), lpart.support.end());
    out.tail_neg = fpart.tail_neg;
    out.tail_pos = lpart.tail_pos;
    return out;
}

// Membership in the annulus algebra, decided factorwise per the direct-sum
// semantics:
//   L (nonnegative powers): some radius strictly above R works, i.e. the
//     dagger rule on the one-variable space at exponent e_R;
//   F (negative powers): convergence on all of |x| > r. In the substituted
//     coordinate w = 1/x this is the open disk of radius 1/r, i.e. the open
//     rule on the one-variable space at w-exponent -e_r.
inline MembershipCertificate annulus_membership(const LaurentTruncatedSeries& f, const AnnulusSpec& A) {
    A.validate();
    if (!f.tail_neg || !f.tail_pos)
        throw MissingEnvelopeError("annulus membership needs envelopes for both tails");

    const SpaceSpec l_space{{{LogRadius(A.e_R), Mode::Dagger}}};
    const SpaceSpec f_space{{{LogRadius(-A.e_r), Mode::Open}}};
    const std::vector<Rat> one = {Rat(1)};

    const auto l_cert = decide_slope_membership(*f.tail_pos, one, l_space);
    const auto f_cert = decide_slope_membership(*f.tail_neg, one, f_space);

    if (l_cert.verdict == MembershipVerdict::Member && f_cert.verdict == MembershipVerdict::Member) {
        // two-entry witness: [F direction in w-coordinates, L direction in x]
        PolyRadius w = {(*f_cert.witness)[0], (*l_cert.witness)[0]};
        return MembershipCertificate::member(std::move(w), "F-and-L");
    }
    if (f_cert.verdict == MembershipVerdict::NonMember) {
        auto c = f_cert;
        c.note = "F factor (w-coordinates): " + c.note;
        return c;
    }
    if (l_cert.verdict == MembershipVerdict::NonMember) {
        auto c = l_cert;
        c.note = "L factor: " + c.note;
        return c;
    }
    return MembershipCertificate::cannot_certify("neither factor certifiable: F=" + f_cert.note +
                                                 "; L=" + l_cert.note);
}

// Exhausting subdomains vary only the inner radius: level k has inner
// exponent e_r - gap_k with gaps strictly decreasing to 0, i.e. inner radii
// shrinking to r from above while the outer dagger datum stays fixed.
struct AnnulusExhaustion {
    EtaFamily gaps = EtaFamily::harmonic(1, 1, 2);
};

inline AnnulusExhaustion default_annulus_exhaustion(const AnnulusSpec& A) {
    A.validate();
    // gap_k = (e_r - e_R)/(k+2) keeps every inner radius strictly below the
    // outer one.
    return AnnulusExhaustion{EtaFamily::harmonic(A.e_r - A.e_R, 1, 2)};
}

// Full spec of the level-k exhausting subdomain: a half-open annulus whose
// inner exponent is e_r - gap_k and whose outer datum is that of A.
struct AnnulusLevelSpec {
    RadiusSpec inner;
    RadiusSpec outer;

    friend bool operator==(const AnnulusLevelSpec&, const AnnulusLevelSpec&) = default;
};

inline AnnulusLevelSpec annulus_level_spec(const AnnulusSpec& A, const AnnulusExhaustion& ex, long k) {
    return AnnulusLevelSpec{{LogRadius(A.e_r - ex.gaps.exponent_at(k)), Mode::Open},
                            {LogRadius(A.e_R), Mode::Dagger}};
}

// The Frechet-factor inverse system of the exhaustion, in w = 1/x
// coordinates: level k is the closed Tate algebra at w-exponent
// -e_r + gap_k, strictly decreasing to -e_r.
inline InverseSystem annulus_f_system(const AnnulusSpec& A, const AnnulusExhaustion& ex, SystemConfig config) {
    A.validate();
    config.validate();
    try {
        if (ex.gaps.closed_form()) {
            if (!(ex.gaps.exponent_at(0) < A.e_r - A.e_R))
                throw InvalidExhaustionError("first inner radius crosses the outer boundary");
        } else {
            for (std::size_t k = 0; k < ex.gaps.table_values()->size(); ++k)
                if (!(ex.gaps.exponent_at(static_cast<long>(k)) < A.e_r - A.e_R))
                    throw InvalidExhaustionError("inner radius crosses the outer boundary");
        }
    } catch (const InvalidConfigError& e) {
        throw InvalidExhaustionError(e.what());
    }
    return InverseSystem::make(SystemKind::AnnulusFrechetFactor, std::move(config),
                               AnnulusFactorData{-A.e_r, ex.gaps});
}

// Validates a gap rule supplied as an explicit table, translating family
// errors into exhaustion errors.
inline AnnulusExhaustion exhaustion_from_gap_table(std::vector<Rat> gaps) {
    try {
        return AnnulusExhaustion{EtaFamily::table(std::move(gaps))};
    } catch (const InvalidConfigError& e) {
        throw InvalidExhaustionError(e.what());
    }
}

// A corpus entry for the annulus check: a solver rule for the F factor
// (stated in w-coordinates) plus a realized finite Laurent window carrying
// its own envelopes, used for the naturality and garbage-in checks.
struct AnnulusCocycle {
    CocycleRule rule;
    LaurentTruncatedSeries sample;
};

// Transition maps of the exhausting system are identity-on-coefficient
// inclusions between levels.
inline LaurentTruncatedSeries annulus_restrict(const LaurentTruncatedSeries& f, long from_level, long to_level) {
    if (to_level > from_level)
        throw PreconditionViolatedError("restriction goes from higher levels to lower ones");
    return f;
}

struct AnnulusCheckResult {
    enum class Kind { VanishesEvidence, Inconclusive } kind = Kind::Inconclusive;
    bool constant_dagger_direction = false;
    bool split_natural = false;
    SolverCorpusReport solver;
    std::vector<std::string> diagnostics;
};

inline const char* annulus_kind_name(AnnulusCheckResult::Kind k) {
    return k == AnnulusCheckResult::Kind::VanishesEvidence ? "vanishes_evidence" : "inconclusive";
}

namespace detail {

// Realized coefficients must match the valuations their own envelopes claim.
inline std::optional<std::string> envelope_violation(const LaurentTruncatedSeries& f, const Int& prime) {
    for (const auto& [i, c] : f.support) {
        if (c == 0) return "stored zero coefficient at index " + std::to_string(i);
        const Envelope* env = nullptr;
        long long idx = 0;
        if (i < 0 && f.tail_neg) {
            env = &*f.tail_neg;
            idx = -i;
        } else if (i >= 0 && f.tail_pos) {
            env = &*f.tail_pos;
            idx = i;
        }
        if (env && Rat(padic_valuation(c, prime)) != env->value_at(idx))
            return "coefficient at index " + std::to_string(i) + " violates its envelope";
    }
    return std::nullopt;
}

}  // namespace detail

// Desk-scale verification that the derived limit of the exhausting system
// degenerates:
//   (a) structural: the dagger (outer) datum of every level is syntactically
//       identical, so the L factor is a constant system;
//   (b) solver: every corpus rule lifts through the F-factor system, finite
//       rules staying within the degree bound;
//   (c) naturality: fl_split commutes with the (identity) transition
//       inclusions on the realized samples.
// Full success is evidence of degeneration, not a proof.
inline AnnulusCheckResult annulus_rlim_check(const AnnulusSpec& A, const AnnulusExhaustion& ex, Exp degree_bound,
                                             const std::vector<AnnulusCocycle>& corpus,
                                             SystemConfig config = {}, long horizon = 8) {
    AnnulusCheckResult out;
    const InverseSystem sys = annulus_f_system(A, ex, config);

    // (a) the outer datum never moves across levels (syntactic identity, not
    // numeric): the L factor is a constant system, so its derived limit is
    // trivially degenerate.
    out.constant_dagger_direction = true;
    const RadiusSpec outer0 = annulus_level_spec(A, ex, 0).outer;
    for (long k = 1; k <= horizon; ++k) {
        if (!(annulus_level_spec(A, ex, k).outer == outer0)) {
            out.constant_dagger_direction = false;
            out.diagnostics.push_back("outer datum moved at level " + std::to_string(k));
        }
    }

    out.split_natural = true;
    out.solver.total = static_cast<long>(corpus.size());
    for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
        const auto& entry = corpus[idx];

        if (auto bad = detail::envelope_violation(entry.sample, config.prime)) {
            out.diagnostics.push_back("corpus entry " + std::to_string(idx) + ": " + *bad);
            continue;
        }

        if (entry.rule.support_end) {
            const Exp max_exp = entry.rule.exp_i(*entry.rule.support_end - 1);
            const Exp max_deg = max_exp > entry.rule.i0 ? max_exp : entry.rule.i0;
            if (max_deg > degree_bound) {
                out.diagnostics.push_back("corpus entry " + std::to_string(idx) + " exceeds the degree bound");
                continue;
            }
        }

        auto res = delta_solve(entry.rule, sys, horizon);
        if (res.lifted()) {
            ++out.solver.lifted;
        } else {
            out.diagnostics.push_back("corpus entry " + std::to_string(idx) + " failed to lift at level " +
                                      std::to_string(res.obstruction->level));
            out.solver.failures.emplace_back(idx, std::move(res));
        }

        // (c) split/restrict in both orders
        for (long from = 1; from <= 2; ++from) {
            const auto direct = fl_split(annulus_restrict(entry.sample, from, 0));
            const auto parts = fl_split(entry.sample);
            const auto routed = std::pair{annulus_restrict(parts.first, from, 0),
                                          annulus_restrict(parts.second, from, 0)};
            if (!(direct == routed)) {
                out.split_natural = false;
                out.diagnostics.push_back("split not natural on corpus entry " + std::to_string(idx));
            }
        }
    }

    const bool all_lifted = out.solver.lifted == out.solver.total;
    out.kind = (out.constant_dagger_direction && out.split_natural && all_lifted)
                   ? AnnulusCheckResult::Kind::VanishesEvidence
                   : AnnulusCheckResult::Kind::Inconclusive;
    return out;
}

// Fixed liftable corpus for the annulus check: finite w-rules inside the
// degree bound plus unbounded rules whose valuation slope compensates the
// negative w-exponents (val_step >= i_step * e_r).
inline std::vector<AnnulusCocycle> standard_annulus_corpus(const AnnulusSpec& A, Exp degree_bound,
                                                           const Int& prime = 2) {
    A.validate();
    std::vector<AnnulusCocycle> corpus;

    // Realized Laurent windows (integral envelope values so the window is
    // exactly representable): a_{-t} = p^(neg_slope*t) and a_t = p^(pos_off).
    auto sample_with = [&](long long neg_slope, long long pos_off) {
        LaurentTruncatedSeries s;
        s.tail_neg = Envelope{Rat(neg_slope), Sublinear::Zero, Rat(0)};
        s.tail_pos = Envelope{Rat(0), Sublinear::Zero, Rat(pos_off)};
        for (Exp t = 1; t <= 4; ++t) s.set(-t, pow_rat(prime, Int(neg_slope) * t));
        for (Exp t = 0; t <= 3; ++t) s.set(t, pow_rat(prime, Int(pos_off)));
        return s;
    };

    long long variant = 0;
    for (Exp deg : {Exp(1), Exp(5), degree_bound / 2, degree_bound}) {
        if (deg < 1) continue;
        CocycleRule rule{deg, 0, 0, 0, Rat(0), Rat(1), 3};
        corpus.push_back({rule, sample_with(1 + variant % 3, variant % 2)});
        ++variant;
    }
    for (Exp i_step : {Exp(1), Exp(2)}) {
        // val_step = i_step*e_r + margin keeps every level slack positive
        for (const Rat& margin : {Rat(0), Rat(1, 3)}) {
            CocycleRule rule{0, i_step, 0, 0, Rat(0), Rat(i_step) * A.e_r + margin, std::nullopt};
            corpus.push_back({rule, sample_with(2 + variant % 2, variant % 3)});
            ++variant;
        }
    }
    CocycleRule scalars{0, 0, 0, 0, Rat(0), Rat(1), std::nullopt};
    corpus.push_back({scalars, sample_with(1, 0)});
    return corpus;
}

}  // namespace limcert
