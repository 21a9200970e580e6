#pragma once

#include <optional>
#include <string>
#include <vector>

#include "limcert/system.hpp"

namespace limcert {

// Closed-form monomial cocycle: for active n the term v_n is a scalar of
// valuation val0 + val_step*n times x^(i0 + i_step*n) [ * y^(j0 + j_step*n)
// on two-variable systems ]. Affine exponent and valuation rules keep every
// telescoping tail envelope-analyzable. With support_end set, v_n = 0 from
// that index on.
struct CocycleRule {
    Exp i0 = 0, i_step = 0;
    Exp j0 = 0, j_step = 0;
    Rat val0, val_step;
    std::optional<long> support_end;

    bool active_at(long n) const { return !support_end || n < *support_end; }
    Exp exp_i(long n) const { return i0 + i_step * n; }
    Exp exp_j(long n) const { return j0 + j_step * n; }
    Rat valuation(long n) const { return val0 + val_step * Rat(n); }

    void validate(std::size_t arity) const {
        if (arity == 1 && (j0 != 0 || j_step != 0))
            throw PreconditionViolatedError("y-exponents given for a one-variable system");
        if (support_end) {
            if (*support_end < 0) throw PreconditionViolatedError("support_end must be >= 0");
            if (*support_end > 0)  // support_end == 0 is the zero cocycle
                for (long n : {0L, *support_end - 1})
                    if (exp_i(n) < 0 || exp_j(n) < 0)
                        throw PreconditionViolatedError("negative exponent inside the active range");
        } else {
            if (i_step < 0 || j_step < 0 || i0 < 0 || j0 < 0)
                throw PreconditionViolatedError("unbounded rules need nonnegative exponents and steps");
        }
    }

    friend bool operator==(const CocycleRule&, const CocycleRule&) = default;
};

struct LevelLiftCert {
    long level = 0;
    MembershipCertificate cert;
};

// Symbolic certificate that the telescoping tails stay members beyond the
// explicitly checked levels: the per-level slack val_step + i_step*e(n)
// [+ j_step*0] decreases toward limit_slack, and the recorded rule names the
// inequality that closes the argument.
struct TailCert {
    long from_level = 0;
    std::string rule;
    Rat limit_slack;
};

struct ObstructionReport {
    long level = 0;
    Rat slope;
    LimitVerdict verdict_at_slope = LimitVerdict::Bounded;
};

struct SolveResult {
    enum class Status { Lift, Obstruction } status = Status::Lift;
    std::vector<LevelLiftCert> levels;
    std::optional<TailCert> tail;
    std::optional<ObstructionReport> obstruction;

    bool lifted() const { return status == Status::Lift; }
};

namespace detail {

// Valuation envelope of the telescoping tail w_n = sum_{t>=n} v_t, indexed by
// the term index t. Constant exponent offsets only shift the envelope offset
// and never the verdict.
inline Envelope cocycle_envelope(const CocycleRule& c) { return Envelope{c.val_step, Sublinear::Zero, c.val0}; }

inline std::vector<Rat> cocycle_coeffs(const CocycleRule& c, std::size_t arity) {
    if (arity == 1) return {Rat(c.i_step)};
    return {Rat(c.i_step), Rat(c.j_step)};
}

}  // namespace detail

// Attempts the telescoping solution w_n = sum_{t>=n} v_t of Delta(w) = v.
// Levels 0..horizon receive explicit membership certificates; unbounded rules
// additionally get a symbolic certificate covering all later levels, or an
// obstruction naming the first level and slope where membership fails.
// Throws HorizonExceeded when a table-backed family runs out before the
// decision is reached. Success certifies a lift of this particular cocycle;
// failure of the telescoping attempt is not an obstruction theorem.
inline SolveResult delta_solve(const CocycleRule& cocycle, const InverseSystem& sys, long horizon) {
    if (horizon < 0) throw PreconditionViolatedError("horizon must be nonnegative");
    cocycle.validate(sys.arity());

    const Envelope env = detail::cocycle_envelope(cocycle);
    const std::vector<Rat> coeffs = detail::cocycle_coeffs(cocycle, sys.arity());

    SolveResult out;

    for (long n = 0; n <= horizon; ++n) {
        LevelLiftCert lc;
        lc.level = n;
        if (cocycle.support_end && *cocycle.support_end <= n) {
            lc.cert = MembershipCertificate::member(sys.level(n).closed_hull().base, "zero tail");
        } else if (cocycle.support_end) {
            // Finitely many terms remain: w_n is a polynomial, a member of
            // every level.
            lc.cert = MembershipCertificate::member(sys.level(n).closed_hull().base, "finite tail");
        } else {
            lc.cert = decide_slope_membership(env, coeffs, sys.level(n));
            if (lc.cert.verdict != MembershipVerdict::Member) {
                out.status = SolveResult::Status::Obstruction;
                const Rat slope = combined_slope(sys.level(n).base, coeffs);
                out.obstruction = ObstructionReport{n, slope, envelope_limit(env, slope)};
                out.levels.push_back(std::move(lc));
                return out;
            }
        }
        out.levels.push_back(std::move(lc));
    }

    if (cocycle.support_end) return out;  // polynomial lift, nothing beyond

    // All explicit levels passed. Membership at level n holds iff
    // slack(n) = val_step + i_step*e(n) [+ j_step*const] > 0, and slack
    // decreases strictly toward its limit exactly when i_step > 0.
    const Rat limit_exponent = sys.exponent_limit();
    Rat limit_slack = cocycle.val_step + Rat(cocycle.i_step) * limit_exponent;
    if (sys.arity() == 2) limit_slack += Rat(cocycle.j_step) * Rat(0);  // y-exponent is constant 0
    const bool strict_approach = cocycle.i_step > 0;

    if ((strict_approach && limit_slack >= 0) || (!strict_approach && limit_slack > 0)) {
        out.tail = TailCert{horizon + 1,
                            strict_approach ? "slope-limit-nonnegative" : "constant-slope-positive",
                            limit_slack};
        return out;
    }

    // Locate the first failing level: slack(n) <= 0 <=> e(n) <= t0.
    long fail_level = horizon + 1;
    if (cocycle.i_step > 0) {
        const Rat t0 = -(cocycle.val_step) / Rat(cocycle.i_step);
        auto below = sys.first_level_with_exponent_below(t0);
        long candidate = below ? *below : fail_level;
        // an exact hit e(n) == t0 also fails (bounded, not converging to 0)
        if (below && *below > 0 && sys.level_exponent(*below - 1) == t0) candidate = *below - 1;
        fail_level = candidate;
    }
    if (fail_level <= horizon)
        throw PreconditionViolatedError("internal: tail failure at an explicitly certified level");

    const Rat slope = combined_slope(sys.level(fail_level).base, coeffs);
    out.status = SolveResult::Status::Obstruction;
    out.obstruction = ObstructionReport{fail_level, slope, envelope_limit(env, slope)};
    return out;
}

// Fixed liftable corpus for the classical open-disk control case: exactly
// 100 rules, the first of which is v_n = x^n.
inline std::vector<CocycleRule> standard_open_disk_corpus() {
    std::vector<CocycleRule> corpus;
    corpus.push_back({0, 1, 0, 0, Rat(0), Rat(0), std::nullopt});  // v_n = x^n

    // Power families: growing exponents, nonnegative valuation slopes.
    for (Exp i_step : {1, 2, 3})
        for (const Rat& vs : {Rat(0), Rat(1), Rat(1, 2)})
            if (!(i_step == 1 && vs == 0))  // x^n already present
                corpus.push_back({0, i_step, 0, 0, Rat(0), vs, std::nullopt});

    // Constant exponents: the scalar tail sums converge because the
    // valuation slope is positive.
    for (Exp i0 : {0, 1, 2, 3, 4})
        for (const Rat& vs : {Rat(1), Rat(1, 2), Rat(2)})
            corpus.push_back({i0, 0, 0, 0, Rat(0), vs, std::nullopt});

    // Finite-support rules: polynomials lift against every level.
    for (long end : {1L, 3L, 10L, 25L, 50L})
        for (Exp i0 : {0, 2, 5})
            for (const Rat& vs : {Rat(-1), Rat(0), Rat(1)})
                corpus.push_back({i0, 1, 0, 0, Rat(0), vs, end});

    // Mixed shifted/growing rules to round out the corpus.
    for (Exp i0 : {1, 2, 3, 4, 5, 6, 7})
        for (const Rat& vs : {Rat(0), Rat(3, 2), Rat(5)})
            corpus.push_back({i0, 1, 0, 0, Rat(-2), vs, std::nullopt});
    for (Exp i0 = 0; i0 < 10; ++i0)
        corpus.push_back({i0, 2, 0, 0, Rat(1, 3), Rat(3), std::nullopt});

    return corpus;  // 1 + 8 + 15 + 45 + 21 + 10 = 100
}

// Finite-support bidisk cocycles up to the given total degree: the
// obstruction certified elsewhere is a growth-rate phenomenon, so every one
// of these must lift.
inline std::vector<CocycleRule> standard_bidisk_finite_corpus(Exp max_degree) {
    std::vector<CocycleRule> corpus;
    for (Exp deg = 0; deg <= max_degree; ++deg) {
        // total degree over the active range stays <= deg, attained at least once
        corpus.push_back({deg, 0, 0, 0, Rat(0), Rat(0), 1});
        corpus.push_back({0, 0, deg, 0, Rat(1), Rat(-1, 3), 3});
        if (deg >= 1) {
            const Exp jc = deg / 2;
            corpus.push_back({0, 1, jc, 0, Rat(-deg), Rat(1), static_cast<long>(deg - jc) + 1});
        }
    }
    return corpus;
}

}  // namespace limcert
