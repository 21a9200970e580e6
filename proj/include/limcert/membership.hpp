#pragma once

#include <optional>
#include <string>
#include <vector>

#include "limcert/series.hpp"

namespace limcert {

// A function space over the polyradius base: all-Closed is a Tate algebra,
// Dagger variables take a union over strictly larger radii, Open variables an
// intersection over strictly smaller ones.
struct SpaceSpec {
    PolyRadius base;

    SpaceSpec closed_hull() const {
        SpaceSpec h = *this;
        for (auto& v : h.base) v.mode = Mode::Closed;
        return h;
    }

    friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

inline Rat combined_slope(const PolyRadius& r, const std::vector<Rat>& coeffs) {
    if (r.size() != coeffs.size())
        throw PreconditionViolatedError("slope coefficient count does not match space arity");
    Rat s = 0;
    for (std::size_t k = 0; k < r.size(); ++k) s += coeffs[k] * r[k].radius.e;
    return s;
}

enum class MembershipVerdict { Member, NonMember, CannotCertify };

inline const char* membership_verdict_name(MembershipVerdict v) {
    switch (v) {
        case MembershipVerdict::Member: return "member";
        case MembershipVerdict::NonMember: return "non_member";
        case MembershipVerdict::CannotCertify: return "cannot_certify";
    }
    return "?";
}

// Member carries an explicit closed polyradius witness meeting the mode
// strictness rules; NonMember carries a slope, admissible for the target
// space, at which the coefficient envelope diverges to -inf. The test never
// claims NonMember on any weaker evidence.
struct MembershipCertificate {
    MembershipVerdict verdict = MembershipVerdict::CannotCertify;
    std::optional<PolyRadius> witness;
    std::optional<Rat> witness_slope;
    std::optional<LimitVerdict> verdict_at_slope;
    std::string note;

    static MembershipCertificate member(PolyRadius w, std::string note = {}) {
        MembershipCertificate c;
        c.verdict = MembershipVerdict::Member;
        c.witness = std::move(w);
        c.note = std::move(note);
        return c;
    }
    static MembershipCertificate non_member(Rat slope, std::string note = {}) {
        MembershipCertificate c;
        c.verdict = MembershipVerdict::NonMember;
        c.witness_slope = std::move(slope);
        c.verdict_at_slope = LimitVerdict::DivergesToMinusInf;
        c.note = std::move(note);
        return c;
    }
    static MembershipCertificate cannot_certify(std::string note = {}) {
        MembershipCertificate c;
        c.note = std::move(note);
        return c;
    }
};

namespace detail {

// Witness tie-breaking for dagger spaces, mirroring the eta'/delta split of
// the obstruction construction: aim the witness slope at -alpha when the
// sublinear term is unbounded (the boundary still diverges there), else at
// the midpoint of (-alpha, sigma0). The slope reduction g is shared equally
// among the positively-weighted dagger variables, each scaled by 1/coeff;
// zero-weight dagger variables and open variables move by a unit in their
// strict direction.
inline PolyRadius member_witness(const Envelope& env, const std::vector<Rat>& coeffs, const SpaceSpec& S,
                                 const Rat& sigma0) {
    std::size_t dagger_weighted = 0;
    for (std::size_t k = 0; k < S.base.size(); ++k)
        if (S.base[k].mode == Mode::Dagger && coeffs[k] > 0) ++dagger_weighted;

    Rat g = 0;
    if (dagger_weighted > 0) {
        const Rat slack = env.alpha + sigma0;
        g = sublinear_unbounded(env.sublinear) ? slack : slack / 2;
    }

    PolyRadius w = S.base;
    for (std::size_t k = 0; k < w.size(); ++k) {
        switch (S.base[k].mode) {
            case Mode::Closed: break;
            case Mode::Dagger:
                if (coeffs[k] > 0)
                    w[k].radius.e -= g / (Rat(static_cast<long long>(dagger_weighted)) * coeffs[k]);
                else
                    w[k].radius.e -= 1;
                break;
            case Mode::Open: w[k].radius.e += 1; break;
        }
        w[k].mode = Mode::Closed;
    }
    return w;
}

}  // namespace detail

// Core decision: does a series whose coefficient valuations follow `env`,
// supported along exponent directions with per-variable slope coefficients
// `coeffs` (all >= 0), belong to S? Everything reduces to the base slope
// sigma0 = sum coeff_v * e_v because the divergence condition is monotone in
// the slope:
//   - some dagger variable carries positive weight: member iff alpha+sigma0 > 0;
//   - else some open variable carries positive weight: member iff alpha+sigma0 >= 0;
//   - else: member iff envelope_limit at sigma0 diverges to +inf.
inline MembershipCertificate decide_slope_membership(const Envelope& env, const std::vector<Rat>& coeffs,
                                                     const SpaceSpec& S) {
    for (const auto& c : coeffs)
        if (c < 0) throw PreconditionViolatedError("slope coefficients must be nonnegative");

    const Rat sigma0 = combined_slope(S.base, coeffs);
    const Rat slack = env.alpha + sigma0;

    bool dagger_weighted = false, open_weighted = false;
    for (std::size_t k = 0; k < S.base.size(); ++k) {
        if (coeffs[k] == 0) continue;
        if (S.base[k].mode == Mode::Dagger) dagger_weighted = true;
        if (S.base[k].mode == Mode::Open) open_weighted = true;
    }

    if (dagger_weighted) {
        if (slack > 0)
            return MembershipCertificate::member(detail::member_witness(env, coeffs, S, sigma0), "dagger-witness");
        if (slack < 0) return MembershipCertificate::non_member(sigma0, "diverges at the closed hull slope");
        // Every strict dagger witness slope sits below sigma0 = -alpha and
        // fails, but no single admissible slope certifies that, so the
        // one-sided test stays silent.
        return MembershipCertificate::cannot_certify("boundary slope: strict dagger witnesses all fail");
    }

    if (open_weighted) {
        if (slack >= 0)
            return MembershipCertificate::member(detail::member_witness(env, coeffs, S, sigma0), "open-limit-slope");
        return MembershipCertificate::non_member(sigma0 - slack / 2, "diverges inside the open family");
    }

    switch (envelope_limit(env, sigma0)) {
        case LimitVerdict::DivergesToPlusInf:
            return MembershipCertificate::member(detail::member_witness(env, coeffs, S, sigma0), "closed");
        case LimitVerdict::DivergesToMinusInf:
            return MembershipCertificate::non_member(sigma0, "diverges at the nominal slope");
        case LimitVerdict::Bounded:
            return MembershipCertificate::cannot_certify("bounded at the nominal slope");
    }
    return MembershipCertificate::cannot_certify("unreachable");
}

// Membership of a diagonal series (slope coefficients 1 and d).
inline MembershipCertificate membership(const DiagonalSeries& f, const SpaceSpec& S) {
    if (S.base.size() != 2) throw PreconditionViolatedError("diagonal membership expects a two-variable space");
    return decide_slope_membership(f.env, {Rat(1), Rat(f.d)}, S);
}

// One-sided non-membership in A + B. Dagger modes are first relaxed to their
// closed hulls; with e'' the larger of the two hull slopes, a -inf divergence
// at e'' rules out any split f = g + h by the ultrametric bound
// ||a_i|| <= max(||g_i||, ||h_i||). Never claims more than that.
inline MembershipCertificate sum_non_membership(const DiagonalSeries& f, const SpaceSpec& A, const SpaceSpec& B) {
    for (const SpaceSpec* s : {&A, &B})
        for (const auto& v : s->base)
            if (v.mode == Mode::Open)
                throw PreconditionViolatedError("sum_non_membership expects Closed or Dagger summands");

    const std::vector<Rat> coeffs = {Rat(1), Rat(f.d)};
    const Rat slope_a = combined_slope(A.closed_hull().base, coeffs);
    const Rat slope_b = combined_slope(B.closed_hull().base, coeffs);
    const Rat e_sum = slope_a > slope_b ? slope_a : slope_b;

    if (envelope_limit(f.env, e_sum) == LimitVerdict::DivergesToMinusInf)
        return MembershipCertificate::non_member(e_sum, "diverges at the max of the hull slopes");
    return MembershipCertificate::cannot_certify("no divergence at the max of the hull slopes");
}

// Independent validator for Member certificates: the witness must satisfy the
// strict mode inequalities of S and the envelope must diverge to +inf at the
// witness slope.
inline bool member_witness_valid(const Envelope& env, const std::vector<Rat>& coeffs, const SpaceSpec& S,
                                 const PolyRadius& witness) {
    if (witness.size() != S.base.size()) return false;
    for (std::size_t k = 0; k < witness.size(); ++k) {
        if (witness[k].mode != Mode::Closed) return false;
        switch (S.base[k].mode) {
            case Mode::Closed:
                if (witness[k].radius.e != S.base[k].radius.e) return false;
                break;
            case Mode::Dagger:
                if (!(witness[k].radius.e < S.base[k].radius.e)) return false;
                break;
            case Mode::Open:
                if (!(witness[k].radius.e > S.base[k].radius.e)) return false;
                break;
        }
    }
    return envelope_limit(env, combined_slope(witness, coeffs)) == LimitVerdict::DivergesToPlusInf;
}

}  // namespace limcert
