#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "limcert/rational.hpp"

namespace limcert {

// Sublinear correction terms. The family is deliberately closed and small:
// each member is nonnegative, nondecreasing and o(i), so every limit decision
// below reduces to the sign of a rational slope plus unboundedness of s.
enum class Sublinear { Zero, CeilSqrt, CeilLog2 };

inline const char* sublinear_name(Sublinear s) {
    switch (s) {
        case Sublinear::Zero: return "zero";
        case Sublinear::CeilSqrt: return "ceil_sqrt";
        case Sublinear::CeilLog2: return "ceil_log2";
    }
    return "?";
}

namespace detail {

inline long long ceil_sqrt(long long i) {
    if (i <= 0) return 0;
    auto r = static_cast<long long>(std::sqrt(static_cast<double>(i)));
    auto sq = [](long long x) { return static_cast<__int128>(x) * x; };
    while (r > 0 && sq(r - 1) >= i) --r;
    while (sq(r) < i) ++r;  // lands on ceil(sqrt(i))
    return r;
}

// ceil(log2(i+1)); equals bit_width(i) for i >= 1, and 0 at i = 0.
inline long long ceil_log2(long long i) {
    if (i <= 0) return 0;
    return std::bit_width(static_cast<unsigned long long>(i));
}

}  // namespace detail

inline long long sublinear_value(Sublinear s, long long i) {
    switch (s) {
        case Sublinear::Zero: return 0;
        case Sublinear::CeilSqrt: return detail::ceil_sqrt(i);
        case Sublinear::CeilLog2: return detail::ceil_log2(i);
    }
    return 0;
}

inline bool sublinear_unbounded(Sublinear s) { return s != Sublinear::Zero; }

// Valuation growth rule i -> ceil(alpha*i) + s(i) + c. Values stay in Z + c,
// so with integral c the rule realizes over any field with discrete value
// group while radii range over p^Q.
struct Envelope {
    Rat alpha;
    Sublinear sublinear = Sublinear::Zero;
    Rat offset;

    Rat value_at(long long i) const {
        if (i < 0) throw PreconditionViolatedError("envelope index must be nonnegative");
        return Rat(ceil_rat(alpha * Rat(i))) + Rat(sublinear_value(sublinear, i)) + offset;
    }

    friend bool operator==(const Envelope&, const Envelope&) = default;
};

enum class LimitVerdict { DivergesToPlusInf, Bounded, DivergesToMinusInf };

inline const char* limit_verdict_name(LimitVerdict v) {
    switch (v) {
        case LimitVerdict::DivergesToPlusInf: return "diverges_to_plus_inf";
        case LimitVerdict::Bounded: return "bounded";
        case LimitVerdict::DivergesToMinusInf: return "diverges_to_minus_inf";
    }
    return "?";
}

// Exact behaviour of i -> env(i) + e*i as i -> inf. The ceiling contributes a
// bounded nonnegative amount, so the class depends only on the sign of
// alpha + e and, on the boundary, on whether s is unbounded.
inline LimitVerdict envelope_limit(const Envelope& env, const Rat& slope) {
    const Rat net = env.alpha + slope;
    if (net > 0) return LimitVerdict::DivergesToPlusInf;
    if (net == 0)
        return sublinear_unbounded(env.sublinear) ? LimitVerdict::DivergesToPlusInf : LimitVerdict::Bounded;
    return LimitVerdict::DivergesToMinusInf;
}

}  // namespace limcert
