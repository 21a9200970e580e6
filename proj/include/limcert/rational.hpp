#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "limcert/errors.hpp"

namespace limcert {

namespace mp = boost::multiprecision;

using Int = mp::cpp_int;

// Exact arbitrary-precision rational. Expression templates are disabled so
// arithmetic results are plain values (storable in containers, comparable
// without surprises).
using Rat = mp::number<mp::backends::rational_adaptor<mp::backends::cpp_int_backend<>>, mp::et_off>;

inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw ParseError("rational with zero denominator");
    return Rat(std::move(num)) / Rat(std::move(den));
}

// Canonical form "a/b": lowest terms, b > 0, denominator always written so
// serialized values are byte-stable.
inline std::string format_rat(const Rat& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

// Human-facing form: integers drop the "/1".
inline std::string format_rat_compact(const Rat& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return format_rat(q);
}

namespace detail {

inline bool is_integer_token(std::string_view s) {
    if (s.empty()) return false;
    std::size_t k = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (k == s.size()) return false;
    for (; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') return false;
    return true;
}

inline Int parse_int_token(std::string_view s) {
    if (!is_integer_token(s)) throw ParseError("invalid integer: '" + std::string(s) + "'");
    if (s[0] == '+') s.remove_prefix(1);  // cpp_int rejects an explicit plus
    return Int(std::string(s));
}

}  // namespace detail

inline Int parse_int(std::string_view s) { return detail::parse_int_token(s); }

// Accepts "a" or "a/b" with optional sign on either part.
inline Rat parse_rat(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rat(detail::parse_int_token(s));
    return make_rat(detail::parse_int_token(s.substr(0, slash)),
                    detail::parse_int_token(s.substr(slash + 1)));
}

inline Int floor_rat(const Rat& q) {
    Int n = numerator(q), d = denominator(q);
    Int quot = n / d;
    if (n % d != 0 && n < 0) --quot;
    return quot;
}

inline Int ceil_rat(const Rat& q) {
    Int n = numerator(q), d = denominator(q);
    Int quot = n / d;
    if (n % d != 0 && n > 0) ++quot;
    return quot;
}

inline bool is_integral(const Rat& q) { return denominator(q) == 1; }

inline Int pow_int(const Int& base, unsigned long exp) {
    Int acc = 1, b = base;
    while (exp) {
        if (exp & 1) acc *= b;
        b *= b;
        exp >>= 1;
    }
    return acc;
}

// p^e for integral e of either sign.
inline Rat pow_rat(const Int& p, const Int& e) {
    if (e >= 0) return Rat(pow_int(p, e.convert_to<unsigned long>()));
    return Rat(1) / Rat(pow_int(p, (-e).convert_to<unsigned long>()));
}

// Exact p-adic valuation of a nonzero rational: v_p(a/b) = v_p(a) - v_p(b).
inline Int padic_valuation(const Rat& q, const Int& p) {
    if (q == 0) throw PreconditionViolatedError("p-adic valuation of zero is +inf; handle separately");
    if (p < 2) throw PreconditionViolatedError("valuation base must be >= 2");
    auto count = [&p](Int n) {
        Int v = 0;
        n = abs(n);
        while (n % p == 0) {
            n /= p;
            ++v;
        }
        return v;
    };
    return count(numerator(q)) - count(denominator(q));
}

inline bool is_small_prime(const Int& p) {
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    for (Int f = 3; f * f <= p; f += 2)
        if (p % f == 0) return false;
    return true;
}

}  // namespace limcert
