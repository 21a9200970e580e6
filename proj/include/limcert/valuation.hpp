#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "limcert/rational.hpp"

namespace limcert {

using Exp = long long;

// A scalar's absolute value in log coordinates: |a| = p^(-v) with v rational,
// and v = +inf encoding |0| = 0. Multiplying scalars adds exponents, so every
// norm comparison is an exact rational comparison. The order on absolute
// values is the reverse of the order on exponents.
class LogValue {
public:
    LogValue() = default;  // |a| = 1
    explicit LogValue(Rat v) : v_(std::move(v)) {}

    static LogValue infinity() {
        LogValue x;
        x.infinite_ = true;
        return x;
    }

    bool is_infinite() const { return infinite_; }

    const Rat& exponent() const {
        if (infinite_) throw PreconditionViolatedError("exponent() on the +inf log-value");
        return v_;
    }

    // Log of the product of the underlying scalars; +inf absorbs.
    friend LogValue operator+(const LogValue& a, const LogValue& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return LogValue(a.v_ + b.v_);
    }

    friend bool operator==(const LogValue& a, const LogValue& b) {
        if (a.infinite_ != b.infinite_) return false;
        return a.infinite_ || a.v_ == b.v_;
    }

    // Exponent order with +inf greatest; |a| <= |b| iff b <= a here.
    friend bool operator<(const LogValue& a, const LogValue& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator>(const LogValue& a, const LogValue& b) { return b < a; }
    friend bool operator<=(const LogValue& a, const LogValue& b) { return !(b < a); }
    friend bool operator>=(const LogValue& a, const LogValue& b) { return !(a < b); }

    std::string str() const { return infinite_ ? "inf" : format_rat(v_); }

private:
    Rat v_{};
    bool infinite_ = false;
};

inline LogValue parse_logvalue(std::string_view s) {
    if (s == "inf") return LogValue::infinity();
    return LogValue(parse_rat(s));
}

// Exponent of a radius: r = p^(-e). e > 0 is a radius below 1, e = 0 the unit
// radius, e < 0 a radius above 1; negating e inverts the radius.
struct LogRadius {
    Rat e;

    LogRadius() = default;
    explicit LogRadius(Rat v) : e(std::move(v)) {}

    friend LogRadius operator+(const LogRadius& a, const LogRadius& b) { return LogRadius(a.e + b.e); }
    friend LogRadius operator-(const LogRadius& a, const LogRadius& b) { return LogRadius(a.e - b.e); }
    LogRadius operator-() const { return LogRadius(-e); }
    friend LogRadius operator*(Exp k, const LogRadius& r) { return LogRadius(Rat(k) * r.e); }
    friend bool operator==(const LogRadius& a, const LogRadius& b) { return a.e == b.e; }
    friend auto operator<=>(const LogRadius& a, const LogRadius& b) {
        return a.e < b.e   ? std::strong_ordering::less
               : a.e > b.e ? std::strong_ordering::greater
                           : std::strong_ordering::equal;
    }

    std::string str() const { return format_rat(e); }
};

// Convergence behaviour per variable. Closed: the nominal radius itself.
// Dagger: some strictly larger radius (strictly smaller exponent). Open:
// every strictly smaller radius (every strictly larger exponent).
enum class Mode { Closed, Dagger, Open };

inline const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Closed: return "closed";
        case Mode::Dagger: return "dagger";
        case Mode::Open: return "open";
    }
    return "?";
}

struct RadiusSpec {
    LogRadius radius;
    Mode mode = Mode::Closed;

    friend bool operator==(const RadiusSpec&, const RadiusSpec&) = default;
};

// Per-variable log-radii with convergence modes.
using PolyRadius = std::vector<RadiusSpec>;

inline PolyRadius closed_polyradius(std::initializer_list<Rat> exponents) {
    PolyRadius r;
    for (const auto& e : exponents) r.push_back({LogRadius(e), Mode::Closed});
    return r;
}

inline bool all_closed(const PolyRadius& r) {
    for (const auto& v : r)
        if (v.mode != Mode::Closed) return false;
    return true;
}

// Log of ||a|| * prod r_k^(exp_k): the monomial's sup-norm contribution.
// Affine in the valuation and in each exponent; modes are ignored.
inline LogValue monomial_log_norm(const LogValue& v, std::span<const Exp> exponents, const PolyRadius& r) {
    if (exponents.size() != r.size())
        throw PreconditionViolatedError("monomial exponent count does not match polyradius arity");
    if (v.is_infinite()) return LogValue::infinity();
    Rat acc = v.exponent();
    for (std::size_t k = 0; k < r.size(); ++k) acc += Rat(exponents[k]) * r[k].radius.e;
    return LogValue(acc);
}

inline LogValue monomial_log_norm(const LogValue& v, Exp i, Exp j, const PolyRadius& r) {
    const Exp exps[2] = {i, j};
    return monomial_log_norm(v, std::span<const Exp>(exps, 2), r);
}

}  // namespace limcert
