#pragma once

#include <map>
#include <optional>
#include <utility>

#include "limcert/envelope.hpp"
#include "limcert/valuation.hpp"

namespace limcert {

struct ExpPair {
    Exp i = 0, j = 0;
    friend auto operator<=>(const ExpPair&, const ExpPair&) = default;
};

// Affine lower bound a*i + b*j + c on the valuation of every coefficient
// outside the stored support.
struct TailBound {
    Rat a, b, c;

    Rat value_at(Exp i, Exp j) const { return a * Rat(i) + b * Rat(j) + c; }

    // Pointwise order on N^2 holds iff it holds coefficientwise.
    bool dominates(const TailBound& o) const { return a >= o.a && b >= o.b && c >= o.c; }

    friend bool operator==(const TailBound&, const TailBound&) = default;
};

// Finite-support two-variable series with exact rational coefficients.
// Zero coefficients are never stored. A tail bound, when present, constrains
// every coefficient outside the support.
class TruncatedSeries {
public:
    TruncatedSeries() = default;

    static TruncatedSeries monomial(Exp i, Exp j, Rat coeff) {
        TruncatedSeries f;
        f.set(i, j, std::move(coeff));
        return f;
    }

    void set(Exp i, Exp j, Rat coeff) {
        if (coeff == 0)
            support_.erase({i, j});
        else
            support_[{i, j}] = std::move(coeff);
    }

    void add_term(Exp i, Exp j, const Rat& coeff) {
        auto it = support_.find({i, j});
        if (it == support_.end()) {
            set(i, j, coeff);
            return;
        }
        it->second += coeff;
        if (it->second == 0) support_.erase(it);
    }

    const std::map<ExpPair, Rat>& support() const { return support_; }
    const std::optional<TailBound>& tail() const { return tail_; }
    void set_tail(std::optional<TailBound> t) { tail_ = std::move(t); }
    bool is_zero() const { return support_.empty(); }
    bool is_finite() const { return !tail_.has_value(); }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

    friend TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) {
        TruncatedSeries out = f;
        out.tail_ = combine_tails(f.tail_, g.tail_);
        for (const auto& [key, coeff] : g.support_) out.add_term(key.i, key.j, coeff);
        return out;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g) {
        return f + (Rat(-1) * g);
    }

    friend TruncatedSeries operator*(const Rat& c, const TruncatedSeries& f) {
        TruncatedSeries out;
        out.tail_ = f.tail_;
        if (c == 0) {
            out.tail_.reset();
            return out;
        }
        for (const auto& [key, coeff] : f.support_) out.support_[key] = c * coeff;
        return out;
    }

    // Exact convolution product; only finite series form a ring here.
    friend TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) {
        if (!f.is_finite() || !g.is_finite())
            throw TailUnsupportedError("series product requires tail-free inputs");
        TruncatedSeries out;
        for (const auto& [a, ca] : f.support_)
            for (const auto& [b, cb] : g.support_) out.add_term(a.i + b.i, a.j + b.j, ca * cb);
        return out;
    }

private:
    static std::optional<TailBound> combine_tails(const std::optional<TailBound>& s,
                                                  const std::optional<TailBound>& t) {
        // A finite series omits only zero coefficients, i.e. carries an
        // implicit +inf tail, so a single bound passes through unchanged.
        if (!s) return t;
        if (!t) return s;
        if (t->dominates(*s)) return s;
        if (s->dominates(*t)) return t;
        throw PreconditionViolatedError("tail bounds are not pointwise-min combinable");
    }

    std::map<ExpPair, Rat> support_;
    std::optional<TailBound> tail_;
};

// Sup norm max ||a_ij|| rx^i ry^j in log coordinates: the minimum over the
// support of the monomial log-norms; the norm of zero is +inf. All modes must
// be Closed. With a tail bound present, its infimum over N^2 must certify the
// tail stays at or above the truncated minimum (a conservative region: the
// exact tail region is N^2 minus the finite support).
inline LogValue gauss_norm(const TruncatedSeries& f, const PolyRadius& r, const Int& prime = 2) {
    if (!all_closed(r)) throw PreconditionViolatedError("gauss_norm requires an all-closed polyradius");
    if (r.size() != 1 && r.size() != 2)
        throw PreconditionViolatedError("gauss_norm supports one or two variables");

    LogValue best = LogValue::infinity();
    for (const auto& [key, coeff] : f.support()) {
        LogValue v(Rat(padic_valuation(coeff, prime)));
        LogValue term;
        if (r.size() == 2) {
            term = monomial_log_norm(v, key.i, key.j, r);
        } else {
            if (key.j != 0)
                throw PreconditionViolatedError("one-variable radius given for a bivariate series");
            const Exp e[1] = {key.i};
            term = monomial_log_norm(v, std::span<const Exp>(e, 1), r);
        }
        if (term < best) best = term;
    }

    if (f.tail()) {
        if (r.size() != 2) throw PreconditionViolatedError("tail bounds require two variables");
        const Rat di = f.tail()->a + r[0].radius.e;
        const Rat dj = f.tail()->b + r[1].radius.e;
        if (di < 0 || dj < 0)
            throw TailDominatesError("tail bound decreases along a coordinate; extend the truncation");
        const LogValue tail_inf(f.tail()->c);  // attained at (0, 0)
        if (tail_inf < best)
            throw TailDominatesError("tail bound cannot certify the tail stays above the truncated minimum");
    }
    return best;
}

// The diagonal family sum_i a_i x^i y^(d*i) with v(a_i) prescribed by an
// envelope; a_i realizes concretely as p^(env(i)).
struct DiagonalSeries {
    Exp d = 0;
    Envelope env;

    Rat coefficient_at(Exp i, const Int& prime) const {
        const Rat v = env.value_at(i);
        if (!is_integral(v))
            throw PreconditionViolatedError("envelope value must be integral to realize a coefficient");
        return pow_rat(prime, numerator(v));
    }

    TruncatedSeries truncate(Exp max_i, const Int& prime) const {
        TruncatedSeries out;
        for (Exp i = 0; i <= max_i; ++i) out.set(i, d * i, coefficient_at(i, prime));
        return out;
    }
};

}  // namespace limcert
