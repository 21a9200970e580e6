#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "limcert/membership.hpp"

namespace limcert {

// Strictly decreasing positive exponent family e_n -> 0, i.e. radii
// eta_n = p^(-e_n) increasing to 1 from below inside p^Q. Either the closed
// form scale/(a*n + b) or an explicit validated prefix table. Table-backed
// families answer no query past their last entry and carry no limit
// information, which surfaces as HorizonExceeded in asymptotic decisions.
class EtaFamily {
public:
    static EtaFamily harmonic(Rat scale, Rat a, Rat b) {
        if (scale <= 0 || a <= 0 || b <= 0)
            throw InvalidConfigError("harmonic family needs scale, a, b > 0");
        EtaFamily f;
        f.scale_ = std::move(scale);
        f.a_ = std::move(a);
        f.b_ = std::move(b);
        return f;
    }

    static EtaFamily table(std::vector<Rat> prefix) {
        if (prefix.empty()) throw InvalidConfigError("empty exponent table");
        for (std::size_t k = 0; k < prefix.size(); ++k) {
            if (prefix[k] <= 0) throw InvalidConfigError("exponent table entries must be positive");
            if (k > 0 && !(prefix[k] < prefix[k - 1]))
                throw InvalidConfigError("exponent table must be strictly decreasing");
        }
        EtaFamily f;
        f.table_ = std::move(prefix);
        return f;
    }

    bool closed_form() const { return !table_.has_value(); }

    Rat exponent_at(long n) const {
        if (n < 0) throw PreconditionViolatedError("negative level index");
        if (table_) {
            if (static_cast<std::size_t>(n) >= table_->size())
                throw HorizonExceededError("level " + std::to_string(n) + " is past the exponent table");
            return (*table_)[static_cast<std::size_t>(n)];
        }
        return scale_ / (a_ * Rat(n) + b_);
    }

    // Least n with e_n < t, or nullopt when no level ever drops below t.
    // Closed-form only; table-backed families cannot answer beyond the table.
    std::optional<long> first_level_below(const Rat& t) const {
        if (t <= 0) return std::nullopt;  // entries are positive
        if (!closed_form()) {
            for (std::size_t k = 0; k < table_->size(); ++k)
                if ((*table_)[k] < t) return static_cast<long>(k);
            throw HorizonExceededError("exponent table exhausted while searching for a level below " +
                                       format_rat(t));
        }
        // e_n < t  <=>  n > (scale/t - b)/a
        const Rat bound = (scale_ / t - b_) / a_;
        Int n = floor_rat(bound) + 1;
        if (n < 0) n = 0;
        return n.convert_to<long>();
    }

    std::string str() const {
        if (table_) {
            std::string s = "table[";
            for (std::size_t k = 0; k < table_->size(); ++k) {
                if (k) s += ",";
                s += format_rat_compact((*table_)[k]);
            }
            return s + "]";
        }
        const std::string coeff = a_ == 1 ? "n" : format_rat_compact(a_) + "*n";
        return format_rat_compact(scale_) + "/(" + coeff + "+" + format_rat_compact(b_) + ")";
    }

    const Rat& scale() const { return scale_; }
    const Rat& linear_a() const { return a_; }
    const Rat& linear_b() const { return b_; }
    const std::optional<std::vector<Rat>>& table_values() const { return table_; }

    friend bool operator==(const EtaFamily&, const EtaFamily&) = default;

private:
    EtaFamily() = default;
    Rat scale_{1}, a_{1}, b_{1};
    std::optional<std::vector<Rat>> table_;
};

// Accepts "s/(a*n+b)" with integer s, a, b (the '*' optional, "1/(n+1)" ok).
inline EtaFamily parse_eta_family(std::string_view s) {
    auto fail = [&] { throw ParseError("cannot parse eta family '" + std::string(s) + "'"); };
    auto slash = s.find('/');
    if (slash == std::string_view::npos || slash + 1 >= s.size() || s[slash + 1] != '(' || s.back() != ')')
        fail();
    const Rat scale = parse_rat(s.substr(0, slash));
    std::string_view inner = s.substr(slash + 2, s.size() - slash - 3);
    auto n_pos = inner.find('n');
    auto plus = inner.find('+', n_pos == std::string_view::npos ? 0 : n_pos);
    if (n_pos == std::string_view::npos || plus == std::string_view::npos) fail();
    std::string_view a_part = inner.substr(0, n_pos);
    if (!a_part.empty() && a_part.back() == '*') a_part.remove_suffix(1);
    const Rat a = a_part.empty() ? Rat(1) : parse_rat(a_part);
    const Rat b = parse_rat(inner.substr(plus + 1));
    return EtaFamily::harmonic(scale, a, b);
}

struct SystemConfig {
    Int prime = 2;
    EtaFamily eta = EtaFamily::harmonic(1, 1, 1);

    void validate() const {
        if (!is_small_prime(prime)) throw InvalidConfigError("prime must be a prime >= 2");
    }

    friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

enum class SystemKind { BidiskOpenDagger, OpenDiskStein, AnnulusFrechetFactor };

inline const char* system_kind_name(SystemKind k) {
    switch (k) {
        case SystemKind::BidiskOpenDagger: return "bidisk_open_dagger";
        case SystemKind::OpenDiskStein: return "open_disk_stein";
        case SystemKind::AnnulusFrechetFactor: return "annulus_frechet_factor";
    }
    return "?";
}

// Extra data for the annulus Frechet-factor system. Levels live in the
// substituted coordinate w = 1/x (the open disk of radius 1/r): level k is
// the closed Tate algebra at w-exponent -e_r + gap_k, strictly decreasing to
// the limit -e_r as the inner radii of the exhausting subdomains shrink to r.
struct AnnulusFactorData {
    Rat w_exponent_limit;  // -e_r
    EtaFamily gaps;        // strictly decreasing positive gap_k -> 0

    friend bool operator==(const AnnulusFactorData&, const AnnulusFactorData&) = default;
};

// N-indexed nested family of function-space levels with inclusion
// transitions: level m is contained in level n for m >= n, and restriction is
// the identity on coefficients.
class InverseSystem {
public:
    SystemKind kind() const { return kind_; }
    const SystemConfig& config() const { return config_; }
    const std::optional<AnnulusFactorData>& annulus() const { return annulus_; }

    std::size_t arity() const { return kind_ == SystemKind::BidiskOpenDagger ? 2 : 1; }

    // Exponent of the moving (x or w) variable at level n.
    Rat level_exponent(long n) const {
        if (kind_ == SystemKind::AnnulusFrechetFactor)
            return annulus_->w_exponent_limit + annulus_->gaps.exponent_at(n);
        return config_.eta.exponent_at(n);
    }

    SpaceSpec level(long n) const {
        switch (kind_) {
            case SystemKind::BidiskOpenDagger:
                return SpaceSpec{{{LogRadius(level_exponent(n)), Mode::Dagger}, {LogRadius(0), Mode::Dagger}}};
            case SystemKind::OpenDiskStein:
                return SpaceSpec{{{LogRadius(level_exponent(n)), Mode::Closed}}};
            case SystemKind::AnnulusFrechetFactor:
                return SpaceSpec{{{LogRadius(level_exponent(n)), Mode::Closed}}};
        }
        throw PreconditionViolatedError("unknown system kind");
    }

    // Limit of the level exponents; requires a closed-form family.
    Rat exponent_limit() const {
        if (kind_ == SystemKind::AnnulusFrechetFactor) {
            if (!annulus_->gaps.closed_form())
                throw HorizonExceededError("table-backed exhaustion has no exponent limit");
            return annulus_->w_exponent_limit;
        }
        if (!config_.eta.closed_form())
            throw HorizonExceededError("table-backed eta family has no exponent limit");
        return Rat(0);
    }

    // Least level whose exponent drops below t (the level exponents strictly
    // decrease toward the limit in every system kind).
    std::optional<long> first_level_with_exponent_below(const Rat& t) const {
        if (kind_ == SystemKind::AnnulusFrechetFactor)
            return annulus_->gaps.first_level_below(t - annulus_->w_exponent_limit);
        return config_.eta.first_level_below(t);
    }

    static InverseSystem make(SystemKind kind, SystemConfig config, std::optional<AnnulusFactorData> annulus) {
        InverseSystem sys;
        sys.kind_ = kind;
        sys.config_ = std::move(config);
        sys.annulus_ = std::move(annulus);
        return sys;
    }

private:
    SystemKind kind_ = SystemKind::OpenDiskStein;
    SystemConfig config_;
    std::optional<AnnulusFactorData> annulus_;
};

// Builds the nested system and validates the configuration. The annulus
// Frechet factor additionally needs an annulus spec and an exhaustion; see
// annulus_f_system().
inline InverseSystem build_system(SystemKind kind, SystemConfig config) {
    config.validate();
    if (kind == SystemKind::AnnulusFrechetFactor)
        throw InvalidConfigError("annulus factor systems are built from an annulus spec; use annulus_f_system");
    // Nesting is guaranteed: closed forms by the parameter checks, tables by
    // the entrywise validation at construction.
    return InverseSystem::make(kind, std::move(config), std::nullopt);
}

// Two-term complex differential: v_n = w_n - w_{n+1} (restriction maps are
// identity-on-coefficient inclusions), with the final-entry convention
// v_last = w_last, i.e. the input is padded with zero beyond its end.
inline std::vector<TruncatedSeries> delta_apply(std::span<const TruncatedSeries> w, const InverseSystem& sys) {
    if (w.size() < 2) throw PreconditionViolatedError("delta_apply needs a sequence of length >= 2");
    for (const auto& f : w) {
        if (!f.is_finite()) throw PreconditionViolatedError("delta_apply expects finite series");
        if (sys.arity() == 1)
            for (const auto& [key, coeff] : f.support())
                if (key.j != 0)
                    throw PreconditionViolatedError("bivariate series given to a one-variable system");
    }
    std::vector<TruncatedSeries> v;
    v.reserve(w.size());
    for (std::size_t n = 0; n + 1 < w.size(); ++n) v.push_back(w[n] - w[n + 1]);
    v.push_back(w.back());
    return v;
}

inline std::vector<TruncatedSeries> delta_apply(const std::vector<TruncatedSeries>& w, const InverseSystem& sys) {
    return delta_apply(std::span<const TruncatedSeries>(w.data(), w.size()), sys);
}

}  // namespace limcert
