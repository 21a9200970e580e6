#pragma once

#include <random>

#include "limcert/rational.hpp"

namespace limcert::testing {

// Deterministic rational generator: numerators in [-bound, bound],
// denominators in [1, max_den]. Small denominators keep net slopes away from
// the scan oracle's resolution floor (see test_series.cpp).
class RatGen {
public:
    explicit RatGen(unsigned seed, long bound = 20, long max_den = 48)
        : rng_(seed), num_(-bound, bound), den_(1, max_den) {}

    Rat operator()() { return make_rat(Int(num_(rng_)), Int(den_(rng_))); }

    Rat nonzero() {
        for (;;) {
            Rat q = (*this)();
            if (q != 0) return q;
        }
    }

    Rat positive() {
        for (;;) {
            Rat q = (*this)();
            if (q > 0) return q;
        }
    }

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
    std::uniform_int_distribution<long> num_;
    std::uniform_int_distribution<long> den_;
};

}  // namespace limcert::testing
