#pragma once

#include "padic/lcfun.hpp"

#include <cstdint>

namespace padic {

// Deterministic cross-platform generator (splitmix64); all randomness in the
// toolkit flows through this so that reports are reproducible from the seed.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound); bound > 0 (modulo bias is irrelevant here)
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    // derives an independent stream, used to make families order-insensitive
    SplitMix64 fork(std::uint64_t salt) {
        return SplitMix64(next() ^ (salt * 0xD1B54A32D192ED03ull));
    }
};

struct GenConstraints {
    bool nonneg = false;
    bool compact_support = false;  // forces c_inf = 0
};

// Reduced rational with |numerator| <= num_max, denominator <= den_max.
inline Rational gen_rational(SplitMix64& rng, std::uint64_t num_max, std::uint64_t den_max,
                             bool nonneg) {
    std::int64_t num = static_cast<std::int64_t>(rng.below(2 * num_max + 1)) -
                       static_cast<std::int64_t>(num_max);
    std::uint64_t den = 1 + rng.below(den_max);
    Rational v(num, den);
    return nonneg ? rat_abs(v) : v;
}

inline LCFunction gen_lcfunction(FieldParams fp, int gamma_struct, int gamma_res,
                                 std::uint64_t num_max, std::uint64_t den_max,
                                 GenConstraints cons, SplitMix64& rng) {
    if (gamma_res > gamma_struct)
        throw ParameterError("gen: resolution above structure level");
    CellGrid grid(fp, gamma_struct, gamma_res);
    std::vector<Rational> cells(grid.cell_count());
    for (auto& v : cells) v = gen_rational(rng, num_max, den_max, cons.nonneg);
    Rational tail = cons.compact_support ? Rational(0)
                                         : gen_rational(rng, num_max, den_max, cons.nonneg);
    return LCFunction(std::move(grid), std::move(cells), tail);
}

// A ball at a random level in [level_min, level_max] inside B_top(0).
inline BallAddress gen_ball(FieldParams fp, int level_min, int level_max, int top,
                            SplitMix64& rng) {
    if (level_min > level_max || level_max > top)
        throw ParameterError("gen_ball: bad level range");
    int level = level_min + static_cast<int>(rng.below(
                                static_cast<std::uint64_t>(level_max - level_min + 1)));
    BallEnumerator e(fp, top, level);
    return e.address(rng.below(e.count()));
}

}  // namespace padic
