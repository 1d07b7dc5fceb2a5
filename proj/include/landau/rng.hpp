#pragma once

// Deterministic randomness. Two front ends over the same splitmix64-style
// mixing: CtrStream is a pure keyed counter lane (value depends only on
// (key, ctr, draw index) — the basis of reproducible pairwise noise), Rng is
// a plain sequential generator for samplers and bootstraps. Normals come from
// a 256-layer ziggurat; std::normal_distribution is implementation-defined
// and would tie outputs to a particular libstdc++.

#include <cstdint>
#include <cmath>

#include "landau/vecmat.hpp"

namespace landau {

inline constexpr std::uint64_t GOLDEN64 = 0x9E3779B97F4A7C15ull;

// splitmix64 output stage: bijective, strong avalanche.
inline std::uint64_t mix64(std::uint64_t x) {
    x += GOLDEN64;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

namespace detail {

struct ZigTables {
    double X[257];     // slab right edges, X[0] virtual base width, X[256] = 0
    double Y[257];     // f(X[i]) slab heights, Y[256] = 1
    double ratio[256]; // X[i+1]/X[i]: immediate-accept threshold on |u|
    double r, inv_r;   // tail start
};

const ZigTables& zig_tables();

inline double unit_from(std::uint64_t z) { return double(z >> 11) * 0x1p-53; }       // [0,1)
inline double unit_pos_from(std::uint64_t z) { return (double(z >> 11) + 0.5) * 0x1p-53; } // (0,1)

// Ziggurat core over any u64 source. Exact standard normal law; consumes a
// variable number of draws but is a pure function of the lane contents.
template <class F>
double zig_normal(F&& next) {
    const ZigTables& T = zig_tables();
    for (;;) {
        const std::uint64_t z = next();
        const unsigned i = unsigned(z & 255u);
        // bits 10..63 -> signed uniform in [-1,1)
        const double u = double(std::int64_t(z >> 10) - (std::int64_t(1) << 53)) * 0x1p-53;
        if (std::abs(u) < T.ratio[i]) return u * T.X[i];
        if (i == 0) {
            // base slab, |x| >= r: sample the Gaussian tail directly
            double x, y;
            do {
                x = -std::log(unit_pos_from(next())) * T.inv_r;
                y = -std::log(unit_pos_from(next()));
            } while (y + y < x * x);
            return u >= 0.0 ? T.r + x : -(T.r + x);
        }
        const double cand = u * T.X[i];
        const double w = unit_from(next());
        if (T.Y[i] + w * (T.Y[i + 1] - T.Y[i]) < std::exp(-0.5 * cand * cand)) return cand;
    }
}

} // namespace detail

// Pure counter lane: draw n of stream (key, ctr) is mix64(base + n·golden),
// i.e. splitmix64 seeded at a key/counter hash. Stateless reproducibility:
// reconstructing the stream replays identical values.
struct CtrStream {
    std::uint64_t base;
    std::uint64_t n = 0;

    CtrStream(std::uint64_t key, std::uint64_t ctr) : base(mix64(key ^ mix64(ctr))) {}

    std::uint64_t next_u64() { return mix64(base + (n++) * GOLDEN64); }
    double next_unit() { return detail::unit_from(next_u64()); }
    double next_normal() {
        return detail::zig_normal([this] { return next_u64(); });
    }
    Vec3 next_normal3() {
        const double a = next_normal(), b = next_normal(), c = next_normal();
        return {a, b, c};
    }
};

// Sequential splitmix64 for everything that doesn't need counter addressing.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        state += GOLDEN64;
        std::uint64_t x = state;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }
    double uniform() { return detail::unit_from(next_u64()); }          // [0,1)
    double uniform_pos() { return detail::unit_pos_from(next_u64()); }  // (0,1)
    double normal() {
        return detail::zig_normal([this] { return next_u64(); });
    }
    Vec3 normal3() {
        const double a = normal(), b = normal(), c = normal();
        return {a, b, c};
    }
    // unbiased integer in [0, bound)
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t reject = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= reject) return r % bound;
        }
    }
};

} // namespace landau
