#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "confine/errors.hpp"
#include "confine/geometry.hpp"
#include "confine/instance.hpp"
#include "confine/rng.hpp"
#include "confine/vec2.hpp"

namespace confine {

enum class GenKind { Antipodal, Closure, Centered, Sector, WeightedPairs };

inline const char* gen_kind_name(GenKind k) {
    switch (k) {
    case GenKind::Antipodal: return "antipodal";
    case GenKind::Closure: return "closure";
    case GenKind::Centered: return "centered";
    case GenKind::Sector: return "sector";
    case GenKind::WeightedPairs: return "weighted_pairs";
    }
    return "unknown";
}

inline std::optional<GenKind> parse_gen_kind(std::string_view name) {
    if (name == "antipodal") return GenKind::Antipodal;
    if (name == "closure") return GenKind::Closure;
    if (name == "centered") return GenKind::Centered;
    if (name == "sector") return GenKind::Sector;
    if (name == "weighted_pairs") return GenKind::WeightedPairs;
    return std::nullopt;
}

/// Recipe for one family of random instances.
struct GenSpec {
    GenKind kind = GenKind::Centered;
    std::size_t n_or_pairs = 0;
    double alpha = 0.0; // Sector only
    std::uint64_t seed = 0;
};

/// `pairs` disk points, each followed by its exact negation. The vector
/// sum is exactly zero: x + (-x) == 0 componentwise.
inline Instance gen_antipodal(std::size_t pairs, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Vec2> vs;
    vs.reserve(2 * pairs);
    for (std::size_t k = 0; k < pairs; ++k) {
        const Vec2 v = rng.unit_disk();
        vs.push_back(v);
        vs.push_back(-v);
    }
    return Instance{std::move(vs)};
}

/// n-1 disk points plus their negated sum. The closing vector can land
/// outside the disk, in which case the whole draw is repeated; gives up
/// after max_retry + 1 attempts.
inline Instance gen_closure(std::size_t n, std::uint64_t seed, std::size_t max_retry = 100) {
    if (n < 2) throw ArgumentError("closure generator needs n >= 2");
    Rng rng(seed);
    for (std::size_t attempt = 0; attempt <= max_retry; ++attempt) {
        std::vector<Vec2> vs;
        vs.reserve(n);
        Vec2 sum{};
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const Vec2 v = rng.unit_disk();
            vs.push_back(v);
            sum += v;
        }
        const Vec2 close = -sum;
        if (close.norm() <= 1.0) {
            vs.push_back(close);
            return Instance{std::move(vs)};
        }
    }
    throw GenerationError("closure generator: closing vector stayed outside the disk; "
                          "raise max_retry, raise n, or use another kind");
}

/// n disk points recentered to mean zero, then uniformly shrunk back into
/// the disk when centering pushed some modulus above 1. An all-equal draw
/// degenerates to the all-zero instance.
inline Instance gen_centered(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw ArgumentError("centered generator needs n >= 2");
    Rng rng(seed);
    std::vector<Vec2> vs;
    vs.reserve(n);
    Vec2 sum{};
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 v = rng.unit_disk();
        vs.push_back(v);
        sum += v;
    }
    const Vec2 mean = sum / static_cast<double>(n);
    double max_norm = 0.0;
    for (Vec2& v : vs) {
        v -= mean;
        max_norm = std::max(max_norm, v.norm());
    }
    if (max_norm > 1.0)
        for (Vec2& v : vs) v = v / max_norm;
    return Instance{std::move(vs)};
}

/// `pairs` antipodal direction pairs with positive weights normalized to
/// total 1 across all 2*pairs entries. The two entries of pair k carry
/// weight u_k / (2 sum u) at angles theta_k and theta_k + pi, so the
/// vector sum cancels pairwise up to the rounding of cos/sin.
inline WeightedInstance gen_weighted_pairs(std::size_t pairs, std::uint64_t seed) {
    if (pairs < 1) throw ArgumentError("weighted generator needs at least one pair");
    Rng rng(seed);
    std::vector<double> raw;
    std::vector<double> thetas;
    raw.reserve(pairs);
    thetas.reserve(pairs);
    double total = 0.0;
    for (std::size_t k = 0; k < pairs; ++k) {
        const double u = 1.0 - rng.uniform01(); // (0, 1]
        raw.push_back(u);
        thetas.push_back(rng.uniform(-std::numbers::pi, std::numbers::pi));
        total += u;
    }
    WeightedInstance inst;
    inst.weights.reserve(2 * pairs);
    inst.angles.reserve(2 * pairs);
    for (std::size_t k = 0; k < pairs; ++k) {
        const double w = raw[k] / (2.0 * total);
        inst.weights.push_back(w);
        inst.angles.push_back(thetas[k]);
        inst.weights.push_back(w);
        inst.angles.push_back(thetas[k] + std::numbers::pi);
    }
    return inst;
}

/// Directions uniform in [-alpha/2, alpha/2], moduli uniform in [0, 1],
/// projected to zero sum by iterating: recenter, clamp strays back to the
/// nearest sector boundary ray, rescale into the disk. Each round roughly
/// halves the residual sum, so 100 rounds cover the 1e-9 n acceptance
/// threshold with a wide margin.
///
/// alpha below pi is rejected outright: a zero-sum family confined to an
/// open half-plane has only zero vectors, so no meaningful instance
/// exists there.
inline Instance gen_sector(std::size_t n, double alpha, std::uint64_t seed) {
    const double pi = std::numbers::pi;
    if (!(alpha >= pi))
        throw ArgumentError("sector width below pi admits no nonzero zero-sum family");
    if (!(alpha <= 2.0 * pi)) throw ArgumentError("sector width above 2 pi");
    if (n < 2) throw ArgumentError("sector generator needs n >= 2");

    Rng rng(seed);
    const double half = alpha / 2.0;
    std::vector<Vec2> vs;
    vs.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        vs.push_back(polar(rng.uniform01(), rng.uniform(-half, half)));

    const double sum_goal = 1e-9 * static_cast<double>(n);
    for (int round = 0; round < 100; ++round) {
        Vec2 sum{};
        for (const Vec2& v : vs) sum += v;
        const Vec2 mean = sum / static_cast<double>(n);
        for (Vec2& v : vs) v -= mean;

        for (Vec2& v : vs) {
            if (v.is_zero()) continue;
            const double a = v.arg();
            if (a >= -half && a <= half) continue;
            // shortest circular distance decides which boundary ray;
            // metric projection onto that ray keeps the iteration
            // non-expansive, so the sum actually contracts
            double d_hi = std::fabs(a - half);
            if (d_hi > pi) d_hi = 2.0 * pi - d_hi;
            double d_lo = std::fabs(a + half);
            if (d_lo > pi) d_lo = 2.0 * pi - d_lo;
            const Vec2 ray = polar(1.0, d_hi <= d_lo ? half : -half);
            const double along = dot(v, ray);
            v = along > 0.0 ? along * ray : Vec2{};
        }

        double max_norm = 0.0;
        for (const Vec2& v : vs) max_norm = std::max(max_norm, v.norm());
        if (max_norm > 1.0)
            for (Vec2& v : vs) v = v / max_norm;

        Vec2 check{};
        for (const Vec2& v : vs) check += v;
        if (check.norm() <= sum_goal && angular_span(vs) <= alpha + 1e-9)
            return Instance{std::move(vs)};
    }
    throw GenerationError("sector generator: projection did not reach zero sum in 100 rounds");
}

/// Dispatch product: always carries a plain instance; the weighted kind
/// additionally keeps its weight/angle form for the weighted construction.
struct GeneratedInstance {
    Instance instance;
    std::optional<WeightedInstance> weighted;
};

inline GeneratedInstance generate(const GenSpec& spec) {
    switch (spec.kind) {
    case GenKind::Antipodal: return {gen_antipodal(spec.n_or_pairs, spec.seed), std::nullopt};
    case GenKind::Closure: return {gen_closure(spec.n_or_pairs, spec.seed), std::nullopt};
    case GenKind::Centered: return {gen_centered(spec.n_or_pairs, spec.seed), std::nullopt};
    case GenKind::Sector: return {gen_sector(spec.n_or_pairs, spec.alpha, spec.seed), std::nullopt};
    case GenKind::WeightedPairs: {
        WeightedInstance w = gen_weighted_pairs(spec.n_or_pairs, spec.seed);
        return {w.to_instance(), std::move(w)};
    }
    }
    throw ArgumentError("unknown generator kind");
}

} // namespace confine
