#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "confine/errors.hpp"
#include "confine/permutation.hpp"
#include "confine/vec2.hpp"

namespace confine {

/// Prefix sums S_p = v_{pi(1)} + ... + v_{pi(p)} of a rearranged family,
/// together with the largest prefix modulus and where it occurs.
struct PartialSumTrace {
    std::vector<Vec2> prefix;  // prefix[p-1] = S_p, p = 1..n
    double max_modulus = 0.0;
    std::size_t argmax = 0;    // 1-based index of the first maximal prefix; 0 when empty

    std::size_t size() const { return prefix.size(); }
};

/// Accumulates prefix sums of vectors[perm[0]], vectors[perm[1]], ...
/// left to right, in that exact order. Throws ArgumentError when the
/// permutation does not match the family.
inline PartialSumTrace partial_sums(const std::vector<Vec2>& vectors, const Permutation& perm) {
    if (perm.size() != vectors.size())
        throw ArgumentError("permutation length does not match vector count");
    if (!perm.is_valid())
        throw ArgumentError("order is not a permutation");

    PartialSumTrace trace;
    trace.prefix.reserve(vectors.size());
    Vec2 running{};
    for (std::size_t p = 0; p < perm.size(); ++p) {
        running += vectors[perm.order[p]];
        trace.prefix.push_back(running);
        const double m = running.norm();
        if (m > trace.max_modulus) {
            trace.max_modulus = m;
            trace.argmax = p + 1;
        }
    }
    return trace;
}

/// Convenience: the confinement radius of a rearrangement.
inline double max_prefix_modulus(const std::vector<Vec2>& vectors, const Permutation& perm) {
    return partial_sums(vectors, perm).max_modulus;
}

/// Rotates every vector by the same angle. Throws ArgumentError on a
/// non-finite angle; rotation must stay an exact isometry up to rounding.
inline std::vector<Vec2> rotate(const std::vector<Vec2>& vectors, double angle) {
    if (!std::isfinite(angle)) throw ArgumentError("rotation angle must be finite");
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    std::vector<Vec2> out;
    out.reserve(vectors.size());
    for (const Vec2& v : vectors)
        out.push_back(Vec2{c * v.x - s * v.y, s * v.x + c * v.y});
    return out;
}

/// Width of the smallest closed circular sector containing every nonzero
/// direction: 2*pi minus the largest gap between consecutive arguments.
/// Zero vectors carry no direction and are skipped; fewer than two distinct
/// directions give span 0.
inline double angular_span(const std::vector<Vec2>& vectors) {
    std::vector<double> args;
    args.reserve(vectors.size());
    for (const Vec2& v : vectors)
        if (!v.is_zero()) args.push_back(v.arg());
    if (args.empty()) return 0.0;

    std::sort(args.begin(), args.end());
    args.erase(std::unique(args.begin(), args.end()), args.end());
    if (args.size() == 1) return 0.0;

    const double two_pi = 2.0 * std::numbers::pi;
    double largest_gap = args.front() + two_pi - args.back();
    for (std::size_t i = 1; i < args.size(); ++i)
        largest_gap = std::max(largest_gap, args[i] - args[i - 1]);
    return two_pi - largest_gap;
}

} // namespace confine
