#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "confine/errors.hpp"
#include "confine/instance.hpp"
#include "confine/vec2.hpp"

namespace confine {

/// A subset of instance indices together with its vector sum.
struct SubsetResult {
    std::vector<std::size_t> members; // ascending indices
    Vec2 subset_sum{};
    double magnitude = 0.0;
};

namespace detail {

/// Sum in ascending index order, so identical subsets always produce
/// identical floats regardless of which algorithm found them.
inline SubsetResult make_subset(const std::vector<Vec2>& vectors,
                                std::vector<std::size_t> members) {
    SubsetResult r;
    r.members = std::move(members);
    for (std::size_t i : r.members) r.subset_sum += vectors[i];
    r.magnitude = r.subset_sum.norm();
    return r;
}

/// Candidate ordering: larger |sum|^2 wins; exact ties go to the
/// lexicographically smallest member list.
inline bool subset_improves(const SubsetResult& candidate, const SubsetResult& best) {
    const double cand_sq = candidate.subset_sum.norm_sq();
    const double best_sq = best.subset_sum.norm_sq();
    if (cand_sq != best_sq) return cand_sq > best_sq;
    return std::lexicographical_compare(candidate.members.begin(), candidate.members.end(),
                                        best.members.begin(), best.members.end());
}

} // namespace detail

/// Exact maximum of |sum over a subset| by enumerating all 2^n subsets.
/// Ties break to the lexicographically smallest index set. Oracle for the
/// sweep; n is capped at 20.
inline SubsetResult max_subset_bruteforce(const Instance& inst) {
    const std::size_t n = inst.size();
    if (n > 20) throw SizeError("subset enumeration capped at n = 20");

    SubsetResult best; // empty subset, magnitude 0
    std::vector<std::size_t> members;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        members.clear();
        Vec2 sum{};
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::uint64_t{1} << i)) {
                members.push_back(i);
                sum += inst.vectors[i];
            }
        }
        SubsetResult candidate;
        candidate.members = members;
        candidate.subset_sum = sum;
        if (detail::subset_improves(candidate, best)) {
            best = candidate;
        }
    }
    best.magnitude = best.subset_sum.norm();
    return best;
}

/// Exact maximizer via half-plane sweep. A maximizing subset always has
/// the form P(theta) = {i : <e^{i theta}, z_i> > 0}: its sum direction
/// theta* strictly separates members from non-members (adding any vector
/// with a nonnegative component along the sum grows the modulus, removing
/// one with positive component shrinks it). The sweep therefore evaluates
///   - the 2n critical angles arg(z_i) +- pi/2, each as an open and a
///     closed half-plane (vectors exactly perpendicular to the direction
///     included or not), and
///   - the midpoint of every arc between consecutive critical angles,
///     which realizes each strict half-plane attainable away from the
///     boundary cases.
/// Zero vectors carry no direction and never enter any candidate.
/// O(n^2): O(n) candidates, O(n) per evaluation.
inline SubsetResult max_subset_sweep(const Instance& inst) {
    const std::size_t n = inst.size();
    SubsetResult best; // empty subset, magnitude 0

    std::vector<double> angles;
    angles.reserve(2 * n);
    const double pi = std::numbers::pi;
    for (const Vec2& v : inst.vectors) {
        if (v.is_zero()) continue;
        const double a = v.arg();
        for (double theta : {a + pi / 2.0, a - pi / 2.0}) {
            if (theta > pi) theta -= 2.0 * pi;
            if (theta < -pi) theta += 2.0 * pi;
            angles.push_back(theta);
        }
    }
    if (angles.empty()) return best; // empty or all-zero instance

    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end()), angles.end());

    std::vector<double> candidates = angles;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double next = (i + 1 < angles.size()) ? angles[i + 1] : angles.front() + 2.0 * pi;
        candidates.push_back((angles[i] + next) / 2.0);
    }

    std::vector<std::size_t> open_members, closed_members;
    for (double theta : candidates) {
        const Vec2 dir{std::cos(theta), std::sin(theta)};
        open_members.clear();
        closed_members.clear();
        bool boundary = false;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& v = inst.vectors[i];
            if (v.is_zero()) continue;
            const double d = dot(dir, v);
            if (d > 0.0) {
                open_members.push_back(i);
                closed_members.push_back(i);
            } else if (d == 0.0) {
                closed_members.push_back(i);
                boundary = true;
            }
        }
        SubsetResult open_candidate = detail::make_subset(inst.vectors, open_members);
        if (detail::subset_improves(open_candidate, best)) best = std::move(open_candidate);
        if (boundary) {
            SubsetResult closed_candidate = detail::make_subset(inst.vectors, closed_members);
            if (detail::subset_improves(closed_candidate, best)) best = std::move(closed_candidate);
        }
    }
    return best;
}

} // namespace confine
