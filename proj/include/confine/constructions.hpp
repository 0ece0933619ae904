#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "confine/balance.hpp"
#include "confine/errors.hpp"
#include "confine/geometry.hpp"
#include "confine/instance.hpp"
#include "confine/permutation.hpp"
#include "confine/subset.hpp"
#include "confine/vec2.hpp"

namespace confine {

enum class Algorithm { Sqrt5, Steinitz2, Sector, Weighted };

inline const char* algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::Sqrt5: return "sqrt5";
    case Algorithm::Steinitz2: return "steinitz2";
    case Algorithm::Sector: return "sector";
    case Algorithm::Weighted: return "weighted";
    }
    return "unknown";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
    if (name == "sqrt5") return Algorithm::Sqrt5;
    if (name == "steinitz2") return Algorithm::Steinitz2;
    if (name == "sector") return Algorithm::Sector;
    if (name == "weighted") return Algorithm::Weighted;
    return std::nullopt;
}

/// One rearrangement run: the order, the theoretical bound the algorithm
/// claims for the instance, and the radius it actually achieved.
/// claimed_bound is +infinity when no finite bound applies (full-circle
/// sector); selection_fallback marks greedy steps where no vector passed
/// the admissibility test within tolerance.
struct RearrangeOutcome {
    Permutation perm;
    double claimed_bound = 0.0;
    double achieved_radius = 0.0;
    Algorithm algorithm_tag = Algorithm::Sqrt5;
    bool selection_fallback = false;
};

inline void require_valid(const Instance& inst) {
    const ValidationReport report = validate(inst);
    if (!report.ok()) throw ArgumentError("invalid instance: " + report.to_string());
}

inline void require_valid(const WeightedInstance& inst) {
    const ValidationReport report = validate(inst);
    if (!report.ok()) throw ArgumentError("invalid weighted instance: " + report.to_string());
}

/// 1/sin(alpha/2), the sector confinement constant for unit-modulus
/// vectors spanning width alpha. +infinity once sin(alpha/2) <= 1e-12
/// (alpha near 0 or 2 pi): no finite bound is claimed.
inline double sector_bound(double alpha) {
    if (!(alpha >= 0.0) || !(alpha <= 2.0 * std::numbers::pi))
        throw ArgumentError("sector width must lie in [0, 2 pi]");
    const double s = std::sin(alpha / 2.0);
    if (s <= 1e-12) return std::numeric_limits<double>::infinity();
    return 1.0 / s;
}

namespace detail {

/// Shared greedy core: each step admits remaining vectors with
/// <S, v> <= 1e-12 and takes the admissible one minimizing |S + v|,
/// lowest index on ties. If rounding starves the admissible set, falls
/// back to the minimum inner product and reports it.
struct GreedyOrder {
    Permutation perm;
    bool fallback = false;
};

inline GreedyOrder obtuse_greedy(const std::vector<Vec2>& vectors) {
    const std::size_t n = vectors.size();
    std::vector<std::size_t> remaining;
    remaining.reserve(n);
    for (std::size_t i = 0; i < n; ++i) remaining.push_back(i);

    GreedyOrder out;
    out.perm.order.reserve(n);
    Vec2 s{};
    while (!remaining.empty()) {
        std::size_t best_pos = remaining.size();
        double best_growth = std::numeric_limits<double>::infinity();
        for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
            const Vec2& v = vectors[remaining[pos]];
            if (dot(s, v) > 1e-12) continue;
            const double growth = (s + v).norm_sq();
            if (growth < best_growth) {
                best_growth = growth;
                best_pos = pos;
            }
        }
        if (best_pos == remaining.size()) {
            out.fallback = true;
            double least_product = std::numeric_limits<double>::infinity();
            for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
                const double d = dot(s, vectors[remaining[pos]]);
                if (d < least_product) {
                    least_product = d;
                    best_pos = pos;
                }
            }
        }
        const std::size_t chosen = remaining[best_pos];
        out.perm.order.push_back(chosen);
        s += vectors[chosen];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_pos));
    }
    return out;
}

} // namespace detail

/// Step-by-step internals of rearrange_sqrt5, exposed for verification of
/// the intermediate guarantees (sign separation after rotation, per-block
/// prefix balance).
struct Sqrt5Breakdown {
    bool degenerate = false;            // |S_P| <= 1e-12, identity emitted
    SubsetResult subset;                // P and its sum
    std::vector<std::size_t> q_members; // nonzero complement, ascending
    std::vector<std::size_t> zero_members;
    double rotation = 0.0;              // angle applied to the working copy
    std::vector<Vec2> rotated;          // working copy, all vectors
    BalanceResult p_balance;            // over positions in subset.members
    BalanceResult q_balance;            // over positions in q_members
    std::vector<std::size_t> p_order;   // balanced P as original indices
    std::vector<std::size_t> q_order;   // balanced Q as original indices
};

/// Extract-rotate-balance-interleave construction. Splits off a subset P
/// maximizing |sum|, rotates that sum onto the positive real axis (P then
/// sits in Re >= 0, the complement Q in Re <= 0), orders each block so its
/// imaginary prefix sums stay small, and interleaves P and Q so the real
/// parts alternate in sign. Claimed bound sqrt(5) times the modulus cap.
inline RearrangeOutcome rearrange_sqrt5(const Instance& inst,
                                        Sqrt5Breakdown* breakdown = nullptr) {
    require_valid(inst);
    const std::size_t n = inst.size();

    RearrangeOutcome out;
    out.algorithm_tag = Algorithm::Sqrt5;
    out.claimed_bound = std::sqrt(5.0) * inst.modulus_cap;

    Sqrt5Breakdown local;
    Sqrt5Breakdown& bd = breakdown ? *breakdown : local;
    bd = Sqrt5Breakdown{};
    bd.subset = max_subset_sweep(inst);

    if (bd.subset.magnitude <= 1e-12) {
        // All subset sums vanish, which forces an all-zero family; any
        // order confines equally well.
        bd.degenerate = true;
        out.perm = Permutation::identity(n);
        out.achieved_radius = partial_sums(inst.vectors, out.perm).max_modulus;
        return out;
    }

    std::vector<bool> in_p(n, false);
    for (std::size_t i : bd.subset.members) in_p[i] = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (in_p[i]) continue;
        if (inst.vectors[i].is_zero()) bd.zero_members.push_back(i);
        else bd.q_members.push_back(i);
    }

    bd.rotation = -bd.subset.subset_sum.arg();
    bd.rotated = rotate(inst.vectors, bd.rotation);

    std::vector<double> p_ims, q_ims;
    p_ims.reserve(bd.subset.members.size());
    q_ims.reserve(bd.q_members.size());
    for (std::size_t i : bd.subset.members) p_ims.push_back(bd.rotated[i].y);
    for (std::size_t i : bd.q_members) q_ims.push_back(bd.rotated[i].y);

    bd.p_balance = balance_signed(p_ims, inst.modulus_cap);
    bd.q_balance = balance_signed(q_ims, inst.modulus_cap);
    for (std::size_t pos : bd.p_balance.perm.order) bd.p_order.push_back(bd.subset.members[pos]);
    for (std::size_t pos : bd.q_balance.perm.order) bd.q_order.push_back(bd.q_members[pos]);

    out.perm.order.reserve(n);
    const std::size_t common = std::min(bd.p_order.size(), bd.q_order.size());
    for (std::size_t k = 0; k < common; ++k) {
        out.perm.order.push_back(bd.p_order[k]);
        out.perm.order.push_back(bd.q_order[k]);
    }
    for (std::size_t k = common; k < bd.p_order.size(); ++k) out.perm.order.push_back(bd.p_order[k]);
    for (std::size_t k = common; k < bd.q_order.size(); ++k) out.perm.order.push_back(bd.q_order[k]);
    for (std::size_t i : bd.zero_members) out.perm.order.push_back(i);

    out.achieved_radius = partial_sums(inst.vectors, out.perm).max_modulus;
    return out;
}

/// Classical greedy: always append a remaining vector whose inner product
/// with the running sum is nonpositive (one exists for zero-sum families),
/// minimizing the next modulus. Claimed bound 2 times the modulus cap.
inline RearrangeOutcome rearrange_steinitz(const Instance& inst) {
    require_valid(inst);
    const detail::GreedyOrder greedy = detail::obtuse_greedy(inst.vectors);

    RearrangeOutcome out;
    out.algorithm_tag = Algorithm::Steinitz2;
    out.claimed_bound = 2.0 * inst.modulus_cap;
    out.perm = greedy.perm;
    out.selection_fallback = greedy.fallback;
    out.achieved_radius = partial_sums(inst.vectors, out.perm).max_modulus;
    return out;
}

/// Directions spanning width alpha admit the bound cap/sin(alpha/2): each
/// step picks the remaining vector with the least inner product against
/// the running sum (the most obtuse turn), lowest index on ties.
inline RearrangeOutcome rearrange_sector(const Instance& inst) {
    require_valid(inst);
    const std::size_t n = inst.size();
    const double alpha = angular_span(inst.vectors);

    RearrangeOutcome out;
    out.algorithm_tag = Algorithm::Sector;
    const double unit_bound = sector_bound(alpha);
    out.claimed_bound = std::isinf(unit_bound) ? unit_bound : unit_bound * inst.modulus_cap;

    std::vector<std::size_t> remaining;
    remaining.reserve(n);
    for (std::size_t i = 0; i < n; ++i) remaining.push_back(i);
    out.perm.order.reserve(n);
    Vec2 s{};
    while (!remaining.empty()) {
        std::size_t best_pos = 0;
        double least_product = std::numeric_limits<double>::infinity();
        for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
            const double d = dot(s, inst.vectors[remaining[pos]]);
            if (d < least_product) {
                least_product = d;
                best_pos = pos;
            }
        }
        const std::size_t chosen = remaining[best_pos];
        out.perm.order.push_back(chosen);
        s += inst.vectors[chosen];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_pos));
    }

    out.achieved_radius = partial_sums(inst.vectors, out.perm).max_modulus;
    return out;
}

/// Weighted family (moduli summing to 1): the same greedy as the
/// Steinitz order, with the telescoping guarantee that every prefix obeys
/// |S_p|^2 <= sum of placed squared weights, hence radius <= 1.
inline RearrangeOutcome rearrange_weighted(const WeightedInstance& inst) {
    require_valid(inst);
    const std::vector<Vec2> vectors = inst.vectors();
    const detail::GreedyOrder greedy = detail::obtuse_greedy(vectors);

    RearrangeOutcome out;
    out.algorithm_tag = Algorithm::Weighted;
    out.claimed_bound = 1.0;
    out.perm = greedy.perm;
    out.selection_fallback = greedy.fallback;
    out.achieved_radius = partial_sums(vectors, out.perm).max_modulus;
    return out;
}

} // namespace confine
