#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "confine/errors.hpp"
#include "confine/geometry.hpp"
#include "confine/instance.hpp"
#include "confine/permutation.hpp"
#include "confine/vec2.hpp"

namespace confine {

/// Exact optimum of the rearrangement game: the least achievable value of
/// the max prefix-sum modulus over all n! orders.
struct OracleResult {
    double radius = 0.0;
    Permutation best_perm;
    std::uint64_t nodes_explored = 0;
    enum class Method { Exhaustive, BranchAndBound } method = Method::Exhaustive;
    bool complete = true; // false only when branch and bound ran out of budget
};

/// Minimum over all n! permutations, iterated lexicographically so radius
/// ties resolve to the lexicographically smallest order. n is capped at 9.
inline OracleResult optimal_radius_exhaustive(const Instance& inst) {
    const std::size_t n = inst.size();
    if (n > 9) throw SizeError("exhaustive oracle capped at n = 9");

    OracleResult result;
    result.method = OracleResult::Method::Exhaustive;
    result.best_perm = Permutation::identity(n);
    if (n == 0) return result;

    Permutation perm = Permutation::identity(n);
    double best_sq = std::numeric_limits<double>::infinity();
    do {
        ++result.nodes_explored;
        Vec2 s{};
        double max_sq = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            s += inst.vectors[perm.order[p]];
            max_sq = std::max(max_sq, s.norm_sq());
            if (max_sq >= best_sq) break; // cannot beat or lex-precede the incumbent
        }
        if (max_sq < best_sq) {
            best_sq = max_sq;
            result.best_perm = perm;
        }
    } while (std::next_permutation(perm.order.begin(), perm.order.end()));

    result.radius = partial_sums(inst.vectors, result.best_perm).max_modulus;
    return result;
}

namespace detail {

struct BnbState {
    const std::vector<Vec2>* vectors = nullptr;
    std::uint64_t budget = 0;
    std::uint64_t nodes = 0;
    bool truncated = false;
    double incumbent = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> current;
    std::vector<std::size_t> best;
    std::vector<bool> used;
};

inline void bnb_descend(BnbState& st, Vec2 s, double running_max) {
    const std::vector<Vec2>& vs = *st.vectors;
    const std::size_t n = vs.size();
    if (st.current.size() == n) {
        if (running_max < st.incumbent) {
            st.incumbent = running_max;
            st.best = st.current;
        }
        return;
    }

    // Children in ascending next-modulus order; duplicate remaining
    // vectors (exact float equality) expand once, via their first index.
    struct Child {
        double next_norm;
        std::size_t index;
    };
    std::vector<Child> children;
    children.reserve(n - st.current.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (st.used[i]) continue;
        bool duplicate = false;
        for (std::size_t j = 0; j < i; ++j) {
            if (!st.used[j] && vs[j].x == vs[i].x && vs[j].y == vs[i].y) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;
        children.push_back({(s + vs[i]).norm(), i});
    }
    std::sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
        if (a.next_norm != b.next_norm) return a.next_norm < b.next_norm;
        return a.index < b.index;
    });

    for (const Child& child : children) {
        const double child_max = std::max(running_max, child.next_norm);
        // prune on >=: the running max never decreases along a path, so a
        // prefix already at the incumbent cannot end strictly below it
        if (child_max >= st.incumbent) continue; // pruned, not counted
        if (st.nodes >= st.budget) {
            st.truncated = true;
            return;
        }
        ++st.nodes;
        st.used[child.index] = true;
        st.current.push_back(child.index);
        bnb_descend(st, s + vs[child.index], child_max);
        st.current.pop_back();
        st.used[child.index] = false;
        if (st.truncated) return;
    }
}

} // namespace detail

/// Depth-first branch and bound over prefixes. Exact when it finishes
/// inside the node budget; a budget exhaustion returns the incumbent with
/// complete = false.
inline OracleResult optimal_radius_bnb(const Instance& inst, std::uint64_t budget = 10'000'000) {
    if (budget == 0) throw ArgumentError("node budget must be at least 1");
    const std::size_t n = inst.size();

    OracleResult result;
    result.method = OracleResult::Method::BranchAndBound;
    if (n == 0) {
        result.best_perm = Permutation::identity(0);
        return result;
    }

    detail::BnbState st;
    st.vectors = &inst.vectors;
    st.budget = budget;
    st.used.assign(n, false);
    st.current.reserve(n);
    detail::bnb_descend(st, Vec2{}, 0.0);

    result.nodes_explored = st.nodes;
    result.complete = !st.truncated;
    if (st.best.size() == n) {
        result.best_perm = Permutation{st.best};
    } else {
        // Budget died before any leaf; fall back to the identity order.
        result.best_perm = Permutation::identity(n);
        result.complete = false;
    }
    result.radius = partial_sums(inst.vectors, result.best_perm).max_modulus;
    return result;
}

} // namespace confine
