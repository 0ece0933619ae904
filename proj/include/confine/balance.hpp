#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "confine/errors.hpp"
#include "confine/permutation.hpp"

namespace confine {

/// Outcome of the one-dimensional greedy: the order and the exact max
/// |prefix sum| it achieves.
struct BalanceResult {
    Permutation perm;
    double prefix_bound_achieved = 0.0;
};

namespace detail {

/// Candidate pools sorted by magnitude descending, original index ascending.
/// Heads are popped as values are consumed.
struct SignPool {
    std::vector<std::size_t> idx; // sorted order
    std::size_t head = 0;

    bool empty() const { return head >= idx.size(); }
    std::size_t peek() const { return idx[head]; }
    void pop() { ++head; }
};

} // namespace detail

/// Greedy sign balancing. Rule per step, with running sum s:
///   s > 1e-12   -> remaining negative value of largest magnitude,
///   s < -1e-12  -> remaining positive value of largest magnitude,
///   |s| <= 1e-12 or the wanted sign class is exhausted
///               -> remaining value of largest magnitude regardless of sign.
/// All ties break toward the lowest original index.
///
/// When |sum of values| <= magnitude_cap the achieved prefix bound stays
/// within magnitude_cap + 1e-9; with an unbalanced total the greedy still
/// runs and the achieved bound is simply reported.
inline BalanceResult balance_signed(const std::vector<double>& values,
                                    double magnitude_cap = 1.0) {
    if (!(magnitude_cap >= 0.0) || !std::isfinite(magnitude_cap))
        throw ArgumentError("magnitude cap must be a finite nonnegative real");
    for (double v : values)
        if (!(std::fabs(v) <= magnitude_cap + 1e-12))
            throw ArgumentError("value magnitude exceeds the cap");

    const std::size_t n = values.size();
    auto by_magnitude = [&](std::size_t a, std::size_t b) {
        const double ma = std::fabs(values[a]);
        const double mb = std::fabs(values[b]);
        if (ma != mb) return ma > mb;
        return a < b;
    };

    detail::SignPool pos, neg, zero;
    for (std::size_t i = 0; i < n; ++i) {
        if (values[i] > 0.0) pos.idx.push_back(i);
        else if (values[i] < 0.0) neg.idx.push_back(i);
        else zero.idx.push_back(i);
    }
    std::sort(pos.idx.begin(), pos.idx.end(), by_magnitude);
    std::sort(neg.idx.begin(), neg.idx.end(), by_magnitude);

    // Largest magnitude across all pools, lowest index on exact ties.
    auto pick_any = [&]() -> detail::SignPool* {
        detail::SignPool* best = nullptr;
        for (detail::SignPool* pool : {&pos, &neg, &zero}) {
            if (pool->empty()) continue;
            if (!best || by_magnitude(pool->peek(), best->peek())) best = pool;
        }
        return best;
    };

    BalanceResult result;
    result.perm.order.reserve(n);
    double sum = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        detail::SignPool* pool = nullptr;
        if (sum > 1e-12 && !neg.empty()) pool = &neg;
        else if (sum < -1e-12 && !pos.empty()) pool = &pos;
        else pool = pick_any();
        const std::size_t i = pool->peek();
        pool->pop();
        result.perm.order.push_back(i);
        sum += values[i];
        result.prefix_bound_achieved = std::max(result.prefix_bound_achieved, std::fabs(sum));
    }
    return result;
}

} // namespace confine
