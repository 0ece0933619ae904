#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace confine {

/// A bijection on {0,...,n-1}, stored as the reordered index list.
struct Permutation {
    std::vector<std::size_t> order;

    Permutation() = default;
    explicit Permutation(std::vector<std::size_t> o) : order(std::move(o)) {}

    static Permutation identity(std::size_t n) {
        std::vector<std::size_t> o(n);
        std::iota(o.begin(), o.end(), std::size_t{0});
        return Permutation{std::move(o)};
    }

    std::size_t size() const { return order.size(); }

    /// True iff every index in {0,...,n-1} appears exactly once.
    bool is_valid() const {
        const std::size_t n = order.size();
        std::vector<char> seen(n, 0);
        for (std::size_t idx : order) {
            if (idx >= n || seen[idx]) return false;
            seen[idx] = 1;
        }
        return true;
    }

    bool operator==(const Permutation&) const = default;
};

} // namespace confine
