#include <catch2/catch_amalgamated.hpp>

#include <confine/constructions.hpp>
#include <confine/generators.hpp>
#include <confine/oracle.hpp>

#include <cmath>
#include <numbers>

using namespace confine;

namespace {
constexpr double kPi = std::numbers::pi;

Instance cross_instance() {
    return Instance{{Vec2{1, 0}, Vec2{0, 1}, Vec2{-1, 0}, Vec2{0, -1}}};
}
} // namespace

TEST_CASE("exhaustive oracle solves the cross", "[oracle]") {
    auto res = optimal_radius_exhaustive(cross_instance());
    REQUIRE(res.radius == 1.0);
    REQUIRE(res.method == OracleResult::Method::Exhaustive);
    REQUIRE(res.complete);
    REQUIRE(res.nodes_explored == 24); // 4! orders scanned
    // lexicographically first optimal order
    REQUIRE(res.best_perm.order == std::vector<std::size_t>{0, 2, 1, 3});
    REQUIRE(partial_sums(cross_instance().vectors, res.best_perm).max_modulus == res.radius);
}

TEST_CASE("exhaustive oracle known small families", "[oracle]") {
    Instance triple{{Vec2{1, 0}, polar(1.0, 2.0 * kPi / 3.0), polar(1.0, -2.0 * kPi / 3.0)}};
    auto res = optimal_radius_exhaustive(triple);
    // any order of three unit vectors at mutual 120 degrees passes radius 1
    REQUIRE(std::fabs(res.radius - 1.0) <= 1e-12);

    Instance pair{{Vec2{0.5, 0}, Vec2{-0.5, 0}}};
    REQUIRE(optimal_radius_exhaustive(pair).radius == 0.5);

    auto empty = optimal_radius_exhaustive(Instance{{}});
    REQUIRE(empty.radius == 0.0);
    REQUIRE(empty.best_perm.size() == 0);
}

TEST_CASE("exhaustive oracle refuses factorial blowups", "[oracle]") {
    Instance big{std::vector<Vec2>(10, Vec2{})};
    REQUIRE_THROWS_AS(optimal_radius_exhaustive(big), SizeError);
}

TEST_CASE("branch and bound matches exhaustive exactly", "[oracle]") {
    auto bb = optimal_radius_bnb(cross_instance());
    REQUIRE(bb.radius == 1.0);
    REQUIRE(bb.method == OracleResult::Method::BranchAndBound);
    REQUIRE(bb.complete);
    REQUIRE(partial_sums(cross_instance().vectors, bb.best_perm).max_modulus == bb.radius);

    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        std::size_t n = 2 + seed % 7; // up to 8
        auto inst = seed % 2 == 0 ? gen_centered(n, seed) : gen_closure(n, seed, 100);
        auto ex = optimal_radius_exhaustive(inst);
        auto bnb = optimal_radius_bnb(inst);
        CAPTURE(seed, n);
        REQUIRE(bnb.complete);
        REQUIRE(bnb.radius == ex.radius);
        REQUIRE(bnb.best_perm.is_valid());
        REQUIRE(partial_sums(inst.vectors, bnb.best_perm).max_modulus == bnb.radius);
    }
}

TEST_CASE("duplicate vectors collapse the branch and bound tree", "[oracle]") {
    std::vector<Vec2> vs;
    for (int i = 0; i < 6; ++i) vs.push_back(Vec2{0.5, 0});
    for (int i = 0; i < 6; ++i) vs.push_back(Vec2{-0.5, 0});
    auto res = optimal_radius_bnb(Instance{vs});
    REQUIRE(res.radius == 0.5);
    REQUIRE(res.complete);
    // 12!/(6!6!) orders exist; dedup and pruning leave a linear trail
    REQUIRE(res.nodes_explored <= 500);
}

TEST_CASE("oracle never loses to a construction", "[oracle]") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto inst = gen_centered(3 + seed % 5, seed);
        auto oracle = optimal_radius_bnb(inst);
        CAPTURE(seed);
        REQUIRE(oracle.radius <= rearrange_sqrt5(inst).achieved_radius + 1e-12);
        REQUIRE(oracle.radius <= rearrange_steinitz(inst).achieved_radius + 1e-12);
        REQUIRE(oracle.radius <= rearrange_sector(inst).achieved_radius + 1e-12);
    }
}

TEST_CASE("optimal radius is rotation invariant and scale covariant", "[oracle]") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto inst = gen_closure(5, seed, 100);
        const double base = optimal_radius_bnb(inst).radius;
        CAPTURE(seed);

        Rng rng(derive_seed(seed, 1));
        Instance turned{rotate(inst.vectors, rng.uniform(-kPi, kPi)), inst.modulus_cap};
        REQUIRE(std::fabs(optimal_radius_bnb(turned).radius - base) <= 1e-9);

        Instance scaled{inst.vectors, 0.5};
        for (Vec2& v : scaled.vectors) v = 0.5 * v;
        REQUIRE(std::fabs(optimal_radius_bnb(scaled).radius - 0.5 * base) <= 1e-9);
    }
}

TEST_CASE("branch and bound respects its node budget", "[oracle]") {
    REQUIRE_THROWS_AS(optimal_radius_bnb(cross_instance(), 0), ArgumentError);

    // a budget too small to reach any leaf still returns a valid order,
    // marked incomplete
    Instance triple{{Vec2{0.5, 0}, Vec2{0, 0.5}, Vec2{-0.5, -0.5}}};
    auto res = optimal_radius_bnb(triple, 2);
    REQUIRE_FALSE(res.complete);
    REQUIRE(res.best_perm.is_valid());
    REQUIRE(res.best_perm.size() == 3);
    REQUIRE(partial_sums(triple.vectors, res.best_perm).max_modulus == res.radius);
    REQUIRE(res.nodes_explored <= 2);
}
