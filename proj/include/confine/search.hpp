#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "confine/constructions.hpp"
#include "confine/errors.hpp"
#include "confine/generators.hpp"
#include "confine/instance.hpp"
#include "confine/oracle.hpp"
#include "confine/rng.hpp"
#include "confine/vec2.hpp"

namespace confine {

/// Hill-climbing configuration. objective_algorithm empty means the exact
/// oracle radius (branch and bound, n capped at 12); otherwise the named
/// construction's achieved radius is maximized instead (cheap, any n).
/// step_scale is the initial perturbation scale; each restart adapts it
/// downward on rejected steps so late steps can polish the configuration
/// to full precision.
struct SearchConfig {
    std::size_t n = 4;
    std::optional<Algorithm> objective_algorithm; // empty: oracle radius
    std::size_t restarts = 20;
    std::size_t steps_per_restart = 500;
    double step_scale = 0.25;
    std::uint64_t seed = 0;
    std::uint64_t oracle_budget = 200'000;
};

/// Search outcome. history holds (step counter, radius) at every global
/// improvement; best_radius always re-evaluates on best_instance.
struct SearchReport {
    SearchConfig config;
    Instance best_instance;
    double best_radius = 0.0;
    std::vector<std::pair<std::uint64_t, double>> history;
    std::uint64_t oracle_incomplete_evals = 0; // budget-truncated evaluations
};

namespace detail {

/// Feasibility projection: recenter to zero sum, then shrink uniformly
/// into the disk; one more round if rescaling disturbed the sum, three
/// rounds total before giving up.
inline bool project_to_constraints(std::vector<Vec2>& vs) {
    const std::size_t n = vs.size();
    if (n == 0) return true;
    const double tol = 1e-9 * static_cast<double>(n);
    for (int round = 0; round < 3; ++round) {
        Vec2 sum{};
        for (const Vec2& v : vs) sum += v;
        const Vec2 mean = sum / static_cast<double>(n);
        for (Vec2& v : vs) v -= mean;

        double max_norm = 0.0;
        for (const Vec2& v : vs) max_norm = std::max(max_norm, v.norm());
        if (max_norm > 1.0)
            for (Vec2& v : vs) v = v / max_norm;

        Vec2 check{};
        max_norm = 0.0;
        for (const Vec2& v : vs) {
            check += v;
            max_norm = std::max(max_norm, v.norm());
        }
        if (check.norm() <= tol && max_norm <= 1.0 + kModulusSlack) return true;
    }
    return false;
}

struct SearchObjective {
    const SearchConfig* config;
    std::uint64_t incomplete = 0;

    double operator()(const Instance& inst) {
        if (!config->objective_algorithm) {
            const OracleResult r = optimal_radius_bnb(inst, config->oracle_budget);
            if (!r.complete) ++incomplete;
            return r.radius;
        }
        switch (*config->objective_algorithm) {
        case Algorithm::Sqrt5: return rearrange_sqrt5(inst).achieved_radius;
        case Algorithm::Steinitz2: return rearrange_steinitz(inst).achieved_radius;
        case Algorithm::Sector: return rearrange_sector(inst).achieved_radius;
        case Algorithm::Weighted: break; // rejected at validation
        }
        throw ArgumentError("objective algorithm not usable on plain instances");
    }
};

} // namespace detail

inline void require_valid(const SearchConfig& config) {
    if (config.n < 2) throw ArgumentError("search needs n >= 2");
    if (config.restarts < 1) throw ArgumentError("search needs at least one restart");
    if (!(config.step_scale > 0.0) || !std::isfinite(config.step_scale))
        throw ArgumentError("step scale must be a positive real");
    if (config.oracle_budget == 0) throw ArgumentError("oracle budget must be positive");
    if (!config.objective_algorithm) {
        if (config.n > 12) throw ArgumentError("oracle radius objective capped at n = 12");
    } else if (*config.objective_algorithm == Algorithm::Weighted) {
        throw ArgumentError("weighted construction operates on weight/angle families, "
                            "not on the searched vector space");
    }
}

/// Adversarial instance mining: maximize the objective radius over valid
/// instances by hill climbing with random restarts. Restart r draws its
/// start from gen_centered under derived seed (seed, 2r) and perturbs with
/// the stream (seed, 2r+1): one vector gets a Gaussian offset, the family
/// is re-projected, and the step is kept only when the radius strictly
/// increased. The perturbation scale starts at step_scale, shrinks by 0.9
/// per rejection and recovers by 1.5 (capped at step_scale) per accept,
/// so each restart ends in a fine-grained polishing regime. Fully
/// deterministic given the config.
inline SearchReport adversarial_search(const SearchConfig& config) {
    require_valid(config);

    SearchReport report;
    report.config = config;
    detail::SearchObjective objective{&config};

    double best = -std::numeric_limits<double>::infinity();
    std::uint64_t iteration = 0;
    for (std::size_t r = 0; r < config.restarts; ++r) {
        Instance inst = gen_centered(config.n, derive_seed(config.seed, 2 * r));
        Rng rng(derive_seed(config.seed, 2 * r + 1));
        double current = objective(inst);
        if (current > best) {
            best = current;
            report.best_instance = inst;
            report.history.emplace_back(iteration, current);
        }
        ++iteration;

        double scale = config.step_scale;
        for (std::size_t step = 0; step < config.steps_per_restart; ++step) {
            const std::size_t target = static_cast<std::size_t>(rng.next() % config.n);
            const Vec2 offset = scale * rng.gaussian2();
            std::vector<Vec2> candidate = inst.vectors;
            candidate[target] += offset;

            bool accepted = false;
            if (detail::project_to_constraints(candidate)) {
                Instance next{std::move(candidate)};
                const double value = objective(next);
                if (value > current) {
                    inst = std::move(next);
                    current = value;
                    accepted = true;
                    if (current > best) {
                        best = current;
                        report.best_instance = inst;
                        report.history.emplace_back(iteration, current);
                    }
                }
            }
            ++iteration;
            scale = accepted ? std::min(scale * 1.5, config.step_scale) : scale * 0.9;
        }
    }

    report.best_radius = best;
    report.oracle_incomplete_evals = objective.incomplete;
    return report;
}

} // namespace confine
