#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "confine/vec2.hpp"

namespace confine {

/// Slack added on top of the modulus cap when validating, absorbing the
/// rounding of rotations and rescaling.
inline constexpr double kModulusSlack = 1e-12;

/// An ordered family of planar vectors with its validation metadata.
///
/// The intended invariants (checked by validate(), not at construction):
///   - every vector finite and of modulus <= modulus_cap + 1e-12,
///   - |sum of vectors| <= sum_tolerance * max(n, 1).
struct Instance {
    std::vector<Vec2> vectors;
    double modulus_cap = 1.0;
    double sum_tolerance = 1e-9; // per element

    Instance() = default;
    explicit Instance(std::vector<Vec2> vs, double cap = 1.0, double tol = 1e-9)
        : vectors(std::move(vs)), modulus_cap(cap), sum_tolerance(tol) {}

    std::size_t size() const { return vectors.size(); }
    bool empty() const { return vectors.empty(); }

    /// Left-to-right sum of all vectors.
    Vec2 total() const {
        Vec2 s{};
        for (const Vec2& v : vectors) s += v;
        return s;
    }
};

/// A family z_i of modulus a_i >= 0 at angle theta_i, with sum(a_i) = 1.
/// Vectors are derived from the polar data on demand.
struct WeightedInstance {
    std::vector<double> weights;
    std::vector<double> angles;
    double sum_tolerance = 1e-9;

    WeightedInstance() = default;
    WeightedInstance(std::vector<double> ws, std::vector<double> ths, double tol = 1e-9)
        : weights(std::move(ws)), angles(std::move(ths)), sum_tolerance(tol) {}

    std::size_t size() const { return weights.size(); }

    std::vector<Vec2> vectors() const {
        std::vector<Vec2> vs;
        vs.reserve(weights.size());
        for (std::size_t i = 0; i < weights.size(); ++i)
            vs.push_back(polar(weights[i], angles[i]));
        return vs;
    }

    /// View as a plain instance; weights summing to 1 put every modulus
    /// inside the unit disk, so the cap is 1.
    Instance to_instance() const { return Instance{vectors(), 1.0, sum_tolerance}; }
};

struct ValidationIssue {
    enum class Kind {
        NonFinite,      // entry has a NaN/inf component
        ModulusCap,     // |z_i| > modulus_cap + 1e-12
        SumTolerance,   // |sum| > sum_tolerance * max(n, 1)
        NegativeWeight, // weighted: a_i < 0
        WeightSum,      // weighted: |sum(a_i) - 1| > 1e-9
        Shape,          // weighted: weights/angles length mismatch
    };

    Kind kind;
    std::optional<std::size_t> index; // offending entry, when applicable
    double value = 0.0;               // measured quantity (modulus, sum, ...)

    std::string to_string() const {
        std::ostringstream os;
        switch (kind) {
        case Kind::NonFinite: os << "non-finite entry"; break;
        case Kind::ModulusCap: os << "modulus above cap"; break;
        case Kind::SumTolerance: os << "vector sum above tolerance"; break;
        case Kind::NegativeWeight: os << "negative weight"; break;
        case Kind::WeightSum: os << "weight sum away from 1"; break;
        case Kind::Shape: os << "weights/angles length mismatch"; break;
        }
        if (index) os << " at index " << *index;
        os << " (value " << value << ")";
        return os.str();
    }
};

/// Outcome of validate(): empty issue list means a valid instance.
struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }

    std::string to_string() const {
        if (issues.empty()) return "valid";
        std::string out;
        for (const auto& issue : issues) {
            if (!out.empty()) out += "; ";
            out += issue.to_string();
        }
        return out;
    }
};

/// Checks every instance invariant and reports all violations. Never throws.
inline ValidationReport validate(const Instance& inst) {
    ValidationReport report;
    const std::size_t n = inst.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& v = inst.vectors[i];
        if (!v.finite()) {
            report.issues.push_back({ValidationIssue::Kind::NonFinite, i, 0.0});
            continue;
        }
        const double m = v.norm();
        if (m > inst.modulus_cap + kModulusSlack)
            report.issues.push_back({ValidationIssue::Kind::ModulusCap, i, m});
    }
    const double total = inst.total().norm();
    const double allowed = inst.sum_tolerance * static_cast<double>(n > 0 ? n : 1);
    if (!(total <= allowed))
        report.issues.push_back({ValidationIssue::Kind::SumTolerance, std::nullopt, total});
    return report;
}

/// Weighted variant: nonnegative weights summing to 1, zero vector sum.
inline ValidationReport validate(const WeightedInstance& inst) {
    ValidationReport report;
    if (inst.weights.size() != inst.angles.size()) {
        report.issues.push_back({ValidationIssue::Kind::Shape, std::nullopt,
                                 static_cast<double>(inst.weights.size())});
        return report;
    }
    const std::size_t n = inst.size();
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(inst.weights[i]) || !std::isfinite(inst.angles[i])) {
            report.issues.push_back({ValidationIssue::Kind::NonFinite, i, 0.0});
            continue;
        }
        if (inst.weights[i] < 0.0)
            report.issues.push_back({ValidationIssue::Kind::NegativeWeight, i, inst.weights[i]});
        weight_sum += inst.weights[i];
    }
    if (n > 0 && !(std::fabs(weight_sum - 1.0) <= 1e-9))
        report.issues.push_back({ValidationIssue::Kind::WeightSum, std::nullopt, weight_sum});
    Vec2 total{};
    for (const Vec2& v : inst.vectors()) total += v;
    const double allowed = inst.sum_tolerance * static_cast<double>(n > 0 ? n : 1);
    if (!(total.norm() <= allowed))
        report.issues.push_back({ValidationIssue::Kind::SumTolerance, std::nullopt, total.norm()});
    return report;
}

} // namespace confine
