#pragma once

#include <cstdint>
#include <fstream>
#include <ios>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "confine/constructions.hpp"
#include "confine/errors.hpp"
#include "confine/generators.hpp"
#include "confine/instance.hpp"
#include "confine/permutation.hpp"
#include "confine/search.hpp"
#include "confine/vec2.hpp"

namespace confine {

/// Key order is kept stable so serialized output is byte-reproducible.
using ojson = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path);
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

inline ojson parse_json(const std::string& text, const std::string& context) {
    ojson j = ojson::parse(text, nullptr, false);
    if (j.is_discarded()) throw ArgumentError("malformed JSON in " + context);
    return j;
}

// ---- core types ----------------------------------------------------------

inline ojson to_json(const Vec2& v) { return ojson::array({v.x, v.y}); }

inline Vec2 vec2_from_json(const ojson& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ArgumentError("vector entry must be a two-number array");
    return Vec2{j[0].get<double>(), j[1].get<double>()};
}

inline ojson to_json(const Instance& inst) {
    ojson vs = ojson::array();
    for (const Vec2& v : inst.vectors) vs.push_back(to_json(v));
    return ojson{{"vectors", std::move(vs)}, {"modulus_cap", inst.modulus_cap}};
}

inline Instance instance_from_json(const ojson& j) {
    if (!j.is_object() || !j.contains("vectors") || !j["vectors"].is_array())
        throw ArgumentError("instance needs a \"vectors\" array");
    Instance inst;
    for (const ojson& entry : j["vectors"]) inst.vectors.push_back(vec2_from_json(entry));
    if (j.contains("modulus_cap")) {
        if (!j["modulus_cap"].is_number()) throw ArgumentError("modulus_cap must be a number");
        inst.modulus_cap = j["modulus_cap"].get<double>();
    }
    if (j.contains("sum_tolerance")) {
        if (!j["sum_tolerance"].is_number()) throw ArgumentError("sum_tolerance must be a number");
        inst.sum_tolerance = j["sum_tolerance"].get<double>();
    }
    return inst;
}

inline ojson to_json(const WeightedInstance& inst) {
    return ojson{{"weights", inst.weights}, {"angles", inst.angles}};
}

inline WeightedInstance weighted_from_json(const ojson& j) {
    if (!j.is_object() || !j.contains("weights") || !j.contains("angles") ||
        !j["weights"].is_array() || !j["angles"].is_array())
        throw ArgumentError("weighted instance needs \"weights\" and \"angles\" arrays");
    WeightedInstance inst;
    for (const ojson& w : j["weights"]) {
        if (!w.is_number()) throw ArgumentError("weights must be numbers");
        inst.weights.push_back(w.get<double>());
    }
    for (const ojson& a : j["angles"]) {
        if (!a.is_number()) throw ArgumentError("angles must be numbers");
        inst.angles.push_back(a.get<double>());
    }
    return inst;
}

inline bool json_is_weighted_instance(const ojson& j) {
    return j.is_object() && j.contains("weights");
}

inline ojson to_json(const Permutation& perm) {
    ojson arr = ojson::array();
    for (std::size_t i : perm.order) arr.push_back(i);
    return arr;
}

inline Permutation permutation_from_json(const ojson& j) {
    if (!j.is_array()) throw ArgumentError("permutation must be an array of indices");
    Permutation perm;
    for (const ojson& e : j) {
        if (!e.is_number_unsigned()) throw ArgumentError("permutation entries must be nonnegative integers");
        perm.order.push_back(e.get<std::size_t>());
    }
    if (!perm.is_valid()) throw ArgumentError("order is not a permutation");
    return perm;
}

/// Bounds serialize as numbers, with "unbounded" standing in for +infinity
/// (JSON has no literal for it).
inline ojson bound_to_json(double bound) {
    if (std::isinf(bound)) return "unbounded";
    return bound;
}

inline double bound_from_json(const ojson& j) {
    if (j.is_string() && j.get<std::string>() == "unbounded")
        return std::numeric_limits<double>::infinity();
    if (!j.is_number()) throw ArgumentError("bound must be a number or \"unbounded\"");
    return j.get<double>();
}

// ---- generator config ----------------------------------------------------

/// One batch of instances: the per-kind parameters plus how many to draw.
/// Instance k uses the derived seed of (seed, k).
struct GenBatch {
    GenSpec spec;
    std::size_t count = 1;
    std::size_t max_retry = 100; // closure only
};

inline GenBatch gen_batch_from_json(const ojson& j) {
    if (!j.is_object()) throw ArgumentError("generator config must be a JSON object");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ArgumentError("generator config needs a \"kind\" string");
    GenBatch batch;
    const auto kind = parse_gen_kind(j["kind"].get<std::string>());
    if (!kind) throw ArgumentError("unknown generator kind: " + j["kind"].get<std::string>());
    batch.spec.kind = *kind;

    const bool pair_kind = batch.spec.kind == GenKind::Antipodal ||
                           batch.spec.kind == GenKind::WeightedPairs;
    const char* size_key = pair_kind ? "pairs" : "n";
    if (!j.contains(size_key) || !j[size_key].is_number_unsigned())
        throw ArgumentError(std::string("generator config needs \"") + size_key +
                            "\" as a nonnegative integer");
    batch.spec.n_or_pairs = j[size_key].get<std::size_t>();

    if (batch.spec.kind == GenKind::Sector) {
        if (!j.contains("alpha") || !j["alpha"].is_number())
            throw ArgumentError("sector generator config needs \"alpha\" in radians");
        batch.spec.alpha = j["alpha"].get<double>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ArgumentError("seed must be a nonnegative integer");
        batch.spec.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("count")) {
        if (!j["count"].is_number_unsigned() || j["count"].get<std::size_t>() < 1)
            throw ArgumentError("count must be a positive integer");
        batch.count = j["count"].get<std::size_t>();
    }
    if (j.contains("max_retry")) {
        if (!j["max_retry"].is_number_unsigned()) throw ArgumentError("max_retry must be a nonnegative integer");
        batch.max_retry = j["max_retry"].get<std::size_t>();
    }
    return batch;
}

// ---- search config and report --------------------------------------------

inline SearchConfig search_config_from_json(const ojson& j) {
    if (!j.is_object()) throw ArgumentError("search config must be a JSON object");
    SearchConfig config;
    if (!j.contains("n") || !j["n"].is_number_unsigned())
        throw ArgumentError("search config needs \"n\"");
    config.n = j["n"].get<std::size_t>();
    if (j.contains("objective")) {
        if (!j["objective"].is_string())
            throw ArgumentError("objective must be \"oracle\" or an algorithm tag");
        const std::string name = j["objective"].get<std::string>();
        if (name != "oracle") {
            const auto alg = parse_algorithm(name);
            if (!alg) throw ArgumentError("unknown objective: " + name);
            config.objective_algorithm = *alg;
        }
    }
    if (j.contains("restarts")) config.restarts = j["restarts"].get<std::size_t>();
    if (j.contains("steps_per_restart"))
        config.steps_per_restart = j["steps_per_restart"].get<std::size_t>();
    if (j.contains("step_scale")) {
        if (!j["step_scale"].is_number()) throw ArgumentError("step_scale must be a number");
        config.step_scale = j["step_scale"].get<double>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ArgumentError("seed must be a nonnegative integer");
        config.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("oracle_budget")) config.oracle_budget = j["oracle_budget"].get<std::uint64_t>();
    return config;
}

inline ojson to_json(const SearchConfig& config) {
    return ojson{
        {"n", config.n},
        {"objective", config.objective_algorithm ? algorithm_name(*config.objective_algorithm)
                                                 : "oracle"},
        {"restarts", config.restarts},
        {"steps_per_restart", config.steps_per_restart},
        {"step_scale", config.step_scale},
        {"seed", config.seed},
        {"oracle_budget", config.oracle_budget},
    };
}

inline ojson to_json(const SearchReport& report) {
    ojson history = ojson::array();
    for (const auto& [iteration, radius] : report.history)
        history.push_back(ojson::array({iteration, radius}));
    return ojson{
        {"config", to_json(report.config)},
        {"best_radius", report.best_radius},
        {"best_instance", to_json(report.best_instance)},
        {"history", std::move(history)},
        {"oracle_incomplete_evals", report.oracle_incomplete_evals},
    };
}

} // namespace confine
