#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "confine/constructions.hpp"
#include "confine/errors.hpp"
#include "confine/generators.hpp"
#include "confine/geometry.hpp"
#include "confine/instance.hpp"
#include "confine/io.hpp"
#include "confine/oracle.hpp"
#include "confine/search.hpp"

namespace confine {

/// One (instance, algorithm) result line. Skipped records mark unusable
/// pairings (plain-vector construction on a weighted family or vice
/// versa) and carry no radii. runtime_ms is filled only when timing was
/// requested, keeping default output byte-reproducible.
struct RunRecord {
    std::string instance_id;
    std::size_t n = 0;
    std::string algorithm;
    bool skipped = false;
    std::string skip_reason;
    double claimed_bound = 0.0;
    double achieved_radius = 0.0;
    bool bound_satisfied = true;
    std::optional<double> oracle_radius;
    bool fallback_flag = false;
    std::uint64_t seed = 0;
    std::optional<double> runtime_ms;
    std::optional<Permutation> perm;
    std::optional<ojson> embedded_instance;
};

inline ojson to_json(const RunRecord& r) {
    ojson j{{"instance_id", r.instance_id}, {"n", r.n}, {"algorithm", r.algorithm}};
    if (r.skipped) {
        j["skipped"] = true;
        j["skip_reason"] = r.skip_reason;
        j["seed"] = r.seed;
        return j;
    }
    j["claimed_bound"] = bound_to_json(r.claimed_bound);
    j["achieved_radius"] = r.achieved_radius;
    j["bound_satisfied"] = r.bound_satisfied;
    if (r.oracle_radius) j["oracle_radius"] = *r.oracle_radius;
    j["fallback_flag"] = r.fallback_flag;
    j["seed"] = r.seed;
    if (r.runtime_ms) j["runtime_ms"] = *r.runtime_ms;
    if (r.perm) j["perm"] = to_json(*r.perm);
    if (r.embedded_instance) j["instance"] = *r.embedded_instance;
    return j;
}

inline RunRecord record_from_json(const ojson& j) {
    if (!j.is_object()) throw ArgumentError("record must be a JSON object");
    RunRecord r;
    if (j.contains("instance_id")) r.instance_id = j["instance_id"].get<std::string>();
    if (j.contains("n")) r.n = j["n"].get<std::size_t>();
    if (j.contains("algorithm")) r.algorithm = j["algorithm"].get<std::string>();
    if (j.contains("seed")) r.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("skipped") && j["skipped"].get<bool>()) {
        r.skipped = true;
        if (j.contains("skip_reason")) r.skip_reason = j["skip_reason"].get<std::string>();
        return r;
    }
    if (j.contains("claimed_bound")) r.claimed_bound = bound_from_json(j["claimed_bound"]);
    if (j.contains("achieved_radius")) r.achieved_radius = j["achieved_radius"].get<double>();
    if (j.contains("bound_satisfied")) r.bound_satisfied = j["bound_satisfied"].get<bool>();
    if (j.contains("oracle_radius")) r.oracle_radius = j["oracle_radius"].get<double>();
    if (j.contains("fallback_flag")) r.fallback_flag = j["fallback_flag"].get<bool>();
    if (j.contains("runtime_ms")) r.runtime_ms = j["runtime_ms"].get<double>();
    if (j.contains("perm")) r.perm = permutation_from_json(j["perm"]);
    if (j.contains("instance")) r.embedded_instance = j["instance"];
    return r;
}

struct AlgorithmStats {
    std::string algorithm;
    std::uint64_t runs = 0;
    std::uint64_t skips = 0;
    std::uint64_t violations = 0;
    std::uint64_t fallbacks = 0;
    double max_achieved_radius = 0.0;
    double max_ratio = 0.0; // achieved / claimed, over finite positive claims
    std::vector<std::string> violating_ids;
};

/// Aggregate view over a record stream, derivable from the records alone.
struct SummaryReport {
    std::vector<AlgorithmStats> per_algorithm; // sorted by tag
    std::uint64_t total_records = 0;
    std::uint64_t records_with_embedded = 0;
    std::vector<std::string> inconsistent_ids; // bound_satisfied flag wrong
    std::vector<std::string> mismatch_ids;     // embedded recompute off by > 1e-9
    bool recompute_checked = false;
    std::string coverage_note;
};

/// The two widths where the quoted special-case constants disagree with
/// the formula 1/sin(alpha/2). Records always claim the formula value;
/// the summary surfaces both so the discrepancy stays visible.
inline ojson sector_constant_note() {
    const double pi = std::numbers::pi;
    return ojson{
        {"width_2pi_over_3",
         ojson{{"formula", sector_bound(2.0 * pi / 3.0)}, {"stated_special_case", std::sqrt(3.0)}}},
        {"width_pi", ojson{{"formula", sector_bound(pi)}, {"stated_special_case", 2.0}}},
        {"note",
         "discrepancy: the stated special-case constants sqrt(3) (width 2pi/3) and 2 (width pi) "
         "do not match the formula 1/sin(alpha/2), which gives 2/sqrt(3) and 1; "
         "every record's claimed_bound uses the formula"},
    };
}

inline ojson to_json(const SummaryReport& s) {
    ojson algs = ojson::array();
    for (const AlgorithmStats& a : s.per_algorithm) {
        algs.push_back(ojson{
            {"algorithm", a.algorithm},
            {"runs", a.runs},
            {"skips", a.skips},
            {"violations", a.violations},
            {"fallbacks", a.fallbacks},
            {"max_achieved_radius", a.max_achieved_radius},
            {"max_ratio", a.max_ratio},
            {"violating_ids", a.violating_ids},
        });
    }
    return ojson{
        {"total_records", s.total_records},
        {"per_algorithm", std::move(algs)},
        {"inconsistent_ids", s.inconsistent_ids},
        {"recompute",
         ojson{{"checked", s.recompute_checked},
               {"records_with_embedded", s.records_with_embedded},
               {"mismatch_ids", s.mismatch_ids}}},
        {"coverage_note", s.coverage_note},
        {"sector_constant_note", sector_constant_note()},
    };
}

// ---- shared plumbing -------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(std::move(line));
        start = end + 1;
    }
    return lines;
}

/// Index-based pool: results keyed by index, so scheduling cannot change
/// anything observable. The first exception wins and is rethrown after
/// all workers drain.
inline void parallel_for(std::size_t count, std::size_t workers,
                         const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    if (workers == 0) workers = 1;
    workers = std::min(workers, count);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(body);
    for (std::thread& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct InstanceLine {
    std::string id;
    std::uint64_t seed = 0;
    ojson payload;
    Instance instance; // weighted families viewed through to_instance()
    std::optional<WeightedInstance> weighted;
};

inline InstanceLine parse_instance_line(const std::string& line, std::size_t index) {
    InstanceLine parsed;
    const std::string context = "instances line " + std::to_string(index + 1);
    parsed.payload = parse_json(line, context);
    if (!parsed.payload.is_object()) throw ArgumentError(context + ": not a JSON object");
    parsed.id = parsed.payload.contains("id") ? parsed.payload["id"].get<std::string>()
                                              : "line-" + std::to_string(index + 1);
    if (parsed.payload.contains("seed")) parsed.seed = parsed.payload["seed"].get<std::uint64_t>();
    if (json_is_weighted_instance(parsed.payload)) {
        parsed.weighted = weighted_from_json(parsed.payload);
        parsed.instance = parsed.weighted->to_instance();
    } else {
        parsed.instance = instance_from_json(parsed.payload);
    }
    return parsed;
}

} // namespace detail

// ---- generate --------------------------------------------------------------

/// Expands one batch config into JSON-lines instances. Instance k is drawn
/// under the derived seed of (batch seed, k) and gets the deterministic id
/// gen-<seed>-<k>. Returns the whole payload; nothing is written on error.
inline std::string run_generate(const std::string& config_text,
                                std::optional<std::uint64_t> seed_override = std::nullopt) {
    GenBatch batch = gen_batch_from_json(parse_json(config_text, "generator config"));
    if (seed_override) batch.spec.seed = *seed_override;

    std::ostringstream out;
    for (std::size_t k = 0; k < batch.count; ++k) {
        GenSpec spec = batch.spec;
        spec.seed = derive_seed(batch.spec.seed, k);
        const std::string id =
            "gen-" + std::to_string(batch.spec.seed) + "-" + std::to_string(k);
        ojson line;
        if (spec.kind == GenKind::WeightedPairs) {
            const WeightedInstance w = gen_weighted_pairs(spec.n_or_pairs, spec.seed);
            line = ojson{{"id", id}, {"seed", spec.seed}};
            line.update(to_json(w));
        } else {
            Instance inst;
            switch (spec.kind) {
            case GenKind::Antipodal: inst = gen_antipodal(spec.n_or_pairs, spec.seed); break;
            case GenKind::Closure: inst = gen_closure(spec.n_or_pairs, spec.seed, batch.max_retry); break;
            case GenKind::Centered: inst = gen_centered(spec.n_or_pairs, spec.seed); break;
            case GenKind::Sector: inst = gen_sector(spec.n_or_pairs, spec.alpha, spec.seed); break;
            case GenKind::WeightedPairs: break; // handled above
            }
            line = ojson{{"id", id}, {"seed", spec.seed}};
            line.update(to_json(inst));
        }
        out << line.dump() << '\n';
    }
    return out.str();
}

// ---- run -------------------------------------------------------------------

struct RunOptions {
    std::vector<std::string> algorithms = {"sqrt5", "steinitz2", "sector", "weighted"};
    bool oracle = false;
    bool embed_perms = false;
    bool timings = false;
    std::size_t workers = 1;
    std::uint64_t oracle_budget = 20'000'000;
};

namespace detail {

inline std::optional<double> instance_oracle(const Instance& inst, std::uint64_t budget,
                                             std::string* warning) {
    const std::size_t n = inst.size();
    if (n <= 9) return optimal_radius_exhaustive(inst).radius;
    if (n <= 16) {
        const OracleResult r = optimal_radius_bnb(inst, budget);
        if (r.complete) return r.radius;
        if (warning) *warning = "oracle budget exhausted at n = " + std::to_string(n);
        return std::nullopt;
    }
    if (warning) *warning = "n = " + std::to_string(n) + " beyond oracle limits";
    return std::nullopt;
}

inline RunRecord make_skip(const InstanceLine& line, const std::string& tag,
                           const std::string& reason) {
    RunRecord r;
    r.instance_id = line.id;
    r.n = line.instance.size();
    r.algorithm = tag;
    r.skipped = true;
    r.skip_reason = reason;
    r.seed = line.seed;
    return r;
}

} // namespace detail

/// Runs the requested constructions over every instance line and returns
/// the sorted JSON-lines record stream. Oracle warnings (instances beyond
/// exact limits) land in *warnings, one entry per affected instance, in
/// input order.
inline std::string run_records(const std::string& instances_text, const RunOptions& options,
                               std::vector<std::string>* warnings = nullptr) {
    for (const std::string& tag : options.algorithms)
        if (!parse_algorithm(tag)) throw ArgumentError("unknown algorithm tag: " + tag);

    const std::vector<std::string> lines = detail::split_lines(instances_text);
    std::vector<detail::InstanceLine> parsed;
    parsed.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i)
        parsed.push_back(detail::parse_instance_line(lines[i], i));

    std::vector<std::vector<RunRecord>> results(parsed.size());
    std::vector<std::string> oracle_warnings(parsed.size());

    detail::parallel_for(parsed.size(), options.workers, [&](std::size_t i) {
        const detail::InstanceLine& line = parsed[i];
        std::vector<RunRecord>& records = results[i];

        std::optional<double> oracle_radius;
        if (options.oracle)
            oracle_radius =
                detail::instance_oracle(line.instance, options.oracle_budget, &oracle_warnings[i]);

        for (const std::string& tag : options.algorithms) {
            const Algorithm algorithm = *parse_algorithm(tag);
            if (line.weighted && algorithm != Algorithm::Weighted) {
                records.push_back(detail::make_skip(
                    line, tag, "plain-vector construction skipped for weighted instance"));
                continue;
            }
            if (!line.weighted && algorithm == Algorithm::Weighted) {
                records.push_back(detail::make_skip(
                    line, tag, "weighted construction needs a weight/angle instance"));
                continue;
            }

            const auto started = std::chrono::steady_clock::now();
            RearrangeOutcome outcome;
            try {
                switch (algorithm) {
                case Algorithm::Sqrt5: outcome = rearrange_sqrt5(line.instance); break;
                case Algorithm::Steinitz2: outcome = rearrange_steinitz(line.instance); break;
                case Algorithm::Sector: outcome = rearrange_sector(line.instance); break;
                case Algorithm::Weighted: outcome = rearrange_weighted(*line.weighted); break;
                }
            } catch (const ArgumentError& e) {
                throw ArgumentError(line.id + ": " + e.what());
            }
            const auto finished = std::chrono::steady_clock::now();

            RunRecord r;
            r.instance_id = line.id;
            r.n = line.instance.size();
            r.algorithm = tag;
            r.claimed_bound = outcome.claimed_bound;
            r.achieved_radius = outcome.achieved_radius;
            r.bound_satisfied = outcome.achieved_radius <= outcome.claimed_bound + 1e-9;
            r.oracle_radius = oracle_radius;
            r.fallback_flag = outcome.selection_fallback;
            r.seed = line.seed;
            if (options.timings)
                r.runtime_ms =
                    std::chrono::duration<double, std::milli>(finished - started).count();
            if (options.embed_perms) {
                r.perm = outcome.perm;
                r.embedded_instance = line.payload;
            }
            records.push_back(std::move(r));
        }
    });

    if (warnings)
        for (std::size_t i = 0; i < parsed.size(); ++i)
            if (!oracle_warnings[i].empty())
                warnings->push_back(parsed[i].id + ": " + oracle_warnings[i]);

    std::vector<RunRecord> flat;
    for (std::vector<RunRecord>& group : results)
        for (RunRecord& r : group) flat.push_back(std::move(r));
    std::sort(flat.begin(), flat.end(), [](const RunRecord& a, const RunRecord& b) {
        if (a.instance_id != b.instance_id) return a.instance_id < b.instance_id;
        return a.algorithm < b.algorithm;
    });

    std::ostringstream out;
    for (const RunRecord& r : flat) out << to_json(r).dump() << '\n';
    return out.str();
}

// ---- verify and summarize --------------------------------------------------

inline std::vector<RunRecord> parse_records(const std::string& records_text) {
    const std::vector<std::string> lines = detail::split_lines(records_text);
    std::vector<RunRecord> records;
    records.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string context = "records line " + std::to_string(i + 1);
        try {
            records.push_back(record_from_json(parse_json(lines[i], context)));
        } catch (const ArgumentError& e) {
            throw ArgumentError(context + ": " + e.what());
        }
    }
    return records;
}

inline SummaryReport build_summary(const std::vector<RunRecord>& records) {
    SummaryReport summary;
    summary.total_records = records.size();
    std::map<std::string, AlgorithmStats> by_tag;
    for (const RunRecord& r : records) {
        AlgorithmStats& stats = by_tag[r.algorithm];
        stats.algorithm = r.algorithm;
        if (r.skipped) {
            ++stats.skips;
            continue;
        }
        ++stats.runs;
        if (r.fallback_flag) ++stats.fallbacks;
        stats.max_achieved_radius = std::max(stats.max_achieved_radius, r.achieved_radius);
        if (std::isfinite(r.claimed_bound) && r.claimed_bound > 0.0)
            stats.max_ratio = std::max(stats.max_ratio, r.achieved_radius / r.claimed_bound);
        if (!r.bound_satisfied) {
            ++stats.violations;
            stats.violating_ids.push_back(r.instance_id);
        }
        const bool recomputed_flag = r.achieved_radius <= r.claimed_bound + 1e-9;
        if (recomputed_flag != r.bound_satisfied)
            summary.inconsistent_ids.push_back(r.instance_id);
        if (r.embedded_instance && r.perm) ++summary.records_with_embedded;
    }
    for (auto& [tag, stats] : by_tag) summary.per_algorithm.push_back(std::move(stats));
    return summary;
}

struct VerifyOutcome {
    SummaryReport summary;
    bool ok = false;
};

/// Re-derives what the records claim. Internal consistency (the stored
/// bound_satisfied flag) is always checked; achieved_radius is recomputed
/// from scratch for records carrying their instance and permutation.
/// ok demands zero violations, zero inconsistencies, zero mismatches.
inline VerifyOutcome verify_records(const std::vector<RunRecord>& records) {
    VerifyOutcome outcome;
    outcome.summary = build_summary(records);
    outcome.summary.recompute_checked = outcome.summary.records_with_embedded > 0;

    for (const RunRecord& r : records) {
        if (r.skipped || !r.embedded_instance || !r.perm) continue;
        std::vector<Vec2> vectors;
        try {
            if (json_is_weighted_instance(*r.embedded_instance))
                vectors = weighted_from_json(*r.embedded_instance).vectors();
            else
                vectors = instance_from_json(*r.embedded_instance).vectors;
            const double recomputed = partial_sums(vectors, *r.perm).max_modulus;
            if (std::fabs(recomputed - r.achieved_radius) > 1e-9)
                outcome.summary.mismatch_ids.push_back(r.instance_id);
        } catch (const ArgumentError&) {
            outcome.summary.mismatch_ids.push_back(r.instance_id);
        }
    }

    std::uint64_t violations = 0;
    for (const AlgorithmStats& a : outcome.summary.per_algorithm) violations += a.violations;

    std::ostringstream note;
    note << outcome.summary.records_with_embedded << " of " << outcome.summary.total_records
         << " records carry an embedded instance and permutation";
    if (outcome.summary.records_with_embedded < outcome.summary.total_records)
        note << "; the rest were checked for internal consistency only";
    outcome.summary.coverage_note = note.str();

    outcome.ok = violations == 0 && outcome.summary.inconsistent_ids.empty() &&
                 outcome.summary.mismatch_ids.empty();
    return outcome;
}

// ---- CSV export ------------------------------------------------------------

namespace detail {

inline std::string csv_number(double value) { return ojson(value).dump(); }

} // namespace detail

/// Flat rendering of the record fields; empty cells for absent optionals.
inline std::string records_to_csv(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    out << "instance_id,n,algorithm,skipped,claimed_bound,achieved_radius,bound_satisfied,"
           "oracle_radius,fallback_flag,seed,runtime_ms\n";
    for (const RunRecord& r : records) {
        out << r.instance_id << ',' << r.n << ',' << r.algorithm << ','
            << (r.skipped ? "true" : "false") << ',';
        if (!r.skipped) {
            if (std::isinf(r.claimed_bound)) out << "unbounded";
            else out << detail::csv_number(r.claimed_bound);
            out << ',' << detail::csv_number(r.achieved_radius) << ','
                << (r.bound_satisfied ? "true" : "false") << ',';
            if (r.oracle_radius) out << detail::csv_number(*r.oracle_radius);
            out << ',' << (r.fallback_flag ? "true" : "false") << ',' << r.seed << ',';
            if (r.runtime_ms) out << detail::csv_number(*r.runtime_ms);
        } else {
            out << ",,,,," << r.seed << ',';
        }
        out << '\n';
    }
    return out.str();
}

inline std::string history_to_csv(const SearchReport& report) {
    std::ostringstream out;
    out << "iteration,radius\n";
    for (const auto& [iteration, radius] : report.history)
        out << iteration << ',' << detail::csv_number(radius) << '\n';
    return out.str();
}

} // namespace confine
