#include <catch2/catch_amalgamated.hpp>

#include <confine/harness.hpp>

#include <atomic>
#include <cmath>
#include <numbers>

using namespace confine;

namespace {
constexpr double kPi = std::numbers::pi;

const char* kCrossLine =
    R"({"id": "cross", "vectors": [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]], "modulus_cap": 1.0})";

std::string weighted_line() {
    ojson j{{"id", "wpair"}};
    j.update(to_json(WeightedInstance{{0.5, 0.25, 0.25}, {0.0, kPi, kPi}}));
    return j.dump();
}
} // namespace

TEST_CASE("instance json round-trips bit for bit", "[harness]") {
    Instance inst{{Vec2{0.1, -0.2}, Vec2{-0.1, 0.2}}, 0.75};
    auto j = to_json(inst);
    Instance back = instance_from_json(j);
    REQUIRE(back.size() == 2);
    REQUIRE(back.vectors[0].x == 0.1);
    REQUIRE(back.vectors[0].y == -0.2);
    REQUIRE(back.modulus_cap == 0.75);
    REQUIRE(to_json(back).dump() == j.dump());

    REQUIRE_THROWS_AS(instance_from_json(ojson{{"modulus_cap", 1.0}}), ArgumentError);
    REQUIRE_THROWS_AS(vec2_from_json(ojson::array({1.0})), ArgumentError);
    REQUIRE_THROWS_AS(vec2_from_json(ojson::array({"a", "b"})), ArgumentError);
}

TEST_CASE("weighted json round-trips and is recognized", "[harness]") {
    WeightedInstance w{{0.5, 0.5}, {0.0, kPi}};
    auto j = to_json(w);
    REQUIRE(json_is_weighted_instance(j));
    REQUIRE_FALSE(json_is_weighted_instance(to_json(Instance{{}})));
    WeightedInstance back = weighted_from_json(j);
    REQUIRE(back.weights == w.weights);
    REQUIRE(back.angles == w.angles);
}

TEST_CASE("permutation json validates on parse", "[harness]") {
    Permutation p{{2, 0, 1}};
    REQUIRE(permutation_from_json(to_json(p)) == p);
    REQUIRE_THROWS_AS(permutation_from_json(ojson::array({0, 0, 1})), ArgumentError);
}

TEST_CASE("infinite bounds serialize as a sentinel string", "[harness]") {
    REQUIRE(bound_to_json(2.0) == ojson(2.0));
    auto inf = bound_to_json(std::numeric_limits<double>::infinity());
    REQUIRE(inf == ojson("unbounded"));
    REQUIRE(std::isinf(bound_from_json(inf)));
    REQUIRE(bound_from_json(ojson(1.5)) == 1.5);
}

TEST_CASE("run record json keeps every populated field", "[harness]") {
    RunRecord r;
    r.instance_id = "x1";
    r.n = 4;
    r.algorithm = "sqrt5";
    r.claimed_bound = std::sqrt(5.0);
    r.achieved_radius = 1.0;
    r.bound_satisfied = true;
    r.oracle_radius = 1.0;
    r.seed = 99;
    r.perm = Permutation{{1, 3, 0, 2}};
    r.embedded_instance = parse_json(kCrossLine, "test");
    auto j = to_json(r);
    RunRecord back = record_from_json(j);
    REQUIRE(back.instance_id == r.instance_id);
    REQUIRE(back.algorithm == r.algorithm);
    REQUIRE(back.claimed_bound == r.claimed_bound);
    REQUIRE(back.oracle_radius == r.oracle_radius);
    REQUIRE(back.perm == r.perm);
    REQUIRE(to_json(back).dump() == j.dump());

    // skip records carry only the identity fields
    RunRecord skip;
    skip.instance_id = "x2";
    skip.algorithm = "weighted";
    skip.skipped = true;
    skip.skip_reason = "why";
    auto sj = to_json(skip);
    REQUIRE_FALSE(sj.contains("claimed_bound"));
    REQUIRE(record_from_json(sj).skipped);
    REQUIRE(record_from_json(sj).skip_reason == "why");
}

TEST_CASE("generator batch config parses and validates", "[harness]") {
    auto batch = gen_batch_from_json(
        parse_json(R"({"kind": "sector", "n": 8, "alpha": 4.7, "seed": 3, "count": 2})", "t"));
    REQUIRE(batch.spec.kind == GenKind::Sector);
    REQUIRE(batch.spec.n_or_pairs == 8);
    REQUIRE(batch.count == 2);

    auto pairs = gen_batch_from_json(
        parse_json(R"({"kind": "weighted_pairs", "pairs": 5, "seed": 1})", "t"));
    REQUIRE(pairs.spec.n_or_pairs == 5);
    REQUIRE(pairs.count == 1);

    REQUIRE_THROWS_AS(gen_batch_from_json(parse_json(R"({"n": 5})", "t")), ArgumentError);
    REQUIRE_THROWS_AS(gen_batch_from_json(parse_json(R"({"kind": "what", "n": 5})", "t")),
                      ArgumentError);
    REQUIRE_THROWS_AS(gen_batch_from_json(parse_json(R"({"kind": "closure"})", "t")),
                      ArgumentError);
    REQUIRE_THROWS_AS(gen_batch_from_json(parse_json(R"({"kind": "sector", "n": 5})", "t")),
                      ArgumentError);
    REQUIRE_THROWS_AS(
        gen_batch_from_json(parse_json(R"({"kind": "closure", "n": 5, "count": 0})", "t")),
        ArgumentError);
}

TEST_CASE("search config json round-trips", "[harness]") {
    auto cfg = search_config_from_json(parse_json(
        R"({"n": 4, "objective": "oracle", "restarts": 3, "steps_per_restart": 10, "step_scale": 0.5, "seed": 7})",
        "t"));
    REQUIRE(cfg.n == 4);
    REQUIRE_FALSE(cfg.objective_algorithm.has_value());
    auto again = search_config_from_json(to_json(cfg));
    REQUIRE(again.restarts == 3);

    auto algo = search_config_from_json(
        parse_json(R"({"n": 20, "objective": "steinitz2", "seed": 1})", "t"));
    REQUIRE(algo.objective_algorithm == Algorithm::Steinitz2);
    REQUIRE_THROWS_AS(
        search_config_from_json(parse_json(R"({"n": 4, "objective": "magic"})", "t")),
        ArgumentError);
}

TEST_CASE("generate expands a batch with derived seeds and stable ids", "[harness]") {
    const std::string config = R"({"kind": "antipodal", "pairs": 2, "seed": 5, "count": 3})";
    std::string out = run_generate(config);
    REQUIRE(out == run_generate(config)); // byte determinism
    auto lines = detail::split_lines(out);
    REQUIRE(lines.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        auto line = detail::parse_instance_line(lines[k], k);
        REQUIRE(line.id == "gen-5-" + std::to_string(k));
        REQUIRE(line.seed == derive_seed(5, k));
        REQUIRE(line.instance.size() == 4);
        REQUIRE(validate(line.instance).ok());
    }
    // the seed override rewrites the batch seed and therefore the ids
    std::string other = run_generate(config, 6);
    REQUIRE(other.find("gen-6-0") != std::string::npos);

    // weighted batches emit weight/angle lines
    std::string wp = run_generate(R"({"kind": "weighted_pairs", "pairs": 2, "seed": 1})");
    auto wline = detail::parse_instance_line(detail::split_lines(wp)[0], 0);
    REQUIRE(wline.weighted.has_value());
}

TEST_CASE("generate propagates generation failures without output", "[harness]") {
    // find a batch seed whose first derived closure draw needs a retry
    std::uint64_t bad_batch = 0;
    bool found = false;
    for (std::uint64_t b = 0; b < 200 && !found; ++b) {
        try {
            gen_closure(3, derive_seed(b, 0), 0);
        } catch (const GenerationError&) {
            bad_batch = b;
            found = true;
        }
    }
    REQUIRE(found);
    ojson config{{"kind", "closure"}, {"n", 3}, {"seed", bad_batch},
                 {"count", 1},        {"max_retry", 0}};
    REQUIRE_THROWS_AS(run_generate(config.dump()), GenerationError);
}

TEST_CASE("run emits one sorted record per instance and algorithm", "[harness]") {
    RunOptions options;
    options.oracle = true;
    std::string out = run_records(std::string(kCrossLine) + "\n", options);
    auto records = parse_records(out);
    REQUIRE(records.size() == 4);
    // sorted by (instance_id, algorithm); all share one instance here
    REQUIRE(records[0].algorithm == "sector");
    REQUIRE(records[1].algorithm == "sqrt5");
    REQUIRE(records[2].algorithm == "steinitz2");
    REQUIRE(records[3].algorithm == "weighted");

    for (const auto& r : records) {
        REQUIRE(r.instance_id == "cross");
        if (r.algorithm == "weighted") {
            REQUIRE(r.skipped);
            REQUIRE_FALSE(r.skip_reason.empty());
            REQUIRE_FALSE(r.oracle_radius.has_value());
        } else {
            REQUIRE_FALSE(r.skipped);
            REQUIRE(r.achieved_radius == 1.0);
            REQUIRE(r.bound_satisfied);
            REQUIRE(r.oracle_radius == 1.0);
            REQUIRE_FALSE(r.runtime_ms.has_value()); // timings were off
            REQUIRE_FALSE(r.perm.has_value());       // embedding was off
        }
    }

    REQUIRE(run_records("", options).empty());

    RunOptions bogus;
    bogus.algorithms = {"sqrt5", "mystery"};
    REQUIRE_THROWS_AS(run_records(std::string(kCrossLine) + "\n", bogus), ArgumentError);
    REQUIRE_THROWS_WITH(run_records("{not json}\n", options),
                        Catch::Matchers::ContainsSubstring("line 1"));
}

TEST_CASE("weighted lines run the weighted construction and skip the rest", "[harness]") {
    RunOptions options;
    std::string out = run_records(weighted_line() + "\n", options);
    auto records = parse_records(out);
    REQUIRE(records.size() == 4);
    for (const auto& r : records) {
        if (r.algorithm == "weighted") {
            REQUIRE_FALSE(r.skipped);
            REQUIRE(r.achieved_radius == 0.25);
            REQUIRE(r.claimed_bound == 1.0);
        } else {
            REQUIRE(r.skipped);
        }
    }
}

TEST_CASE("worker count cannot change the output bytes", "[harness]") {
    std::string instances =
        run_generate(R"({"kind": "centered", "n": 9, "seed": 12, "count": 12})");
    RunOptions serial;
    serial.oracle = true;
    RunOptions pooled = serial;
    pooled.workers = 4;
    REQUIRE(run_records(instances, serial) == run_records(instances, pooled));
}

TEST_CASE("oracle warnings surface for oversized instances", "[harness]") {
    std::string instances =
        run_generate(R"({"kind": "centered", "n": 20, "seed": 4, "count": 1})");
    RunOptions options;
    options.oracle = true;
    std::vector<std::string> warnings;
    std::string out = run_records(instances, options, &warnings);
    REQUIRE(warnings.size() == 1);
    REQUIRE_FALSE(parse_records(out)[0].oracle_radius.has_value());
}

TEST_CASE("verify confirms embedded records and catches corruption", "[harness]") {
    RunOptions options;
    options.embed_perms = true;
    std::string instances = std::string(kCrossLine) + "\n" +
                            run_generate(R"({"kind": "closure", "n": 6, "seed": 8, "count": 4})");
    auto records = parse_records(run_records(instances, options));
    auto outcome = verify_records(records);
    REQUIRE(outcome.ok);
    REQUIRE(outcome.summary.recompute_checked);
    REQUIRE(outcome.summary.mismatch_ids.empty());
    REQUIRE(outcome.summary.inconsistent_ids.empty());
    // every non-skip record carried its instance
    std::size_t skips = 0;
    for (const auto& r : records) skips += r.skipped ? 1 : 0;
    REQUIRE(outcome.summary.records_with_embedded == records.size() - skips);

    // silently corrupt one achieved radius: recompute must catch it
    auto corrupted = records;
    for (auto& r : corrupted)
        if (!r.skipped && r.instance_id == "cross" && r.algorithm == "sqrt5")
            r.achieved_radius += 0.125;
    auto bad = verify_records(corrupted);
    REQUIRE_FALSE(bad.ok);
    REQUIRE(std::find(bad.summary.mismatch_ids.begin(), bad.summary.mismatch_ids.end(),
                      "cross") != bad.summary.mismatch_ids.end());

    // flip a stored flag: internal consistency must catch it
    corrupted = records;
    for (auto& r : corrupted)
        if (!r.skipped && r.instance_id == "cross" && r.algorithm == "steinitz2")
            r.bound_satisfied = false;
    bad = verify_records(corrupted);
    REQUIRE_FALSE(bad.ok);
    REQUIRE_FALSE(bad.summary.inconsistent_ids.empty());
}

TEST_CASE("verify without embeds only checks internal consistency", "[harness]") {
    RunOptions options;
    auto records = parse_records(run_records(std::string(kCrossLine) + "\n", options));
    auto outcome = verify_records(records);
    REQUIRE(outcome.ok);
    REQUIRE_FALSE(outcome.summary.recompute_checked);
    REQUIRE(outcome.summary.coverage_note.find("internal consistency") != std::string::npos);
}

TEST_CASE("summary aggregates per algorithm", "[harness]") {
    RunOptions options;
    std::string instances = std::string(kCrossLine) + "\n" + weighted_line() + "\n";
    auto records = parse_records(run_records(instances, options));
    auto summary = build_summary(records);
    REQUIRE(summary.total_records == 8);
    REQUIRE(summary.per_algorithm.size() == 4);
    for (const auto& stats : summary.per_algorithm) {
        REQUIRE(stats.runs == 1);
        REQUIRE(stats.skips == 1);
        REQUIRE(stats.violations == 0);
    }

    // a fabricated violation is counted and listed
    RunRecord fake;
    fake.instance_id = "bad";
    fake.algorithm = "steinitz2";
    fake.claimed_bound = 2.0;
    fake.achieved_radius = 5.0;
    fake.bound_satisfied = false;
    records.push_back(fake);
    summary = build_summary(records);
    for (const auto& stats : summary.per_algorithm)
        if (stats.algorithm == "steinitz2") {
            REQUIRE(stats.violations == 1);
            REQUIRE(stats.violating_ids == std::vector<std::string>{"bad"});
            REQUIRE(stats.max_ratio == 2.5);
        }
    REQUIRE(summary.inconsistent_ids.empty()); // flag matches the stored numbers

    auto j = to_json(summary);
    REQUIRE(j.contains("sector_constant_note"));
    REQUIRE(j["sector_constant_note"]["width_pi"]["formula"] == 1.0);
    REQUIRE(j["sector_constant_note"]["width_pi"]["stated_special_case"] == 2.0);
    REQUIRE(j["sector_constant_note"]["width_2pi_over_3"]["formula"] == 1.1547005383792517);
    REQUIRE(j["sector_constant_note"]["width_2pi_over_3"]["stated_special_case"] ==
            std::sqrt(3.0));
}

TEST_CASE("csv export renders records flat", "[harness]") {
    RunRecord run;
    run.instance_id = "a";
    run.n = 2;
    run.algorithm = "sector";
    run.claimed_bound = std::numeric_limits<double>::infinity();
    run.achieved_radius = 0.5;
    run.seed = 3;
    RunRecord skip;
    skip.instance_id = "b";
    skip.algorithm = "weighted";
    skip.skipped = true;
    skip.seed = 4;
    std::string csv = records_to_csv({run, skip});
    auto lines = detail::split_lines(csv);
    REQUIRE(lines.size() == 3);
    REQUIRE(lines[0] ==
            "instance_id,n,algorithm,skipped,claimed_bound,achieved_radius,bound_satisfied,"
            "oracle_radius,fallback_flag,seed,runtime_ms");
    REQUIRE(lines[1] == "a,2,sector,false,unbounded,0.5,true,,false,3,");
    REQUIRE(lines[2] == "b,0,weighted,true,,,,,,4,");
}

TEST_CASE("history csv is iteration and radius pairs", "[harness]") {
    SearchReport report;
    report.history = {{0, 0.25}, {7, 0.5}};
    REQUIRE(history_to_csv(report) == "iteration,radius\n0,0.25\n7,0.5\n");
}

TEST_CASE("parallel for propagates the first exception", "[harness]") {
    std::atomic<int> ran{0};
    REQUIRE_THROWS_AS(detail::parallel_for(8, 3,
                                           [&](std::size_t i) {
                                               ran.fetch_add(1);
                                               if (i == 3) throw ArgumentError("boom");
                                           }),
                      ArgumentError);
    REQUIRE(ran.load() >= 1);

    // zero items is a no-op regardless of worker count
    REQUIRE_NOTHROW(detail::parallel_for(0, 4, [&](std::size_t) { ran.fetch_add(1); }));
}
