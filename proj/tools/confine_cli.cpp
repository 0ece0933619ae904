// Command-line harness: generate instances, run the constructions, verify
// and summarize record streams, and mine adversarial instances.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or config error,
// 3 I/O error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <confine/confine.hpp>

namespace {

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    confine::write_file(out_path, content);
}

struct CliOptions {
    std::string input;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> algorithms = {"sqrt5", "steinitz2", "sector", "weighted"};
    bool oracle = false;
    bool embed_perms = false;
    bool timings = false;
    std::size_t workers = 1;
    std::string csv;
    std::string history_csv;
};

int run_generate(const CliOptions& opt) {
    const std::string config = confine::read_file(opt.input);
    emit(opt.out, confine::run_generate(config, opt.seed));
    return 0;
}

int run_run(const CliOptions& opt) {
    confine::RunOptions options;
    options.algorithms = opt.algorithms;
    options.oracle = opt.oracle;
    options.embed_perms = opt.embed_perms;
    options.timings = opt.timings;
    options.workers = opt.workers;

    const std::string instances = confine::read_file(opt.input);
    std::vector<std::string> warnings;
    const std::string records = confine::run_records(instances, options, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
    emit(opt.out, records);
    return 0;
}

int run_verify(const CliOptions& opt) {
    const auto records = confine::parse_records(confine::read_file(opt.input));
    const confine::VerifyOutcome outcome = confine::verify_records(records);
    emit(opt.out, confine::to_json(outcome.summary).dump(2) + "\n");
    return outcome.ok ? 0 : 1;
}

int run_search(const CliOptions& opt) {
    confine::SearchConfig config = confine::search_config_from_json(
        confine::parse_json(confine::read_file(opt.input), "search config"));
    if (opt.seed) config.seed = *opt.seed;
    const confine::SearchReport report = confine::adversarial_search(config);
    emit(opt.out, confine::to_json(report).dump(2) + "\n");
    if (!opt.history_csv.empty())
        confine::write_file(opt.history_csv, confine::history_to_csv(report));
    return 0;
}

int run_summarize(const CliOptions& opt) {
    const auto records = confine::parse_records(confine::read_file(opt.input));
    confine::SummaryReport summary = confine::build_summary(records);
    std::ostringstream note;
    note << summary.records_with_embedded << " of " << summary.total_records
         << " records carry an embedded instance and permutation";
    summary.coverage_note = note.str();
    emit(opt.out, confine::to_json(summary).dump(2) + "\n");
    if (!opt.csv.empty()) confine::write_file(opt.csv, confine::records_to_csv(records));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"confinement rearrangement harness"};
    app.require_subcommand(1);

    CliOptions opt;

    CLI::App* generate = app.add_subcommand("generate", "expand a generator config into instances");
    generate->add_option("config", opt.input, "generator config JSON file")->required();
    generate->add_option("--seed", opt.seed, "override the config seed");
    generate->add_option("--out", opt.out, "output path (default stdout)");

    CLI::App* run = app.add_subcommand("run", "run constructions over a JSON-lines instance file");
    run->add_option("instances", opt.input, "instances JSON-lines file")->required();
    run->add_option("--algorithms", opt.algorithms,
                    "comma-separated tags: sqrt5,steinitz2,sector,weighted")
        ->delimiter(',');
    run->add_flag("--oracle", opt.oracle, "attach the exact optimal radius where feasible");
    run->add_flag("--embed-perms", opt.embed_perms,
                  "embed instance and permutation in each record for re-verification");
    run->add_flag("--timings", opt.timings,
                  "record per-run wall time (makes output non-reproducible)");
    run->add_option("--workers", opt.workers, "worker threads (default 1)");
    run->add_option("--out", opt.out, "output path (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "re-check a record stream");
    verify->add_option("records", opt.input, "records JSON-lines file")->required();
    verify->add_option("--out", opt.out, "summary output path (default stdout)");

    CLI::App* search = app.add_subcommand("search", "adversarial instance mining");
    search->add_option("config", opt.input, "search config JSON file")->required();
    search->add_option("--seed", opt.seed, "override the config seed");
    search->add_option("--out", opt.out, "report output path (default stdout)");
    search->add_option("--history-csv", opt.history_csv, "write improvement history as CSV");

    CLI::App* summarize = app.add_subcommand("summarize", "aggregate a record stream");
    summarize->add_option("records", opt.input, "records JSON-lines file")->required();
    summarize->add_option("--out", opt.out, "summary output path (default stdout)");
    summarize->add_option("--csv", opt.csv, "also export the records as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (generate->parsed()) return run_generate(opt);
        if (run->parsed()) return run_run(opt);
        if (verify->parsed()) return run_verify(opt);
        if (search->parsed()) return run_search(opt);
        if (summarize->parsed()) return run_summarize(opt);
        return 2;
    } catch (const confine::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
