// sparsealign — consensus ranking and judge-alignment CLI.
//
// Subcommands:
//   rank      derive the consensus ranking from a human eval CSV
//   align     score one or more judge CSVs against the consensus ranking
//   simulate  emit a baseline judge CSV (random | human_close)
//
// Data goes to stdout (or --out), diagnostics to stderr. Exit code 0 iff
// no errors. Links only the public C API of libsparsealign.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparsealign/sparsealign.h"

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(const std::string& message) { throw CliError(message); }

[[noreturn]] void fail_api(const std::string& context) {
    fail(context + ": " + sa_last_error());
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& data, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail("cannot open output file: " + out_path);
    out << data;
    if (!out) fail("write failed: " + out_path);
}

// RAII for C API strings and handles.
using ApiString = std::unique_ptr<char, decltype(&sa_string_free)>;
using HumanTable = std::unique_ptr<sa_human_table, decltype(&sa_human_table_free)>;
using JudgeTable = std::unique_ptr<sa_judge_table, decltype(&sa_judge_table_free)>;
using Ranking = std::unique_ptr<sa_ranking, decltype(&sa_ranking_free)>;
using Report = std::unique_ptr<sa_report, decltype(&sa_report_free)>;

struct Options {
    std::string human_path;
    std::vector<std::string> judge_paths;
    std::string scale = "1:7";
    double alpha = 0.5;
    std::string std_estimator = "sample";
    double delta_factor = 1.0 / 6.0;
    std::string boundary = "lte";
    double fraction = 0.10;
    std::optional<unsigned long long> seed;
    std::string format = "json";
    std::string out_path;
    bool judge_strict = false;
    std::string sim_kind;
};

sa_config build_config(const Options& options) {
    sa_config config;
    sa_config_default(&config);

    const auto colon = options.scale.find(':');
    bool scale_ok = colon != std::string::npos;
    if (scale_ok) {
        try {
            std::size_t used = 0;
            config.scale_min = std::stoi(options.scale.substr(0, colon), &used);
            scale_ok = used == colon;
            const std::string hi = options.scale.substr(colon + 1);
            config.scale_max = std::stoi(hi, &used);
            scale_ok = scale_ok && used == hi.size();
        } catch (const std::exception&) {
            scale_ok = false;
        }
    }
    if (!scale_ok) fail("bad --scale, expected MIN:MAX: " + options.scale);
    if (config.scale_min >= config.scale_max) fail("scale min must be < max");

    if (options.alpha < 0.0 || options.alpha > 1.0) fail("--alpha must be in [0, 1]");
    config.alpha = options.alpha;

    if (options.std_estimator == "sample") {
        config.std_estimator = SA_STD_SAMPLE;
    } else if (options.std_estimator == "population") {
        config.std_estimator = SA_STD_POPULATION;
    } else {
        fail("--std-estimator must be sample or population");
    }

    if (options.delta_factor < 0.0) fail("--delta-factor must be >= 0");
    config.delta_factor = options.delta_factor;

    if (options.boundary == "lte") {
        config.boundary = SA_BOUNDARY_LTE;
    } else if (options.boundary == "lt") {
        config.boundary = SA_BOUNDARY_LT;
    } else {
        fail("--boundary must be lte or lt");
    }

    if (options.fraction < 0.0 || options.fraction > 1.0) {
        fail("--fraction must be in [0, 1]");
    }
    config.fraction = options.fraction;

    config.judge_strict_order = options.judge_strict ? 1 : 0;

    if (options.seed.has_value()) {
        config.seed = *options.seed;
    } else if (const char* env = std::getenv("SPARSEALIGN_SEED")) {
        try {
            std::size_t used = 0;
            const std::string value(env);
            config.seed = std::stoull(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            fail(std::string("bad SPARSEALIGN_SEED value: ") + env);
        }
    }
    return config;
}

HumanTable load_human(const Options& options, const sa_config& config) {
    const std::string data = read_input(options.human_path);
    sa_human_table* raw = nullptr;
    if (sa_human_table_parse(data.data(), data.size(), &config, &raw) != SA_OK) {
        fail_api(options.human_path);
    }
    return {raw, &sa_human_table_free};
}

int cmd_rank(const Options& options) {
    const sa_config config = build_config(options);
    const HumanTable human = load_human(options, config);

    sa_ranking* raw = nullptr;
    if (sa_human_rank(human.get(), &config, &raw) != SA_OK) fail_api("rank");
    const Ranking ranking(raw, &sa_ranking_free);

    char* text = nullptr;
    sa_status status;
    if (options.format == "json") {
        status = sa_ranking_to_json(ranking.get(), &text);
    } else if (options.format == "markdown") {
        status = sa_ranking_to_markdown(ranking.get(), &text);
    } else {
        fail("--format must be json or markdown");
    }
    if (status != SA_OK) fail_api("serialize");
    const ApiString owned(text, &sa_string_free);
    write_output(std::string(owned.get()) + "\n", options.out_path);
    return 0;
}

int cmd_align(const Options& options) {
    if (options.judge_paths.empty()) fail("align requires at least one --judge");
    const sa_config config = build_config(options);
    const HumanTable human = load_human(options, config);

    sa_ranking* raw_ranking = nullptr;
    if (sa_human_rank(human.get(), &config, &raw_ranking) != SA_OK) fail_api("rank");
    const Ranking ranking(raw_ranking, &sa_ranking_free);

    std::vector<Report> reports;
    bool any_failed = false;
    for (const std::string& path : options.judge_paths) {
        try {
            const std::string data = read_input(path);
            sa_judge_table* raw_judge = nullptr;
            if (sa_judge_table_parse(data.data(), data.size(), &config, &raw_judge) !=
                SA_OK) {
                fail_api(path);
            }
            const JudgeTable judge(raw_judge, &sa_judge_table_free);
            sa_report* raw_report = nullptr;
            if (sa_evaluate_judge(ranking.get(), human.get(), judge.get(), &config,
                                  &raw_report) != SA_OK) {
                fail_api(path);
            }
            reports.emplace_back(raw_report, &sa_report_free);
        } catch (const CliError& e) {
            // Report this judge's failure and keep going with the rest.
            std::cerr << "sparsealign: " << e.what() << "\n";
            any_failed = true;
        }
    }

    std::vector<const sa_report*> raw;
    raw.reserve(reports.size());
    for (const Report& r : reports) raw.push_back(r.get());

    char* text = nullptr;
    sa_status status;
    if (options.format == "json") {
        status = sa_reports_to_json(raw.data(), raw.size(), &text);
    } else if (options.format == "markdown") {
        status = sa_reports_to_markdown(raw.data(), raw.size(), &text);
    } else if (options.format == "csv") {
        status = sa_reports_to_csv(raw.data(), raw.size(), &text);
    } else {
        fail("--format must be json, markdown, or csv");
    }
    if (status != SA_OK) fail_api("serialize");
    const ApiString owned(text, &sa_string_free);
    std::string body(owned.get());
    if (options.format == "json") body += "\n";
    write_output(body, options.out_path);
    return any_failed ? 1 : 0;
}

int cmd_simulate(const Options& options) {
    const sa_config config = build_config(options);
    const HumanTable human = load_human(options, config);

    sa_judge_table* raw = nullptr;
    sa_status status;
    if (options.sim_kind == "random") {
        status = sa_simulate_random(human.get(), &config, &raw);
    } else if (options.sim_kind == "human_close") {
        status = sa_simulate_human_close(human.get(), &config, &raw);
    } else {
        fail("unknown simulate kind: " + options.sim_kind +
             " (expected random or human_close)");
    }
    if (status != SA_OK) fail_api("simulate");
    const JudgeTable judge(raw, &sa_judge_table_free);

    char* text = nullptr;
    if (sa_judge_table_to_csv(judge.get(), &text) != SA_OK) fail_api("serialize");
    const ApiString owned(text, &sa_string_free);
    write_output(owned.get(), options.out_path);
    return 0;
}

void add_common_flags(CLI::App* cmd, Options& options, bool with_alpha) {
    cmd->add_option("--scale", options.scale, "score scale as MIN:MAX")
        ->default_val("1:7");
    cmd->add_option("--std-estimator", options.std_estimator,
                    "sample | population");
    cmd->add_option("--delta-factor", options.delta_factor,
                    "tie threshold = factor * median std");
    cmd->add_option("--boundary", options.boundary, "tie boundary: lte | lt");
    if (with_alpha) {
        cmd->add_option("--alpha", options.alpha,
                        "rank-vs-score blend weight in [0, 1]");
    }
    cmd->add_option("--out", options.out_path, "write output here instead of stdout");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"consensus ranking from sparse human evals and judge alignment "
                 "scoring"};
    app.require_subcommand(1);
    Options options;

    CLI::App* rank = app.add_subcommand("rank", "derive the consensus ranking");
    rank->add_option("--human", options.human_path, "human eval CSV ('-' for stdin)")
        ->required();
    add_common_flags(rank, options, false);
    rank->add_option("--format", options.format, "json | markdown");

    CLI::App* align = app.add_subcommand("align", "score judges against the ranking");
    align->add_option("--human", options.human_path, "human eval CSV ('-' for stdin)")
        ->required();
    align->add_option("--judge", options.judge_paths,
                      "judge CSV, repeatable ('-' for stdin)");
    add_common_flags(align, options, true);
    align->add_flag("--judge-strict-order", options.judge_strict,
                    "rank judges without tie groups");
    align->add_option("--format", options.format, "json | markdown | csv");

    CLI::App* simulate = app.add_subcommand("simulate", "emit a baseline judge CSV");
    simulate->add_option("kind", options.sim_kind, "random | human_close")->required();
    simulate->add_option("--human", options.human_path,
                         "human eval CSV ('-' for stdin)")
        ->required();
    simulate->add_option("--fraction", options.fraction,
                         "human_close perturbation share in [0, 1]");
    simulate->add_option("--seed", options.seed,
                         "RNG seed (SPARSEALIGN_SEED is the fallback)");
    add_common_flags(simulate, options, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (rank->parsed()) return cmd_rank(options);
        if (align->parsed()) return cmd_align(options);
        return cmd_simulate(options);
    } catch (const CliError& e) {
        std::cerr << "sparsealign: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "sparsealign: internal error: " << e.what() << "\n";
        return 1;
    }
}
