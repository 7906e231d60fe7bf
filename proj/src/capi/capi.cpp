// extern-C shim over the C++ core. Exceptions stop here: each entry point
// converts them to a status code and stashes the message in a
// thread-local slot for sa_last_error().

#include "sparsealign/sparsealign.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "core/align_metric.hpp"
#include "core/eval_data.hpp"
#include "core/human_rank.hpp"
#include "core/rng.hpp"
#include "core/serialize.hpp"
#include "core/sim_judges.hpp"
#include "core/tie_break.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

sa_status to_status(const std::exception& e) {
    set_error(e.what());
    if (dynamic_cast<const sparsealign::ParseError*>(&e)) return SA_ERR_PARSE;
    if (dynamic_cast<const sparsealign::ValidationError*>(&e)) {
        return SA_ERR_VALIDATION;
    }
    if (dynamic_cast<const sparsealign::ConfigError*>(&e)) return SA_ERR_CONFIG;
    return SA_ERR_VALIDATION;
}

template <typename Fn>
sa_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return SA_OK;
    } catch (const std::exception& e) {
        return to_status(e);
    } catch (...) {
        set_error("unknown error");
        return SA_ERR_VALIDATION;
    }
}

sa_status invalid_argument(const char* what) {
    set_error(std::string("invalid argument: ") + what);
    return SA_ERR_INVALID_ARGUMENT;
}

sparsealign::ScoreScale scale_of(const sa_config& config) {
    return {config.scale_min, config.scale_max};
}

sparsealign::RankOptions rank_options(const sa_config& config) {
    sparsealign::RankOptions options;
    options.estimator = config.std_estimator == SA_STD_POPULATION
                            ? sparsealign::StdEstimator::Population
                            : sparsealign::StdEstimator::Sample;
    options.delta_factor = config.delta_factor;
    options.boundary = config.boundary == SA_BOUNDARY_LT
                           ? sparsealign::Boundary::Lt
                           : sparsealign::Boundary::Lte;
    return options;
}

sparsealign::AlignOptions align_options(const sa_config& config) {
    const sparsealign::RankOptions rank = rank_options(config);
    sparsealign::AlignOptions options;
    options.alpha = config.alpha;
    options.judge_rank.estimator = rank.estimator;
    options.judge_rank.delta_factor = rank.delta_factor;
    options.judge_rank.boundary = rank.boundary;
    options.judge_rank.strict_order = config.judge_strict_order != 0;
    return options;
}

char* copy_string(const std::string& s) {
    char* out = new (std::nothrow) char[s.size() + 1];
    if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

struct sa_human_table {
    sparsealign::HumanEvalTable table;
};

struct sa_judge_table {
    sparsealign::JudgeScoreTable table;
};

struct sa_ranking {
    sparsealign::HumanRanking ranking;
};

struct sa_report {
    sparsealign::AlignmentReport report;
};

extern "C" {

const char* sa_version(void) { return "1.0.0"; }

const char* sa_rng_algorithm(void) { return sparsealign::Rng::algorithm(); }

const char* sa_last_error(void) { return g_last_error.c_str(); }

void sa_config_default(sa_config* config) {
    if (config == nullptr) return;
    config->scale_min = 1;
    config->scale_max = 7;
    config->alpha = 0.5;
    config->delta_factor = 1.0 / 6.0;
    config->std_estimator = SA_STD_SAMPLE;
    config->boundary = SA_BOUNDARY_LTE;
    config->judge_strict_order = 0;
    config->fraction = 0.10;
    config->seed = 0;
}

sa_status sa_human_table_parse(const char* data, size_t size,
                               const sa_config* config, sa_human_table** out) {
    if (data == nullptr || config == nullptr || out == nullptr) {
        return invalid_argument("sa_human_table_parse");
    }
    return guarded([&] {
        auto table = sparsealign::HumanEvalTable::parse_csv(
            std::string_view(data, size), scale_of(*config));
        *out = new sa_human_table{std::move(table)};
    });
}

void sa_human_table_free(sa_human_table* table) { delete table; }

size_t sa_human_table_records(const sa_human_table* table) {
    return table == nullptr ? 0 : table->table.records().size();
}

size_t sa_human_table_models(const sa_human_table* table) {
    return table == nullptr ? 0 : table->table.models().size();
}

sa_status sa_human_table_to_csv(const sa_human_table* table, char** out) {
    if (table == nullptr || out == nullptr) {
        return invalid_argument("sa_human_table_to_csv");
    }
    return guarded([&] { *out = copy_string(table->table.to_csv()); });
}

sa_status sa_judge_table_parse(const char* data, size_t size,
                               const sa_config* config, sa_judge_table** out) {
    if (data == nullptr || config == nullptr || out == nullptr) {
        return invalid_argument("sa_judge_table_parse");
    }
    return guarded([&] {
        auto table = sparsealign::JudgeScoreTable::parse_csv(
            std::string_view(data, size), scale_of(*config));
        *out = new sa_judge_table{std::move(table)};
    });
}

void sa_judge_table_free(sa_judge_table* table) { delete table; }

const char* sa_judge_table_id(const sa_judge_table* table) {
    return table == nullptr ? "" : table->table.judge_id().c_str();
}

size_t sa_judge_table_records(const sa_judge_table* table) {
    return table == nullptr ? 0 : table->table.records().size();
}

sa_status sa_judge_table_to_csv(const sa_judge_table* table, char** out) {
    if (table == nullptr || out == nullptr) {
        return invalid_argument("sa_judge_table_to_csv");
    }
    return guarded([&] { *out = copy_string(table->table.to_csv()); });
}

sa_status sa_validate_coverage(const sa_human_table* human,
                               const sa_judge_table* judge) {
    if (human == nullptr || judge == nullptr) {
        return invalid_argument("sa_validate_coverage");
    }
    return guarded([&] { sparsealign::validate_coverage(human->table, judge->table); });
}

sa_status sa_human_rank(const sa_human_table* human, const sa_config* config,
                        sa_ranking** out) {
    if (human == nullptr || config == nullptr || out == nullptr) {
        return invalid_argument("sa_human_rank");
    }
    return guarded([&] {
        *out = new sa_ranking{
            sparsealign::human_rank(human->table, rank_options(*config))};
    });
}

void sa_ranking_free(sa_ranking* ranking) { delete ranking; }

double sa_ranking_delta(const sa_ranking* ranking) {
    return ranking == nullptr ? 0.0 : ranking->ranking.delta();
}

sa_status sa_ranking_to_json(const sa_ranking* ranking, char** out) {
    if (ranking == nullptr || out == nullptr) {
        return invalid_argument("sa_ranking_to_json");
    }
    return guarded([&] { *out = copy_string(sparsealign::to_json(ranking->ranking)); });
}

sa_status sa_ranking_to_markdown(const sa_ranking* ranking, char** out) {
    if (ranking == nullptr || out == nullptr) {
        return invalid_argument("sa_ranking_to_markdown");
    }
    return guarded(
        [&] { *out = copy_string(sparsealign::to_markdown(ranking->ranking)); });
}

sa_status sa_evaluate_judge(const sa_ranking* ranking, const sa_human_table* human,
                            const sa_judge_table* judge, const sa_config* config,
                            sa_report** out) {
    if (ranking == nullptr || human == nullptr || judge == nullptr ||
        config == nullptr || out == nullptr) {
        return invalid_argument("sa_evaluate_judge");
    }
    return guarded([&] {
        sparsealign::validate_coverage(human->table, judge->table);
        *out = new sa_report{sparsealign::evaluate_judge(
            ranking->ranking, judge->table, align_options(*config))};
    });
}

void sa_report_free(sa_report* report) { delete report; }

const char* sa_report_judge_id(const sa_report* report) {
    return report == nullptr ? "" : report->report.judge_id.c_str();
}

double sa_report_eps_rank(const sa_report* report) {
    return report == nullptr ? 0.0 : report->report.eps_rank;
}

double sa_report_eps_score(const sa_report* report) {
    return report == nullptr ? 0.0 : report->report.eps_score;
}

double sa_report_eps_total(const sa_report* report) {
    return report == nullptr ? 0.0 : report->report.eps_total;
}

double sa_report_align_score(const sa_report* report) {
    return report == nullptr ? 0.0 : report->report.align_score;
}

namespace {

sa_status serialize_reports(const sa_report* const* reports, size_t count, char** out,
                            std::string (*emit)(const std::vector<sparsealign::AlignmentReport>&)) {
    if (reports == nullptr || out == nullptr) {
        return invalid_argument("report serialization");
    }
    return guarded([&] {
        std::vector<sparsealign::AlignmentReport> list;
        list.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            if (reports[i] == nullptr) {
                throw sparsealign::ValidationError("null report in list");
            }
            list.push_back(reports[i]->report);
        }
        *out = copy_string(emit(list));
    });
}

} // namespace

sa_status sa_reports_to_json(const sa_report* const* reports, size_t count,
                             char** out) {
    return serialize_reports(reports, count, out, &sparsealign::to_json);
}

sa_status sa_reports_to_markdown(const sa_report* const* reports, size_t count,
                                 char** out) {
    return serialize_reports(reports, count, out, &sparsealign::to_markdown);
}

sa_status sa_reports_to_csv(const sa_report* const* reports, size_t count,
                            char** out) {
    return serialize_reports(reports, count, out, &sparsealign::to_csv);
}

sa_status sa_simulate_random(const sa_human_table* human, const sa_config* config,
                             sa_judge_table** out) {
    if (human == nullptr || config == nullptr || out == nullptr) {
        return invalid_argument("sa_simulate_random");
    }
    return guarded([&] {
        *out = new sa_judge_table{sparsealign::random_judge(
            human->table.universe(), scale_of(*config), config->seed)};
    });
}

sa_status sa_simulate_human_close(const sa_human_table* human,
                                  const sa_config* config, sa_judge_table** out) {
    if (human == nullptr || config == nullptr || out == nullptr) {
        return invalid_argument("sa_simulate_human_close");
    }
    return guarded([&] {
        const sparsealign::SimConfig sim(config->seed, config->fraction,
                                         human->table.scale());
        *out = new sa_judge_table{sparsealign::human_close_judge(human->table, sim)};
    });
}

void sa_string_free(char* s) { delete[] s; }

} // extern "C"
