#pragma once

// Judge-side ranking derivation and the alignment metric: a
// confidence-weighted rank disagreement (a weighted Kendall-tau variant),
// a normalized score error, and their alpha blend.

#include <map>
#include <string>
#include <vector>

#include "eval_data.hpp"
#include "human_rank.hpp"
#include "tie_break.hpp"

namespace sparsealign {

struct JudgeRankOptions {
    StdEstimator estimator = StdEstimator::Sample;
    double delta_factor = 1.0 / 6.0;
    Boundary boundary = Boundary::Lte;
    // When set, skip clustering: every model is its own rank group, ordered
    // by mean descending then id. Meant for sensitivity analysis.
    bool strict_order = false;
};

// Rank groups over models derived from the judge's per-model means. A
// single judge cannot vote against itself, so within-group ties stand.
struct JudgeRanking {
    std::string judge_id;
    std::vector<std::vector<std::string>> order;
    std::map<std::string, double> means; // model id -> judge mean
    double delta = 0.0;                  // the judge's own tie threshold
};

// Per-pair audit entry of the rank disagreement. `human` and `judge`
// describe the pair relation from the side of the lexicographically
// smaller model: '>' it wins, '<' it loses, '=' tied.
struct PairOutcome {
    std::string model_a; // lexicographically smaller id
    std::string model_b;
    double conf = 0.0;
    double p = 0.0;
    char human = '=';
    char judge = '=';
};

struct RankDisagreement {
    double eps_rank = 0.0;
    std::vector<PairOutcome> pairs;
};

struct AlignmentReport {
    std::string judge_id;
    double alpha = 0.5;
    double eps_rank = 0.0;
    double eps_score = 0.0;
    double eps_total = 0.0;
    double align_score = 1.0;
    std::vector<PairOutcome> pairs;
};

struct AlignOptions {
    double alpha = 0.5;
    JudgeRankOptions judge_rank = {};
};

// Clusters the judge's per-model means with the judge's own tie threshold
// (same delta rule applied to the judge's per-model standard deviations).
JudgeRanking judge_ranking(const JudgeScoreTable& judge,
                           const JudgeRankOptions& options = {});

// For each unordered model pair: a strictly-preferring human contradicted
// (reversed or tied) by the judge costs the pair's confidence; a human tie
// the judge turns into a strict order costs 1; agreement costs 0. The sum
// is normalized by C(k, 2).
RankDisagreement rank_disagreement(const HumanRanking& human,
                                   const JudgeRanking& judge);

// Mean absolute difference of per-model means after normalizing both sides
// to [0, 1] via the declared scale.
double score_error(const std::vector<ModelStats>& human_stats,
                   const std::map<std::string, double>& judge_means,
                   const ScoreScale& scale);

// eps_total = alpha * eps_rank + (1 - alpha) * eps_score; align = 1 - eps_total.
// Throws ConfigError unless all inputs are within [0, 1].
std::pair<double, double> align_blend(double eps_rank, double eps_score, double alpha);

// Full judge evaluation against a fixed human ranking. Judge records for
// models outside the human universe are ignored; a judge missing a human
// model fails validation. Callers are expected to have run
// validate_coverage, which subsumes both checks for well-formed inputs.
AlignmentReport evaluate_judge(const HumanRanking& human, const JudgeScoreTable& judge,
                               const AlignOptions& options = {});

} // namespace sparsealign
