#include "align_metric.hpp"

#include <algorithm>
#include <cmath>

namespace sparsealign {

namespace {

// Judge tables reuse the human-side stats machinery by viewing each
// (model, sample) score as a single-annotator record.
std::vector<ModelStats> judge_stats(const JudgeScoreTable& judge,
                                    StdEstimator estimator) {
    std::vector<EvalRecord> records;
    records.reserve(judge.records().size());
    for (const auto& r : judge.records()) {
        records.push_back({r.model_id, r.sample_id, judge.judge_id(), r.score});
    }
    return model_stats(HumanEvalTable(std::move(records), judge.scale()), estimator);
}

} // namespace

JudgeRanking judge_ranking(const JudgeScoreTable& judge,
                           const JudgeRankOptions& options) {
    const std::vector<ModelStats> stats = judge_stats(judge, options.estimator);

    JudgeRanking ranking;
    ranking.judge_id = judge.judge_id();
    for (const auto& s : stats) ranking.means[s.model_id] = s.mean;

    if (options.strict_order) {
        std::vector<const ModelStats*> order;
        for (const auto& s : stats) order.push_back(&s);
        std::sort(order.begin(), order.end(),
                  [](const ModelStats* a, const ModelStats* b) {
                      if (a->mean != b->mean) return a->mean > b->mean;
                      return a->model_id < b->model_id;
                  });
        for (const ModelStats* s : order) ranking.order.push_back({s->model_id});
        ranking.delta = 0.0;
        return ranking;
    }

    ranking.delta = tie_threshold(stats, options.delta_factor);
    ClusterRanking clusters = greedy_cluster(stats, ranking.delta, options.boundary);
    ranking.order = std::move(clusters.clusters);
    return ranking;
}

RankDisagreement rank_disagreement(const HumanRanking& human,
                                   const JudgeRanking& judge) {
    const std::vector<std::string> models = human.models();
    std::map<std::string, std::size_t> judge_group;
    for (std::size_t g = 0; g < judge.order.size(); ++g) {
        for (const auto& m : judge.order[g]) judge_group[m] = g;
    }
    for (const auto& m : models) {
        if (!judge_group.contains(m)) {
            throw ValidationError("judge ranking is missing model " + m);
        }
    }
    std::size_t judge_models = 0;
    for (const auto& group : judge.order) judge_models += group.size();
    if (judge_models != models.size()) {
        throw ValidationError("judge ranking covers a different model set");
    }

    RankDisagreement result;
    double sum = 0.0;
    for (std::size_t a = 0; a < models.size(); ++a) {
        for (std::size_t b = a + 1; b < models.size(); ++b) {
            const std::string& ma = models[a];
            const std::string& mb = models[b];
            const int h = human.preference(ma, mb);
            const std::size_t ga = judge_group.at(ma);
            const std::size_t gb = judge_group.at(mb);
            const int j = ga < gb ? 1 : (ga > gb ? -1 : 0);
            const double conf = human.confidence(ma, mb);

            double p = 0.0;
            if (h != 0) {
                // Strict human preference; any judge reversal or tie costs conf.
                if (j != h) p = conf;
            } else if (j != 0) {
                // Human tie the judge turns into an order.
                p = 1.0;
            }
            sum += p;

            PairOutcome outcome;
            outcome.model_a = ma;
            outcome.model_b = mb;
            outcome.conf = conf;
            outcome.p = p;
            outcome.human = h > 0 ? '>' : (h < 0 ? '<' : '=');
            outcome.judge = j > 0 ? '>' : (j < 0 ? '<' : '=');
            result.pairs.push_back(outcome);
        }
    }
    const std::size_t k = models.size();
    const std::size_t pair_count = k * (k - 1) / 2;
    result.eps_rank = pair_count == 0 ? 0.0 : sum / static_cast<double>(pair_count);
    return result;
}

double score_error(const std::vector<ModelStats>& human_stats,
                   const std::map<std::string, double>& judge_means,
                   const ScoreScale& scale) {
    if (human_stats.empty()) throw ValidationError("score_error: no models");
    const double span = static_cast<double>(scale.span());
    double sum = 0.0;
    for (const auto& s : human_stats) {
        auto it = judge_means.find(s.model_id);
        if (it == judge_means.end()) {
            throw ValidationError("judge means are missing model " + s.model_id);
        }
        const double h = (s.mean - scale.min) / span;
        const double j = (it->second - scale.min) / span;
        sum += std::fabs(h - j);
    }
    return sum / static_cast<double>(human_stats.size());
}

std::pair<double, double> align_blend(double eps_rank, double eps_score,
                                      double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must be in [0, 1]");
    if (!(eps_rank >= 0.0 && eps_rank <= 1.0)) {
        throw ConfigError("eps_rank must be in [0, 1]");
    }
    if (!(eps_score >= 0.0 && eps_score <= 1.0)) {
        throw ConfigError("eps_score must be in [0, 1]");
    }
    const double eps_total = alpha * eps_rank + (1.0 - alpha) * eps_score;
    return {eps_total, 1.0 - eps_total};
}

AlignmentReport evaluate_judge(const HumanRanking& human, const JudgeScoreTable& judge,
                               const AlignOptions& options) {
    const std::vector<std::string> human_models = human.models();
    const std::set<std::string> wanted(human_models.begin(), human_models.end());

    // Restrict the judge table to the human model universe before ranking;
    // extra models would otherwise skew the judge's own tie threshold.
    std::vector<JudgeRecord> restricted;
    for (const auto& r : judge.records()) {
        if (wanted.contains(r.model_id)) restricted.push_back(r);
    }
    for (const auto& m : human_models) {
        const bool present = std::any_of(restricted.begin(), restricted.end(),
                                         [&](const JudgeRecord& r) {
                                             return r.model_id == m;
                                         });
        if (!present) {
            throw ValidationError("judge '" + judge.judge_id() +
                                  "' has no scores for model " + m);
        }
    }
    const JudgeScoreTable view(judge.judge_id(), std::move(restricted), judge.scale());
    const JudgeRanking ranking = judge_ranking(view, options.judge_rank);

    RankDisagreement disagreement = rank_disagreement(human, ranking);
    const double eps_score = score_error(human.stats(), ranking.means, judge.scale());
    const auto [eps_total, align] =
        align_blend(disagreement.eps_rank, eps_score, options.alpha);

    AlignmentReport report;
    report.judge_id = judge.judge_id();
    report.alpha = options.alpha;
    report.eps_rank = disagreement.eps_rank;
    report.eps_score = eps_score;
    report.eps_total = eps_total;
    report.align_score = align;
    report.pairs = std::move(disagreement.pairs);
    return report;
}

} // namespace sparsealign
