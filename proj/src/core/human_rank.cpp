#include "human_rank.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sparsealign {

std::vector<ModelStats> model_stats(const HumanEvalTable& table,
                                    StdEstimator estimator) {
    std::map<std::string, std::vector<int>> by_model;
    for (const auto& r : table.records()) by_model[r.model_id].push_back(r.score);

    std::vector<ModelStats> out;
    out.reserve(by_model.size());
    for (const auto& [model, scores] : by_model) {
        const std::size_t n = scores.size();
        long long sum = 0;
        for (int s : scores) sum += s;
        const double mean = static_cast<double>(sum) / static_cast<double>(n);

        double sq = 0.0;
        for (int s : scores) {
            const double d = static_cast<double>(s) - mean;
            sq += d * d;
        }
        double std_dev = 0.0;
        if (n > 1) {
            const double denom = estimator == StdEstimator::Sample
                                     ? static_cast<double>(n - 1)
                                     : static_cast<double>(n);
            std_dev = std::sqrt(sq / denom);
        } else if (estimator == StdEstimator::Population) {
            std_dev = 0.0; // single observation, zero dispersion
        }
        out.push_back({model, mean, std_dev, n});
    }
    return out;
}

double tie_threshold(const std::vector<ModelStats>& stats, double factor) {
    if (stats.empty()) throw ValidationError("tie_threshold: no models");
    if (!(factor >= 0.0)) throw ConfigError("delta factor must be >= 0");

    std::vector<double> stds;
    stds.reserve(stats.size());
    for (const auto& s : stats) stds.push_back(s.std_dev);
    std::sort(stds.begin(), stds.end());

    const std::size_t n = stds.size();
    const double median = (n % 2 == 1)
                              ? stds[n / 2]
                              : (stds[n / 2 - 1] + stds[n / 2]) / 2.0;
    return factor * median;
}

ClusterRanking greedy_cluster(const std::vector<ModelStats>& stats, double delta,
                              Boundary boundary) {
    if (!(delta >= 0.0)) throw ConfigError("delta must be >= 0");

    // Mean descending; exactly-equal means fall back to model id ascending so
    // repeated runs are identical.
    std::vector<const ModelStats*> order;
    order.reserve(stats.size());
    for (const auto& s : stats) order.push_back(&s);
    std::sort(order.begin(), order.end(),
              [](const ModelStats* a, const ModelStats* b) {
                  if (a->mean != b->mean) return a->mean > b->mean;
                  return a->model_id < b->model_id;
              });

    const auto tied = [&](double a, double b) {
        const double diff = std::abs(a - b);
        return boundary == Boundary::Lte ? diff <= delta : diff < delta;
    };

    ClusterRanking ranking;
    ranking.delta = delta;
    std::vector<const ModelStats*> current;
    for (const ModelStats* m : order) {
        bool joins = !current.empty();
        for (const ModelStats* member : current) {
            if (!tied(m->mean, member->mean)) {
                joins = false;
                break;
            }
        }
        if (!joins && !current.empty()) {
            std::vector<std::string> ids;
            for (const ModelStats* member : current) ids.push_back(member->model_id);
            ranking.clusters.push_back(std::move(ids));
            current.clear();
        }
        current.push_back(m);
    }
    if (!current.empty()) {
        std::vector<std::string> ids;
        for (const ModelStats* member : current) ids.push_back(member->model_id);
        ranking.clusters.push_back(std::move(ids));
    }
    return ranking;
}

} // namespace sparsealign
