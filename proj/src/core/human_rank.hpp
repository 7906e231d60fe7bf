#pragma once

// Per-model score statistics, the tie threshold delta, and greedy
// tie-clustering. Clustering sorts models by mean descending and walks the
// list once: a model joins the last open cluster only if it stays within
// delta of every member, otherwise it opens a new cluster.

#include <cstddef>
#include <string>
#include <vector>

#include "eval_data.hpp"

namespace sparsealign {

enum class StdEstimator {
    Sample,     // n-1 denominator (default)
    Population, // n denominator
};

// Tie comparison at the delta boundary: Lte treats a difference of exactly
// delta as a tie, Lt does not.
enum class Boundary {
    Lte,
    Lt,
};

struct ModelStats {
    std::string model_id;
    double mean = 0.0;
    double std_dev = 0.0;
    std::size_t n = 0;
};

// Ordered partition of the model set. Clusters are listed best first;
// members keep the scan order (mean descending, model id ascending).
struct ClusterRanking {
    std::vector<std::vector<std::string>> clusters;
    double delta = 0.0;
};

// One entry per model, sorted by model id; mean/std over all of the model's
// records regardless of annotator. A single score yields std 0 under either
// estimator.
std::vector<ModelStats> model_stats(const HumanEvalTable& table,
                                    StdEstimator estimator = StdEstimator::Sample);

// delta = factor * median of the per-model standard deviations. An even
// count takes the midpoint of the two central values.
double tie_threshold(const std::vector<ModelStats>& stats, double factor = 1.0 / 6.0);

ClusterRanking greedy_cluster(const std::vector<ModelStats>& stats, double delta,
                              Boundary boundary = Boundary::Lte);

} // namespace sparsealign
