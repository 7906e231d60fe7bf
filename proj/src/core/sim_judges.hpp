#pragma once

// Two simulated baseline judges for stress-testing the alignment metric:
// a uniform-random judge (negative control) and a human-close judge that
// perturbs a fixed fraction of the human grades by +/-1 (positive control).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eval_data.hpp"

namespace sparsealign {

struct SimConfig {
    std::uint64_t seed = 0;
    double perturb_fraction = 0.10; // share of each model column shifted
    ScoreScale scale = {};

    SimConfig() = default;
    SimConfig(std::uint64_t s, double fraction, ScoreScale sc)
        : seed(s), perturb_fraction(fraction), scale(sc) {
        if (!(perturb_fraction >= 0.0 && perturb_fraction <= 1.0)) {
            throw ConfigError("perturb fraction must be in [0, 1]");
        }
    }
};

// Independent uniform integer score in [scale.min, scale.max] for every
// pair of the universe, visited in (model, sample) order. Judge id:
// sim:random:<seed>.
JudgeScoreTable random_judge(
    const std::vector<std::pair<std::string, std::string>>& universe,
    const ScoreScale& scale, std::uint64_t seed);

// Collapses the human table to one score per (model, sample) (mean rounded
// half-up when annotators overlap), then, per model column, perturbs
// floor(fraction * n + 0.5) uniformly chosen scores by +/-1 with equal
// probability, clipping to the scale. Judge id:
// sim:human_close:<fraction>:<seed>.
JudgeScoreTable human_close_judge(const HumanEvalTable& human, const SimConfig& config);

} // namespace sparsealign
