#include "sim_judges.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "rng.hpp"

namespace sparsealign {

namespace {

std::string format_fraction(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", fraction);
    return buf;
}

int clip(int value, const ScoreScale& scale) {
    return std::clamp(value, scale.min, scale.max);
}

} // namespace

JudgeScoreTable random_judge(
    const std::vector<std::pair<std::string, std::string>>& universe,
    const ScoreScale& scale, std::uint64_t seed) {
    if (universe.empty()) throw ValidationError("random_judge: empty universe");

    std::vector<std::pair<std::string, std::string>> pairs = universe;
    std::sort(pairs.begin(), pairs.end());

    Rng rng(seed);
    std::vector<JudgeRecord> records;
    records.reserve(pairs.size());
    for (const auto& [model, sample] : pairs) {
        records.push_back({model, sample, rng.uniform_int(scale.min, scale.max)});
    }
    return JudgeScoreTable("sim:random:" + std::to_string(seed), std::move(records),
                           scale);
}

JudgeScoreTable human_close_judge(const HumanEvalTable& human,
                                  const SimConfig& config) {
    if (!(config.perturb_fraction >= 0.0 && config.perturb_fraction <= 1.0)) {
        throw ConfigError("perturb fraction must be in [0, 1]");
    }
    const ScoreScale& scale = human.scale();

    // One base score per (model, sample): the verbatim human score, or the
    // half-up rounded mean when several annotators graded the same pair.
    std::map<std::string, std::map<std::string, std::pair<long long, long long>>> sums;
    for (const auto& r : human.records()) {
        auto& cell = sums[r.model_id][r.sample_id];
        cell.first += r.score;
        cell.second += 1;
    }

    Rng rng(config.seed);
    std::vector<JudgeRecord> records;
    for (const auto& [model, column] : sums) { // model id ascending
        std::vector<std::pair<std::string, int>> base;
        base.reserve(column.size());
        for (const auto& [sample, cell] : column) { // sample id ascending
            const double mean = static_cast<double>(cell.first) /
                                static_cast<double>(cell.second);
            base.emplace_back(sample,
                              clip(static_cast<int>(std::floor(mean + 0.5)), scale));
        }

        const std::size_t n = base.size();
        const auto count = static_cast<std::size_t>(
            std::floor(config.perturb_fraction * static_cast<double>(n) + 0.5));
        const std::vector<std::size_t> selected = rng.pick(count, n);

        std::vector<int> score(n);
        for (std::size_t i = 0; i < n; ++i) score[i] = base[i].second;
        for (std::size_t i : selected) score[i] = clip(score[i] + rng.sign(), scale);

        for (std::size_t i = 0; i < n; ++i) {
            records.push_back({model, base[i].first, score[i]});
        }
    }

    const std::string judge_id = "sim:human_close:" +
                                 format_fraction(config.perturb_fraction) + ":" +
                                 std::to_string(config.seed);
    return JudgeScoreTable(judge_id, std::move(records), scale);
}

} // namespace sparsealign
