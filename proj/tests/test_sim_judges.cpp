#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "core/align_metric.hpp"
#include "core/sim_judges.hpp"
#include "core/tie_break.hpp"
#include "support/builders.hpp"

using namespace sparsealign;

TEST_CASE("random judge covers the universe with in-scale scores") {
    const HumanEvalTable human = testutil::load_paper_fixture();
    const JudgeScoreTable judge = random_judge(human.universe(), human.scale(), 7);
    CHECK(judge.records().size() == 150);
    CHECK(judge.judge_id() == "sim:random:7");
    for (const auto& r : judge.records()) {
        CHECK(r.score >= 1);
        CHECK(r.score <= 7);
    }
    CHECK_NOTHROW(validate_coverage(human, judge));
}

TEST_CASE("random judge is seed-deterministic") {
    const HumanEvalTable human = testutil::load_paper_fixture();
    const JudgeScoreTable a = random_judge(human.universe(), human.scale(), 42);
    const JudgeScoreTable b = random_judge(human.universe(), human.scale(), 42);
    CHECK(a == b);
    CHECK(a.to_csv() == b.to_csv());
    const JudgeScoreTable c = random_judge(human.universe(), human.scale(), 43);
    CHECK(a.records() != c.records());
}

TEST_CASE("random judge rejects an empty universe") {
    CHECK_THROWS_AS(random_judge({}, ScoreScale{1, 7}, 1), ValidationError);
}

TEST_CASE("random scores are empirically uniform") {
    // 20000 draws from {1..7}: mean 4, sd per draw 2, so a 0.1 margin is
    // over 7 standard errors.
    std::vector<std::pair<std::string, std::string>> universe;
    for (int i = 0; i < 20000; ++i) {
        universe.emplace_back("M", "s" + std::to_string(i));
    }
    const JudgeScoreTable judge = random_judge(universe, {1, 7}, 123);
    double sum = 0.0;
    for (const auto& r : judge.records()) sum += r.score;
    const double mean = sum / static_cast<double>(judge.records().size());
    CHECK(std::fabs(mean - 4.0) <= 0.1);
}

TEST_CASE("human-close judge with fraction 0 copies the table") {
    const HumanEvalTable human = testutil::load_paper_fixture();
    const JudgeScoreTable judge = human_close_judge(human, SimConfig(9, 0.0, {1, 7}));
    CHECK(judge.judge_id() == "sim:human_close:0:9");
    CHECK(judge.records().size() == 150);

    std::map<std::pair<std::string, std::string>, int> original;
    for (const auto& r : human.records()) {
        original[{r.model_id, r.sample_id}] = r.score;
    }
    for (const auto& r : judge.records()) {
        CHECK(r.score == original.at({r.model_id, r.sample_id}));
    }
}

TEST_CASE("human-close perturbation counts and drift bounds") {
    const HumanEvalTable human = testutil::load_paper_fixture();
    std::map<std::pair<std::string, std::string>, int> original;
    for (const auto& r : human.records()) {
        original[{r.model_id, r.sample_id}] = r.score;
    }

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const JudgeScoreTable judge =
            human_close_judge(human, SimConfig(seed, 0.10, {1, 7}));
        std::map<std::string, int> changed;
        for (const auto& r : judge.records()) {
            const int base = original.at({r.model_id, r.sample_id});
            CHECK(std::abs(r.score - base) <= 1);
            CHECK(r.score >= 1);
            CHECK(r.score <= 7);
            if (r.score != base) ++changed[r.model_id];
        }
        // floor(0.1 * 25 + 0.5) = 3 slots per column; clipping at the scale
        // edge can leave a slot unchanged, never add one
        for (const auto& [model, count] : changed) {
            CHECK(count <= 3);
        }
    }
}

TEST_CASE("interior scores are always changed by a full-fraction perturbation") {
    // every score is 4, far from both scale edges, so all slots take effect
    std::vector<testutil::Row> rows;
    for (int s = 1; s <= 10; ++s) {
        rows.push_back({"A", "s" + std::to_string(s), "H1", 4});
    }
    const HumanEvalTable human = testutil::make_human(rows);
    const JudgeScoreTable judge = human_close_judge(human, SimConfig(5, 1.0, {1, 7}));
    int changed = 0;
    for (const auto& r : judge.records()) {
        CHECK((r.score == 3 || r.score == 5));
        ++changed;
    }
    CHECK(changed == 10);
}

TEST_CASE("clipping pins scores at the scale floor") {
    std::vector<testutil::Row> rows;
    for (int s = 1; s <= 8; ++s) {
        rows.push_back({"A", "s" + std::to_string(s), "H1", 1});
    }
    const HumanEvalTable human = testutil::make_human(rows);
    const JudgeScoreTable judge = human_close_judge(human, SimConfig(3, 1.0, {1, 7}));
    bool any_pinned = false;
    for (const auto& r : judge.records()) {
        CHECK(r.score >= 1);
        CHECK(r.score <= 2); // 1 stays 1 on a -1 draw, becomes 2 on +1
        if (r.score == 1) any_pinned = true;
    }
    CHECK(any_pinned);
}

TEST_CASE("human-close judge is deterministic per (table, config)") {
    const HumanEvalTable human = testutil::load_paper_fixture();
    const JudgeScoreTable a = human_close_judge(human, SimConfig(42, 0.1, {1, 7}));
    const JudgeScoreTable b = human_close_judge(human, SimConfig(42, 0.1, {1, 7}));
    CHECK(a == b);
    CHECK(a.to_csv() == b.to_csv());
    CHECK(a.judge_id() == "sim:human_close:0.1:42");
}

TEST_CASE("overlapping annotations collapse to the rounded mean") {
    const HumanEvalTable human = testutil::make_human({
        {"A", "s1", "H1", 4},
        {"A", "s1", "H2", 5}, // mean 4.5 rounds half-up to 5
        {"A", "s2", "H1", 3},
    });
    const JudgeScoreTable judge = human_close_judge(human, SimConfig(0, 0.0, {1, 7}));
    REQUIRE(judge.records().size() == 2);
    CHECK(judge.records()[0].sample_id == "s1");
    CHECK(judge.records()[0].score == 5);
    CHECK(judge.records()[1].score == 3);
}

TEST_CASE("fraction outside [0, 1] is rejected") {
    CHECK_THROWS_AS(SimConfig(1, 1.5, ScoreScale{1, 7}), ConfigError);
    CHECK_THROWS_AS(SimConfig(1, -0.1, ScoreScale{1, 7}), ConfigError);
}

TEST_CASE("human-close outscores random across seeds") {
    const HumanEvalTable human = testutil::load_paper_fixture();
    const HumanRanking ranking = human_rank(human);

    double close_sum = 0.0;
    double random_sum = 0.0;
    const int seeds = 20;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
        const JudgeScoreTable close =
            human_close_judge(human, SimConfig(seed, 0.1, {1, 7}));
        close_sum += evaluate_judge(ranking, close).align_score;
        const JudgeScoreTable random =
            random_judge(human.universe(), human.scale(), seed);
        random_sum += evaluate_judge(ranking, random).align_score;
    }
    CHECK(close_sum / seeds > random_sum / seeds + 0.1);
}
