#include <doctest.h>

#include <map>
#include <random>

#include "core/align_metric.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace sparsealign;

namespace {

JudgeRanking make_judge_ranking(const std::vector<std::vector<std::string>>& order) {
    JudgeRanking ranking;
    ranking.judge_id = "J";
    ranking.order = order;
    double mean = 7.0;
    for (const auto& group : order) {
        for (const auto& m : group) ranking.means[m] = mean;
        mean -= 1.0;
    }
    return ranking;
}

// Human ranking over a strict chain with chosen per-pair confidences.
HumanRanking make_chain_ranking(
    const std::vector<std::string>& chain,
    const std::map<std::pair<std::string, std::string>, double>& conf_overrides) {
    std::vector<std::vector<std::string>> order;
    std::map<std::pair<std::string, std::string>, double> conf;
    std::set<std::pair<std::string, std::string>> prefs;
    std::vector<ModelStats> stats;
    double mean = 7.0;
    for (const auto& m : chain) {
        order.push_back({m});
        stats.push_back({m, mean, 1.0, 25});
        mean -= 0.5;
    }
    for (std::size_t i = 0; i < chain.size(); ++i) {
        for (std::size_t j = i + 1; j < chain.size(); ++j) {
            prefs.insert({chain[i], chain[j]});
            const auto key = std::make_pair(std::min(chain[i], chain[j]),
                                            std::max(chain[i], chain[j]));
            const auto it = conf_overrides.find(key);
            conf[key] = it == conf_overrides.end() ? 1.0 : it->second;
        }
    }
    return HumanRanking(std::move(order), std::move(conf), std::move(prefs),
                        std::move(stats), 0.1);
}

std::map<std::string, std::size_t> group_index(const JudgeRanking& judge) {
    std::map<std::string, std::size_t> out;
    for (std::size_t g = 0; g < judge.order.size(); ++g) {
        for (const auto& m : judge.order[g]) out[m] = g;
    }
    return out;
}

// Mirrors a HumanRanking into the oracle's plain-map inputs.
double oracle_eps_rank_of(const HumanRanking& human, const JudgeRanking& judge) {
    const auto models = human.models();
    std::map<std::pair<std::string, std::string>, int> pref;
    std::map<std::pair<std::string, std::string>, double> conf;
    for (std::size_t i = 0; i < models.size(); ++i) {
        for (std::size_t j = i + 1; j < models.size(); ++j) {
            const auto key = std::make_pair(models[i], models[j]);
            pref[key] = human.preference(models[i], models[j]);
            conf[key] = human.confidence(models[i], models[j]);
        }
    }
    return oracle::eps_rank(models, pref, conf, group_index(judge));
}

} // namespace

TEST_CASE("judge ranking: constant scores collapse to one group") {
    std::vector<JudgeRecord> records;
    for (const char* m : {"A", "B", "C"}) {
        for (int s = 1; s <= 4; ++s) {
            records.push_back({m, "s" + std::to_string(s), 5});
        }
    }
    const JudgeScoreTable judge("J", std::move(records), {1, 7});
    const JudgeRanking ranking = judge_ranking(judge);
    CHECK(ranking.order == std::vector<std::vector<std::string>>{{"A", "B", "C"}});
    CHECK(ranking.delta == 0.0);
}

TEST_CASE("judge ranking separates means beyond its own delta") {
    // 10-point scale keeps the hand numbers simple.
    std::vector<JudgeRecord> records;
    const std::map<std::string, std::vector<int>> scores = {
        {"A", {5, 7, 6, 7, 6, 8}},    // mean 6.5, sample std ~1.049
        {"B", {5, 7, 5, 7, 8}},       // mean 6.4, sample std ~1.342
        {"C", {1, 5, 1, 5, 3}},       // mean 3.0, sample std 2
    };
    for (const auto& [m, list] : scores) {
        int s = 0;
        for (int score : list) records.push_back({m, "s" + std::to_string(++s), score});
    }
    const JudgeScoreTable judge("J", std::move(records), {1, 10});
    const JudgeRanking ranking = judge_ranking(judge);
    // median std is B's ~1.3416, delta ~0.2236: A and B tie, C stands alone
    CHECK(ranking.delta == doctest::Approx(0.2236068).epsilon(1e-6));
    CHECK(ranking.order ==
          std::vector<std::vector<std::string>>{{"A", "B"}, {"C"}});
    CHECK(ranking.means.at("A") == doctest::Approx(6.5));
    CHECK(ranking.means.at("B") == doctest::Approx(6.4));
}

TEST_CASE("strict-order mode never groups") {
    std::vector<JudgeRecord> records;
    for (const char* m : {"A", "B", "C"}) {
        records.push_back({m, "s1", 5});
    }
    const JudgeScoreTable judge("J", std::move(records), {1, 7});
    JudgeRankOptions options;
    options.strict_order = true;
    const JudgeRanking ranking = judge_ranking(judge, options);
    CHECK(ranking.order ==
          std::vector<std::vector<std::string>>{{"A"}, {"B"}, {"C"}});
}

TEST_CASE("judge copying a cleanly separated table reproduces its groups") {
    const HumanEvalTable human = testutil::make_human({
        {"A", "s1", "H1", 7}, {"A", "s2", "H2", 7},
        {"B", "s1", "H1", 4}, {"B", "s2", "H2", 4},
        {"C", "s1", "H1", 1}, {"C", "s2", "H2", 1},
    });
    const JudgeScoreTable judge = testutil::copy_judge(human, "copy");
    const JudgeRanking ranking = judge_ranking(judge);
    CHECK(ranking.order ==
          std::vector<std::vector<std::string>>{{"A"}, {"B"}, {"C"}});
}

TEST_CASE("rank disagreement single-pair cases") {
    SUBCASE("identical rankings agree everywhere") {
        const HumanRanking human = make_chain_ranking({"A", "B", "C"}, {});
        const auto result =
            rank_disagreement(human, make_judge_ranking({{"A"}, {"B"}, {"C"}}));
        CHECK(result.eps_rank == 0.0);
        for (const auto& pair : result.pairs) CHECK(pair.p == 0.0);
    }
    SUBCASE("judge tying a conf-0.12 pair costs 0.12") {
        const HumanRanking human =
            make_chain_ranking({"M6", "M1"}, {{{"M1", "M6"}, 0.12}});
        const auto result =
            rank_disagreement(human, make_judge_ranking({{"M1", "M6"}}));
        CHECK(result.eps_rank == doctest::Approx(0.12).epsilon(1e-12));
    }
    SUBCASE("judge ordering a human tie costs 1") {
        // one rank group holding both models, conf 0
        HumanRanking human({{"A", "B"}},
                           {{{"A", "B"}, 0.0}},
                           {},
                           {{"A", 5.0, 1.0, 5}, {"B", 5.0, 1.0, 5}}, 0.1);
        const auto ordered =
            rank_disagreement(human, make_judge_ranking({{"A"}, {"B"}}));
        CHECK(ordered.eps_rank == 1.0);
        const auto tied = rank_disagreement(human, make_judge_ranking({{"A", "B"}}));
        CHECK(tied.eps_rank == 0.0);
    }
}

TEST_CASE("rank disagreement matches the published decompositions") {
    const HumanRanking human = make_chain_ranking(
        {"M6", "M1", "M2", "M3", "M5", "M4"},
        {{{"M1", "M6"}, 0.12}, {{"M2", "M3"}, 0.04}});

    SUBCASE("seven full inversions plus the 0.12 pair") {
        const JudgeRanking judge = make_judge_ranking(
            {{"M4"}, {"M1"}, {"M6"}, {"M5"}, {"M2"}, {"M3"}});
        const auto result = rank_disagreement(human, judge);
        CHECK(result.eps_rank == doctest::Approx(7.12 / 15.0).epsilon(1e-12));
        CHECK(oracle_eps_rank_of(human, judge) ==
              doctest::Approx(result.eps_rank).epsilon(1e-12));
    }
    SUBCASE("three full inversions plus both low-confidence pairs") {
        const JudgeRanking judge = make_judge_ranking(
            {{"M1"}, {"M6"}, {"M5"}, {"M3"}, {"M4"}, {"M2"}});
        const auto result = rank_disagreement(human, judge);
        CHECK(result.eps_rank == doctest::Approx(3.16 / 15.0).epsilon(1e-12));
        CHECK(oracle_eps_rank_of(human, judge) ==
              doctest::Approx(result.eps_rank).epsilon(1e-12));
    }
}

TEST_CASE("rank disagreement rejects model-set mismatches") {
    const HumanRanking human = make_chain_ranking({"A", "B"}, {});
    CHECK_THROWS_AS(rank_disagreement(human, make_judge_ranking({{"A"}})),
                    ValidationError);
    CHECK_THROWS_AS(
        rank_disagreement(human, make_judge_ranking({{"A"}, {"B"}, {"C"}})),
        ValidationError);
}

TEST_CASE("score error") {
    SUBCASE("identical means") {
        const std::vector<ModelStats> stats = {{"A", 5.2, 1.0, 5}, {"B", 3.1, 1.0, 5}};
        CHECK(score_error(stats, {{"A", 5.2}, {"B", 3.1}}, {1, 7}) == 0.0);
    }
    SUBCASE("extremal disagreement is 1") {
        const std::vector<ModelStats> stats = {{"A", 7.0, 1.0, 5}, {"B", 1.0, 1.0, 5}};
        CHECK(score_error(stats, {{"A", 1.0}, {"B", 7.0}}, {1, 7}) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("single-model normalization") {
        const std::vector<ModelStats> stats = {{"A", 4.0, 1.0, 5}};
        CHECK(score_error(stats, {{"A", 5.5}}, {1, 7}) ==
              doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("missing model is an error") {
        const std::vector<ModelStats> stats = {{"A", 4.0, 1.0, 5}};
        CHECK_THROWS_AS(score_error(stats, {{"B", 4.0}}, {1, 7}), ValidationError);
    }
}

TEST_CASE("score error is invariant under affine rescaling of both sides") {
    std::mt19937 rng(67);
    std::uniform_int_distribution<int> a_dist(1, 3);
    std::uniform_int_distribution<int> b_dist(-2, 5);
    for (int trial = 0; trial < 100; ++trial) {
        const HumanEvalTable human = testutil::random_human(rng);
        const JudgeScoreTable judge = testutil::random_judge_for(human, rng);
        const auto stats = model_stats(human);
        const JudgeRanking ranking = judge_ranking(judge);
        const double base = score_error(stats, ranking.means, human.scale());

        const int a = a_dist(rng);
        const int b = b_dist(rng);
        const ScoreScale mapped_scale{a * human.scale().min + b,
                                      a * human.scale().max + b};
        std::vector<ModelStats> mapped_stats = stats;
        for (auto& s : mapped_stats) s.mean = a * s.mean + b;
        std::map<std::string, double> mapped_means;
        for (const auto& [m, mean] : ranking.means) mapped_means[m] = a * mean + b;

        const double mapped = score_error(mapped_stats, mapped_means, mapped_scale);
        CHECK(mapped == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("alpha blend") {
    SUBCASE("published component pairs at alpha 0.5") {
        const auto [eps1, align1] = align_blend(0.30, 0.18, 0.5);
        CHECK(align1 == doctest::Approx(0.76).epsilon(1e-12));
        const auto [eps2, align2] = align_blend(0.38, 0.14, 0.5);
        CHECK(align2 == doctest::Approx(0.74).epsilon(1e-12));
        const auto [eps3, align3] = align_blend(0.475, 0.347, 0.5);
        CHECK(eps3 == doctest::Approx(0.411).epsilon(1e-12));
        CHECK(align3 == doctest::Approx(0.589).epsilon(1e-12));
        const auto [eps4, align4] = align_blend(0.211, 0.058, 0.5);
        CHECK(align4 == doctest::Approx(0.8655).epsilon(1e-12));
    }
    SUBCASE("perfect judge scores 1 under any alpha") {
        for (double alpha : {0.0, 0.25, 0.5, 1.0}) {
            CHECK(align_blend(0.0, 0.0, alpha).second == 1.0);
        }
    }
    SUBCASE("affine in alpha with slope eps_score - eps_rank") {
        const double r = 0.3, s = 0.7;
        const double at0 = align_blend(r, s, 0.0).second;
        const double at05 = align_blend(r, s, 0.5).second;
        const double at1 = align_blend(r, s, 1.0).second;
        CHECK(at0 == doctest::Approx(1.0 - s).epsilon(1e-12));
        CHECK(at1 == doctest::Approx(1.0 - r).epsilon(1e-12));
        CHECK(at05 == doctest::Approx((at0 + at1) / 2.0).epsilon(1e-12));
        CHECK(at1 - at0 == doctest::Approx(s - r).epsilon(1e-12));
    }
    SUBCASE("domain violations throw") {
        CHECK_THROWS_AS(align_blend(0.5, 0.5, -0.1), ConfigError);
        CHECK_THROWS_AS(align_blend(0.5, 0.5, 1.1), ConfigError);
        CHECK_THROWS_AS(align_blend(1.5, 0.5, 0.5), ConfigError);
        CHECK_THROWS_AS(align_blend(0.5, -0.5, 0.5), ConfigError);
    }
}

TEST_CASE("monotonicity: flipping one agreeing pair to a disagreement never "
          "lowers eps_rank") {
    std::mt19937 rng(71);
    std::uniform_int_distribution<int> model_count(2, 6);
    std::uniform_real_distribution<double> conf_dist(0.0, 1.0);
    std::uniform_int_distribution<int> rel(0, 2);

    for (int trial = 0; trial < 300; ++trial) {
        const int k = model_count(rng);
        std::vector<std::string> models;
        for (int m = 0; m < k; ++m) models.push_back("M" + std::to_string(m + 1));

        std::map<std::pair<std::string, std::string>, int> pref;
        std::map<std::pair<std::string, std::string>, double> conf;
        std::map<std::string, std::size_t> judge_group;
        for (std::size_t m = 0; m < models.size(); ++m) {
            judge_group[models[m]] = static_cast<std::size_t>(rel(rng));
        }
        for (std::size_t i = 0; i < models.size(); ++i) {
            for (std::size_t j = i + 1; j < models.size(); ++j) {
                const auto key = std::make_pair(models[i], models[j]);
                const int r = rel(rng);
                pref[key] = r == 2 ? 0 : (r == 1 ? -1 : 1);
                conf[key] = pref[key] == 0 ? 0.0 : conf_dist(rng);
            }
        }
        const double base = oracle::eps_rank(models, pref, conf, judge_group);

        // force one strictly-preferring pair the judge currently agrees
        // with into a reversal by flipping the human side
        for (auto& [key, h] : pref) {
            if (h == 0) continue;
            const int jg = judge_group[key.first] < judge_group[key.second]
                               ? 1
                               : (judge_group[key.first] > judge_group[key.second]
                                      ? -1
                                      : 0);
            if (jg == h) {
                auto flipped = pref;
                flipped[key] = -h;
                const double bumped =
                    oracle::eps_rank(models, flipped, conf, judge_group);
                CHECK(bumped >= base - 1e-12);
                break;
            }
        }
    }
}

TEST_CASE("evaluate_judge composes the pipeline") {
    const HumanEvalTable human = testutil::make_human({
        {"A", "s1", "H1", 7}, {"A", "s2", "H2", 7},
        {"B", "s1", "H1", 4}, {"B", "s2", "H2", 4},
        {"C", "s1", "H1", 1}, {"C", "s2", "H2", 1},
    });
    const HumanRanking ranking = human_rank(human);

    SUBCASE("score-copying judge on an all-conf-1 ranking is perfect") {
        const JudgeScoreTable judge = testutil::copy_judge(human, "copy");
        const AlignmentReport report = evaluate_judge(ranking, judge);
        CHECK(report.eps_rank == 0.0);
        CHECK(report.eps_score == 0.0);
        CHECK(report.align_score == 1.0);
        CHECK(report.pairs.size() == 3);
    }

    SUBCASE("full reversal at matching means costs exactly alpha") {
        // A judge whose means equal the human's cannot also rank in
        // reverse (the ranking is derived from those means), so the two
        // components are pinned separately and blended.
        const JudgeRanking reversed = make_judge_ranking({{"C"}, {"B"}, {"A"}});
        const auto disagreement = rank_disagreement(ranking, reversed);
        CHECK(disagreement.eps_rank == 1.0); // all 3 pairs inverted
        CHECK(oracle_eps_rank_of(ranking, reversed) == 1.0);

        const double eps_score = score_error(
            ranking.stats(), {{"A", 7.0}, {"B", 4.0}, {"C", 1.0}}, human.scale());
        CHECK(eps_score == 0.0);

        for (double alpha : {0.0, 0.3, 0.5, 1.0}) {
            CHECK(align_blend(disagreement.eps_rank, eps_score, alpha).second ==
                  doctest::Approx(1.0 - alpha).epsilon(1e-12));
        }
    }

    SUBCASE("judge missing a model fails validation") {
        std::vector<JudgeRecord> records;
        for (const auto& r : human.records()) {
            if (r.model_id == "C") continue;
            records.push_back({r.model_id, r.sample_id, r.score});
        }
        const JudgeScoreTable judge("partial", std::move(records), human.scale());
        CHECK_THROWS_AS(evaluate_judge(ranking, judge), ValidationError);
    }

    SUBCASE("extra judge models are ignored") {
        std::vector<JudgeRecord> records;
        for (const auto& r : human.records()) {
            records.push_back({r.model_id, r.sample_id, r.score});
        }
        records.push_back({"Z", "s1", 4});
        const JudgeScoreTable judge("extra", std::move(records), human.scale());
        const AlignmentReport report = evaluate_judge(ranking, judge);
        CHECK(report.align_score == 1.0);
    }
}

TEST_CASE("all metrics stay in [0, 1] on random inputs") {
    std::mt19937 rng(73);
    for (int trial = 0; trial < 200; ++trial) {
        const HumanEvalTable human = testutil::random_human(rng);
        const JudgeScoreTable judge = testutil::random_judge_for(human, rng);
        const HumanRanking ranking = human_rank(human);
        const AlignmentReport report = evaluate_judge(ranking, judge);

        CHECK(report.eps_rank >= 0.0);
        CHECK(report.eps_rank <= 1.0);
        CHECK(report.eps_score >= 0.0);
        CHECK(report.eps_score <= 1.0);
        CHECK(report.eps_total >= 0.0);
        CHECK(report.eps_total <= 1.0);
        CHECK(report.align_score >= 0.0);
        CHECK(report.align_score <= 1.0);

        // eps_rank agrees with the literal case-table oracle
        const JudgeRanking jr = judge_ranking(judge);
        CHECK(report.eps_rank ==
              doctest::Approx(oracle_eps_rank_of(ranking, jr)).epsilon(1e-12));
    }
}
