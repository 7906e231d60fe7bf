#pragma once

// Weighted pairwise voting with confidence, cycle-free preference graphs,
// and the end-to-end consensus ranking pipeline.
//
// Within a tie cluster, each annotator who saw both models votes with a
// weight proportional to how many of the pair's samples they graded. The
// net vote margin is the pair's confidence. Winning directions become
// candidate edges, inserted strongest-first into a graph that rejects any
// edge closing a directed cycle; reachability in the resulting DAG is the
// refined preference relation.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "human_rank.hpp"

namespace sparsealign {

struct VoteResult {
    std::string model_i;
    std::string model_j;
    double v_ij = 0.0;     // total weighted votes for model_i
    double v_ji = 0.0;     // total weighted votes for model_j
    double conf = 0.0;     // |v_ij - v_ji|
    std::size_t voters = 0; // |H_{i,j}|

    // Exact integer tallies (weights are counts over counts); the doubles
    // above are derived from these. wins_i > wins_j decides edge direction
    // without floating-point comparisons.
    std::int64_t wins_i = 0;
    std::int64_t wins_j = 0;
    std::int64_t split = 0;
    std::int64_t total = 0; // sum of n_H over the pair's voters
};

struct PreferenceEdge {
    std::string from; // winner
    std::string to;   // loser
    double strength = 0.0;
};

class PreferenceDag {
public:
    explicit PreferenceDag(std::vector<std::string> nodes);

    // Adds winner->loser unless a directed cycle would result.
    // Returns false (and leaves the graph unchanged) if rejected.
    bool add_edge_if_acyclic(const std::string& from, const std::string& to,
                             double strength);

    bool reachable(const std::string& from, const std::string& to) const;

    // Maximum over from->to paths of the minimum edge strength on the path;
    // 0 if unreachable.
    double widest_path_strength(const std::string& from, const std::string& to) const;

    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<PreferenceEdge>& edges() const { return edges_; }
    const std::vector<std::size_t>& successors(std::size_t node) const {
        return adj_[node];
    }
    std::size_t index_of(const std::string& node) const;

private:
    std::vector<std::string> nodes_;
    std::map<std::string, std::size_t> index_;
    std::vector<PreferenceEdge> edges_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::vector<double>> strength_; // 0 where no edge

    bool reachable_idx(std::size_t from, std::size_t to) const;
};

struct RankOptions {
    StdEstimator estimator = StdEstimator::Sample;
    double delta_factor = 1.0 / 6.0;
    Boundary boundary = Boundary::Lte;
};

// Consensus ranking: ordered rank groups plus a confidence for every model
// pair. Groups partition the model set; members of one group are mutually
// unordered by the preference relation.
class HumanRanking {
public:
    HumanRanking(std::vector<std::vector<std::string>> order,
                 std::map<std::pair<std::string, std::string>, double> conf_map,
                 std::set<std::pair<std::string, std::string>> strict_prefs,
                 std::vector<ModelStats> stats, double delta);

    const std::vector<std::vector<std::string>>& order() const { return order_; }
    const std::vector<ModelStats>& stats() const { return stats_; }
    double delta() const { return delta_; }

    std::vector<std::string> models() const;

    // Confidence for the unordered pair {a, b}.
    double confidence(const std::string& a, const std::string& b) const;

    // +1 if a is strictly preferred to b, -1 for the reverse, 0 if tied.
    int preference(const std::string& a, const std::string& b) const;

    const std::map<std::pair<std::string, std::string>, double>& conf_map() const {
        return conf_map_;
    }

private:
    std::vector<std::vector<std::string>> order_;
    // Keyed by (min, max) of the pair's ids.
    std::map<std::pair<std::string, std::string>, double> conf_map_;
    // (winner, loser) pairs of the strict preference relation.
    std::set<std::pair<std::string, std::string>> strict_prefs_;
    std::vector<ModelStats> stats_;
    double delta_ = 0.0;
};

// Weighted pairwise vote between two models. Annotators with records for
// both models vote for the one they scored higher on average; equal
// averages split the weight. A pair nobody saw both sides of yields
// voters = 0 and conf = 0.
VoteResult pairwise_vote(const HumanEvalTable& table, const std::string& model_i,
                         const std::string& model_j);

// Builds the within-cluster preference DAG. Candidate edges point from the
// vote winner to the loser with strength conf; they are inserted by
// strength descending, then |mean difference| descending, then (from, to)
// id ascending, skipping edges that would close a cycle.
PreferenceDag build_preference_dag(const std::vector<std::string>& cluster,
                                   const std::vector<VoteResult>& votes,
                                   const std::vector<ModelStats>& stats);

// Full pipeline: stats -> delta -> greedy clusters -> per-cluster voting
// and DAG refinement. Cross-cluster pairs carry confidence 1; ordered
// within-cluster pairs carry their direct vote confidence (or, lacking
// direct voters, the widest-path strength); still-tied pairs carry 0.
HumanRanking human_rank(const HumanEvalTable& table, const RankOptions& options = {});

} // namespace sparsealign
