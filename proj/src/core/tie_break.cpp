#include "tie_break.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace sparsealign {

namespace {

std::pair<std::string, std::string> pair_key(const std::string& a,
                                             const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

} // namespace

PreferenceDag::PreferenceDag(std::vector<std::string> nodes)
    : nodes_(std::move(nodes)),
      adj_(nodes_.size()),
      strength_(nodes_.size(), std::vector<double>(nodes_.size(), 0.0)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) index_[nodes_[i]] = i;
}

std::size_t PreferenceDag::index_of(const std::string& node) const {
    auto it = index_.find(node);
    if (it == index_.end()) throw ValidationError("unknown node: " + node);
    return it->second;
}

bool PreferenceDag::reachable_idx(std::size_t from, std::size_t to) const {
    if (from == to) return true;
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<std::size_t> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        std::size_t cur = stack.back();
        stack.pop_back();
        for (std::size_t next : adj_[cur]) {
            if (next == to) return true;
            if (!seen[next]) {
                seen[next] = true;
                stack.push_back(next);
            }
        }
    }
    return false;
}

bool PreferenceDag::reachable(const std::string& from, const std::string& to) const {
    std::size_t f = index_of(from);
    std::size_t t = index_of(to);
    if (f == t) return false;
    return reachable_idx(f, t);
}

bool PreferenceDag::add_edge_if_acyclic(const std::string& from,
                                        const std::string& to, double strength) {
    std::size_t f = index_of(from);
    std::size_t t = index_of(to);
    if (f == t) return false;
    if (reachable_idx(t, f)) return false; // would close a cycle
    adj_[f].push_back(t);
    strength_[f][t] = strength;
    edges_.push_back({from, to, strength});
    return true;
}

double PreferenceDag::widest_path_strength(const std::string& from,
                                           const std::string& to) const {
    std::size_t f = index_of(from);
    std::size_t t = index_of(to);
    if (f == t) return 0.0;
    // Bellman-Ford style relaxation of the maximin objective; the graph is
    // acyclic and tiny, so simplicity wins over asymptotics.
    std::vector<double> best(nodes_.size(), 0.0);
    best[f] = 2.0; // above any real strength; acts as +infinity
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t u = 0; u < nodes_.size(); ++u) {
            if (best[u] == 0.0) continue;
            for (std::size_t v : adj_[u]) {
                double via = std::min(best[u], strength_[u][v]);
                if (via > best[v]) {
                    best[v] = via;
                    changed = true;
                }
            }
        }
    }
    return best[t] > 1.0 ? 0.0 : best[t];
}

VoteResult pairwise_vote(const HumanEvalTable& table, const std::string& model_i,
                         const std::string& model_j) {
    if (model_i == model_j) throw ValidationError("pairwise_vote: identical models");

    struct Tally {
        std::int64_t sum_i = 0, cnt_i = 0;
        std::int64_t sum_j = 0, cnt_j = 0;
    };
    std::map<std::string, Tally> by_annotator;
    bool seen_i = false, seen_j = false;
    for (const auto& r : table.records()) {
        if (r.model_id == model_i) {
            seen_i = true;
            auto& t = by_annotator[r.annotator_id];
            t.sum_i += r.score;
            t.cnt_i += 1;
        } else if (r.model_id == model_j) {
            seen_j = true;
            auto& t = by_annotator[r.annotator_id];
            t.sum_j += r.score;
            t.cnt_j += 1;
        }
    }
    if (!seen_i) throw ValidationError("pairwise_vote: unknown model " + model_i);
    if (!seen_j) throw ValidationError("pairwise_vote: unknown model " + model_j);

    VoteResult vote;
    vote.model_i = model_i;
    vote.model_j = model_j;
    for (const auto& [annotator, t] : by_annotator) {
        if (t.cnt_i == 0 || t.cnt_j == 0) continue; // not in H_{i,j}
        const std::int64_t n_h = t.cnt_i + t.cnt_j;
        // mean_i > mean_j  <=>  sum_i * cnt_j > sum_j * cnt_i, exactly.
        const std::int64_t lhs = t.sum_i * t.cnt_j;
        const std::int64_t rhs = t.sum_j * t.cnt_i;
        if (lhs > rhs) {
            vote.wins_i += n_h;
        } else if (lhs < rhs) {
            vote.wins_j += n_h;
        } else {
            vote.split += n_h;
        }
        vote.total += n_h;
        vote.voters += 1;
    }
    if (vote.voters > 0) {
        const double denom = 2.0 * static_cast<double>(vote.total);
        vote.v_ij = static_cast<double>(2 * vote.wins_i + vote.split) / denom;
        vote.v_ji = static_cast<double>(2 * vote.wins_j + vote.split) / denom;
        vote.conf = std::fabs(vote.v_ij - vote.v_ji);
    }
    return vote;
}

PreferenceDag build_preference_dag(const std::vector<std::string>& cluster,
                                   const std::vector<VoteResult>& votes,
                                   const std::vector<ModelStats>& stats) {
    std::map<std::string, double> mean;
    for (const auto& s : stats) mean[s.model_id] = s.mean;

    struct Candidate {
        std::string from, to;
        double strength;
        double mean_gap;
    };
    std::set<std::string> members(cluster.begin(), cluster.end());
    std::vector<Candidate> candidates;
    for (const auto& v : votes) {
        if (!members.contains(v.model_i) || !members.contains(v.model_j)) continue;
        if (v.wins_i == v.wins_j) continue; // no net preference, no edge
        const bool i_wins = v.wins_i > v.wins_j;
        const std::string& from = i_wins ? v.model_i : v.model_j;
        const std::string& to = i_wins ? v.model_j : v.model_i;
        candidates.push_back(
            {from, to, v.conf, std::fabs(mean.at(v.model_i) - mean.at(v.model_j))});
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                  if (a.strength != b.strength) return a.strength > b.strength;
                  if (a.mean_gap != b.mean_gap) return a.mean_gap > b.mean_gap;
                  if (a.from != b.from) return a.from < b.from;
                  return a.to < b.to;
              });

    PreferenceDag dag(cluster);
    for (const auto& c : candidates) dag.add_edge_if_acyclic(c.from, c.to, c.strength);
    return dag;
}

HumanRanking::HumanRanking(
    std::vector<std::vector<std::string>> order,
    std::map<std::pair<std::string, std::string>, double> conf_map,
    std::set<std::pair<std::string, std::string>> strict_prefs,
    std::vector<ModelStats> stats, double delta)
    : order_(std::move(order)),
      conf_map_(std::move(conf_map)),
      strict_prefs_(std::move(strict_prefs)),
      stats_(std::move(stats)),
      delta_(delta) {}

std::vector<std::string> HumanRanking::models() const {
    std::vector<std::string> out;
    for (const auto& group : order_) out.insert(out.end(), group.begin(), group.end());
    std::sort(out.begin(), out.end());
    return out;
}

double HumanRanking::confidence(const std::string& a, const std::string& b) const {
    auto it = conf_map_.find(pair_key(a, b));
    if (it == conf_map_.end()) {
        throw ValidationError("no confidence entry for pair (" + a + ", " + b + ")");
    }
    return it->second;
}

int HumanRanking::preference(const std::string& a, const std::string& b) const {
    if (strict_prefs_.contains({a, b})) return 1;
    if (strict_prefs_.contains({b, a})) return -1;
    return 0;
}

namespace {

// Deterministic topological emission: among available nodes, highest mean
// first, model id as the final tie-break.
std::vector<std::string> topo_emit(const PreferenceDag& dag,
                                   const std::map<std::string, double>& mean) {
    const auto& nodes = dag.nodes();
    std::vector<std::size_t> in_degree(nodes.size(), 0);
    for (std::size_t u = 0; u < nodes.size(); ++u) {
        for (std::size_t v : dag.successors(u)) ++in_degree[v];
    }
    std::vector<bool> emitted(nodes.size(), false);
    std::vector<std::string> out;
    out.reserve(nodes.size());
    for (std::size_t step = 0; step < nodes.size(); ++step) {
        std::size_t pick = nodes.size();
        for (std::size_t u = 0; u < nodes.size(); ++u) {
            if (emitted[u] || in_degree[u] > 0) continue;
            if (pick == nodes.size()) {
                pick = u;
                continue;
            }
            const double mu = mean.at(nodes[u]);
            const double mp = mean.at(nodes[pick]);
            if (mu > mp || (mu == mp && nodes[u] < nodes[pick])) pick = u;
        }
        emitted[pick] = true;
        out.push_back(nodes[pick]);
        for (std::size_t v : dag.successors(pick)) --in_degree[v];
    }
    return out;
}

} // namespace

HumanRanking human_rank(const HumanEvalTable& table, const RankOptions& options) {
    const std::vector<ModelStats> stats = model_stats(table, options.estimator);
    const double delta = tie_threshold(stats, options.delta_factor);
    const ClusterRanking clusters = greedy_cluster(stats, delta, options.boundary);

    std::map<std::string, double> mean;
    for (const auto& s : stats) mean[s.model_id] = s.mean;

    std::vector<std::vector<std::string>> order;
    std::map<std::pair<std::string, std::string>, double> conf_map;
    std::set<std::pair<std::string, std::string>> strict_prefs;

    for (const auto& cluster : clusters.clusters) {
        if (cluster.size() == 1) {
            order.push_back(cluster);
            continue;
        }

        std::vector<VoteResult> votes;
        std::map<std::pair<std::string, std::string>, const VoteResult*> vote_of;
        for (std::size_t a = 0; a < cluster.size(); ++a) {
            for (std::size_t b = a + 1; b < cluster.size(); ++b) {
                votes.push_back(pairwise_vote(table, cluster[a], cluster[b]));
            }
        }
        for (const auto& v : votes) vote_of[pair_key(v.model_i, v.model_j)] = &v;

        const PreferenceDag dag = build_preference_dag(cluster, votes, stats);

        // Group consecutive emitted models that are mutually unordered with
        // everything already in the group; any reachable pair forces a split.
        const std::vector<std::string> emitted = topo_emit(dag, mean);
        std::vector<std::string> group;
        for (const auto& m : emitted) {
            bool tied_with_all = !group.empty();
            for (const auto& g : group) {
                if (dag.reachable(g, m) || dag.reachable(m, g)) {
                    tied_with_all = false;
                    break;
                }
            }
            if (!tied_with_all && !group.empty()) {
                order.push_back(group);
                group.clear();
            }
            group.push_back(m);
        }
        if (!group.empty()) order.push_back(group);

        for (std::size_t a = 0; a < cluster.size(); ++a) {
            for (std::size_t b = a + 1; b < cluster.size(); ++b) {
                const auto key = pair_key(cluster[a], cluster[b]);
                const VoteResult& v = *vote_of.at(key);
                const bool ab = dag.reachable(cluster[a], cluster[b]);
                const bool ba = dag.reachable(cluster[b], cluster[a]);
                if (ab) strict_prefs.insert({cluster[a], cluster[b]});
                if (ba) strict_prefs.insert({cluster[b], cluster[a]});
                if (ab || ba) {
                    conf_map[key] = v.voters > 0
                                        ? v.conf
                                        : dag.widest_path_strength(
                                              ab ? cluster[a] : cluster[b],
                                              ab ? cluster[b] : cluster[a]);
                } else {
                    conf_map[key] = 0.0;
                }
            }
        }
    }

    // Cross-cluster pairs: ordered by cluster position, full confidence.
    for (std::size_t c1 = 0; c1 < clusters.clusters.size(); ++c1) {
        for (std::size_t c2 = c1 + 1; c2 < clusters.clusters.size(); ++c2) {
            for (const auto& a : clusters.clusters[c1]) {
                for (const auto& b : clusters.clusters[c2]) {
                    strict_prefs.insert({a, b});
                    conf_map[pair_key(a, b)] = 1.0;
                }
            }
        }
    }

    return HumanRanking(std::move(order), std::move(conf_map),
                        std::move(strict_prefs), stats, delta);
}

} // namespace sparsealign
