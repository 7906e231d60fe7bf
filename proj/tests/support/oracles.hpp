#pragma once

// Independent reference implementations used to cross-check the library.
// These deliberately share no code (and as little shape as possible) with
// the implementations they verify.

#include <algorithm>
#include <cstddef>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// Greedy tie-clustering, re-derived from the span rule: after sorting by
// mean descending (id ascending on exact ties), a model extends the open
// group iff the group's span including it stays within delta. Because the
// candidate is never above the group maximum, the span check reduces to
// (group_max - candidate) <= delta (or < for the strict boundary).
inline std::vector<std::vector<std::string>> greedy_clusters(
    std::vector<std::pair<std::string, double>> means, double delta,
    bool strict_boundary = false) {
    std::sort(means.begin(), means.end(),
              [](const auto& a, const auto& b) {
                  return a.second != b.second ? a.second > b.second
                                              : a.first < b.first;
              });
    std::vector<std::vector<std::string>> groups;
    double group_max = 0.0;
    for (const auto& [id, mean] : means) {
        const double span = groups.empty() ? 0.0 : group_max - mean;
        const bool fits = !groups.empty() &&
                          (strict_boundary ? span < delta : span <= delta);
        if (fits) {
            groups.back().push_back(id);
        } else {
            groups.push_back({id});
            group_max = mean;
        }
    }
    return groups;
}

// Kahn's algorithm: true iff the edge list over `n` nodes has no cycle.
inline bool is_acyclic(std::size_t n,
                       const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::vector<std::size_t>> next(n);
    std::vector<std::size_t> in_degree(n, 0);
    for (const auto& [u, v] : edges) {
        next[u].push_back(v);
        ++in_degree[v];
    }
    std::queue<std::size_t> ready;
    for (std::size_t u = 0; u < n; ++u) {
        if (in_degree[u] == 0) ready.push(u);
    }
    std::size_t removed = 0;
    while (!ready.empty()) {
        const std::size_t u = ready.front();
        ready.pop();
        ++removed;
        for (std::size_t v : next[u]) {
            if (--in_degree[v] == 0) ready.push(v);
        }
    }
    return removed == n;
}

// Breadth-first reachability over an edge list.
inline bool reachable(std::size_t n,
                      const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                      std::size_t from, std::size_t to) {
    if (from == to) return true;
    std::vector<std::vector<std::size_t>> next(n);
    for (const auto& [u, v] : edges) next[u].push_back(v);
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> queue;
    queue.push(from);
    seen[from] = true;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop();
        for (std::size_t v : next[u]) {
            if (v == to) return true;
            if (!seen[v]) {
                seen[v] = true;
                queue.push(v);
            }
        }
    }
    return false;
}

// Literal transcription of the pairwise-penalty case table.
//
//   human_pref: +1 a over b, -1 b over a, 0 tied (keys are (a, b) with
//   a < b lexicographically); conf: confidence per pair; judge_group:
//   model -> rank group index (lower is better).
inline double eps_rank(
    const std::vector<std::string>& models,
    const std::map<std::pair<std::string, std::string>, int>& human_pref,
    const std::map<std::pair<std::string, std::string>, double>& conf,
    const std::map<std::string, std::size_t>& judge_group) {
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < models.size(); ++i) {
        for (std::size_t j = i + 1; j < models.size(); ++j) {
            const auto key = std::make_pair(std::min(models[i], models[j]),
                                            std::max(models[i], models[j]));
            const int h = human_pref.at(key);
            const std::size_t ga = judge_group.at(key.first);
            const std::size_t gb = judge_group.at(key.second);
            const int v = ga < gb ? 1 : (ga > gb ? -1 : 0);
            ++pairs;
            if (h != 0) {
                if (v != h) sum += conf.at(key); // reversed or tied
            } else if (v != 0) {
                sum += 1.0; // judge orders a human tie
            }
        }
    }
    return pairs == 0 ? 0.0 : sum / static_cast<double>(pairs);
}

} // namespace oracle
