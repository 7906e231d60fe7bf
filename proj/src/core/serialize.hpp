#pragma once

// Deterministic report emitters. Field order is fixed, floats are printed
// with exactly six decimals via std::to_chars (locale-independent), object
// keys are sorted, so identical inputs serialize to identical bytes.

#include <string>
#include <vector>

#include "align_metric.hpp"
#include "human_rank.hpp"
#include "tie_break.hpp"

namespace sparsealign {

// "0.120000"-style fixed formatting used across every emitter.
std::string format_fixed(double value);

std::string to_json(const ClusterRanking& ranking);

// {"order": [...], "conf": {"A|B": ...}, "delta": ..., "stats": [...]}
// with conf keys in lexicographic pair order and stats by model id.
std::string to_json(const HumanRanking& ranking);
std::string to_markdown(const HumanRanking& ranking);

// Reports are emitted by align score descending, judge id ascending.
std::string to_json(const std::vector<AlignmentReport>& reports);
std::string to_markdown(const std::vector<AlignmentReport>& reports);
// Tidy one-row-per-judge CSV of the alignment components, for plotting.
std::string to_csv(const std::vector<AlignmentReport>& reports);

} // namespace sparsealign
