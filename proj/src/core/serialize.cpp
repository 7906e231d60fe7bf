#include "serialize.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <system_error>

namespace sparsealign {

namespace {

void append_json_string(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void append_group_array(std::string& out,
                        const std::vector<std::vector<std::string>>& groups) {
    out += '[';
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (g > 0) out += ',';
        out += '[';
        for (std::size_t m = 0; m < groups[g].size(); ++m) {
            if (m > 0) out += ',';
            append_json_string(out, groups[g][m]);
        }
        out += ']';
    }
    out += ']';
}

std::vector<const AlignmentReport*> sorted_reports(
    const std::vector<AlignmentReport>& reports) {
    std::vector<const AlignmentReport*> out;
    out.reserve(reports.size());
    for (const auto& r : reports) out.push_back(&r);
    std::sort(out.begin(), out.end(),
              [](const AlignmentReport* a, const AlignmentReport* b) {
                  if (a->align_score != b->align_score) {
                      return a->align_score > b->align_score;
                  }
                  return a->judge_id < b->judge_id;
              });
    return out;
}

void append_report(std::string& out, const AlignmentReport& r) {
    out += "{\"judge\":";
    append_json_string(out, r.judge_id);
    out += ",\"alpha\":" + format_fixed(r.alpha);
    out += ",\"eps_rank\":" + format_fixed(r.eps_rank);
    out += ",\"eps_score\":" + format_fixed(r.eps_score);
    out += ",\"eps_total\":" + format_fixed(r.eps_total);
    out += ",\"align_score\":" + format_fixed(r.align_score);
    out += ",\"pairs\":[";
    for (std::size_t i = 0; i < r.pairs.size(); ++i) {
        const PairOutcome& p = r.pairs[i];
        if (i > 0) out += ',';
        out += "{\"pair\":";
        append_json_string(out, p.model_a + "|" + p.model_b);
        out += ",\"conf\":" + format_fixed(p.conf);
        out += ",\"p\":" + format_fixed(p.p);
        out += ",\"human\":";
        append_json_string(out, std::string(1, p.human));
        out += ",\"judge\":";
        append_json_string(out, std::string(1, p.judge));
        out += '}';
    }
    out += "]}";
}

} // namespace

std::string format_fixed(double value) {
    if (value == 0.0) value = 0.0; // normalize -0
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, 6);
    if (ec != std::errc{}) return "0.000000";
    return std::string(buf, ptr);
}

std::string to_json(const ClusterRanking& ranking) {
    std::string out = "{\"clusters\":";
    append_group_array(out, ranking.clusters);
    out += ",\"delta\":" + format_fixed(ranking.delta);
    out += '}';
    return out;
}

std::string to_json(const HumanRanking& ranking) {
    std::string out = "{\"order\":";
    append_group_array(out, ranking.order());

    out += ",\"conf\":{";
    bool first = true;
    for (const auto& [pair, conf] : ranking.conf_map()) {
        if (!first) out += ',';
        first = false;
        append_json_string(out, pair.first + "|" + pair.second);
        out += ':' + format_fixed(conf);
    }
    out += '}';

    out += ",\"delta\":" + format_fixed(ranking.delta());

    out += ",\"stats\":[";
    for (std::size_t i = 0; i < ranking.stats().size(); ++i) {
        const ModelStats& s = ranking.stats()[i];
        if (i > 0) out += ',';
        out += "{\"model\":";
        append_json_string(out, s.model_id);
        out += ",\"mean\":" + format_fixed(s.mean);
        out += ",\"std\":" + format_fixed(s.std_dev);
        out += ",\"n\":" + std::to_string(s.n);
        out += '}';
    }
    out += "]}";
    return out;
}

std::string to_markdown(const HumanRanking& ranking) {
    std::string out = "delta: " + format_fixed(ranking.delta()) + "\n\n";
    out += "| rank | models |\n|------|--------|\n";
    for (std::size_t g = 0; g < ranking.order().size(); ++g) {
        out += "| " + std::to_string(g + 1) + " | ";
        for (std::size_t m = 0; m < ranking.order()[g].size(); ++m) {
            if (m > 0) out += ", ";
            out += ranking.order()[g][m];
        }
        out += " |\n";
    }
    out += "\n| model | mean | std | n |\n|-------|------|-----|---|\n";
    for (const ModelStats& s : ranking.stats()) {
        out += "| " + s.model_id + " | " + format_fixed(s.mean) + " | " +
               format_fixed(s.std_dev) + " | " + std::to_string(s.n) + " |\n";
    }
    return out;
}

std::string to_json(const std::vector<AlignmentReport>& reports) {
    std::string out = "[";
    bool first = true;
    for (const AlignmentReport* r : sorted_reports(reports)) {
        if (!first) out += ',';
        first = false;
        append_report(out, *r);
    }
    out += ']';
    return out;
}

std::string to_markdown(const std::vector<AlignmentReport>& reports) {
    std::string out =
        "| judge | eps_rank | eps_score | align-score |\n"
        "|-------|----------|-----------|-------------|\n";
    for (const AlignmentReport* r : sorted_reports(reports)) {
        out += "| " + r->judge_id + " | " + format_fixed(r->eps_rank) + " | " +
               format_fixed(r->eps_score) + " | " + format_fixed(r->align_score) +
               " |\n";
    }
    return out;
}

std::string to_csv(const std::vector<AlignmentReport>& reports) {
    std::string out = "judge_id,eps_rank,eps_score,eps_total,align_score,alpha\n";
    for (const AlignmentReport* r : sorted_reports(reports)) {
        out += r->judge_id + ',' + format_fixed(r->eps_rank) + ',' +
               format_fixed(r->eps_score) + ',' + format_fixed(r->eps_total) + ',' +
               format_fixed(r->align_score) + ',' + format_fixed(r->alpha) + '\n';
    }
    return out;
}

} // namespace sparsealign
