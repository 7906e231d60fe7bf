#include "eval_data.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace sparsealign {

namespace {

// Splits one CSV line on plain commas. The contract forbids quoting, so a
// field count mismatch is the only way commas in identifiers can show up.
std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

int parse_score(std::string_view field, size_t line_no) {
    int value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty()) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": score is not an integer: '" + std::string(field) + "'");
    }
    return value;
}

// Iterates non-empty lines of `source`, invoking `fn(line, line_no)`.
// Line numbers are 1-based and count every physical line.
template <typename Fn>
void for_each_line(std::string_view source, Fn&& fn) {
    size_t line_no = 0;
    size_t start = 0;
    while (start <= source.size()) {
        size_t end = source.find('\n', start);
        std::string_view line = end == std::string_view::npos
                                    ? source.substr(start)
                                    : source.substr(start, end - start);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) fn(line, line_no);
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
}

void require_header(std::string_view got, std::string_view want) {
    if (got != want) {
        throw ParseError("bad header: expected '" + std::string(want) +
                         "', got '" + std::string(got) + "'");
    }
}

void check_field_count(size_t got, size_t want, size_t line_no) {
    if (got != want) {
        throw ParseError("line " + std::to_string(line_no) + ": expected " +
                         std::to_string(want) + " fields, got " +
                         std::to_string(got) + " (identifiers must not contain commas)");
    }
}

void check_nonempty(const std::vector<std::string_view>& fields, size_t line_no) {
    for (const auto& f : fields) {
        if (f.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": empty field");
        }
    }
}

} // namespace

HumanEvalTable::HumanEvalTable(std::vector<EvalRecord> records, ScoreScale scale)
    : records_(std::move(records)), scale_(scale) {
    if (records_.empty()) throw ValidationError("no records");
    for (const auto& r : records_) {
        if (!scale_.contains(r.score)) {
            throw ValidationError("score " + std::to_string(r.score) + " for (" +
                                  r.model_id + ", " + r.sample_id + ", " +
                                  r.annotator_id + ") is outside scale [" +
                                  std::to_string(scale_.min) + ", " +
                                  std::to_string(scale_.max) + "]");
        }
    }
    std::sort(records_.begin(), records_.end());
    auto dup = std::adjacent_find(records_.begin(), records_.end(),
                                  [](const EvalRecord& a, const EvalRecord& b) {
                                      return a.model_id == b.model_id &&
                                             a.sample_id == b.sample_id &&
                                             a.annotator_id == b.annotator_id;
                                  });
    if (dup != records_.end()) {
        throw ValidationError("duplicate (model, sample, annotator) key: (" +
                              dup->model_id + ", " + dup->sample_id + ", " +
                              dup->annotator_id + ")");
    }
}

HumanEvalTable HumanEvalTable::parse_csv(std::string_view source, ScoreScale scale) {
    std::vector<EvalRecord> records;
    bool saw_header = false;
    for_each_line(source, [&](std::string_view line, size_t line_no) {
        if (!saw_header) {
            require_header(line, "model_id,sample_id,annotator_id,score");
            saw_header = true;
            return;
        }
        auto fields = split_fields(line);
        check_field_count(fields.size(), 4, line_no);
        check_nonempty(fields, line_no);
        int score = parse_score(fields[3], line_no);
        if (!scale.contains(score)) {
            throw ValidationError("line " + std::to_string(line_no) + ": score " +
                                  std::to_string(score) + " outside scale [" +
                                  std::to_string(scale.min) + ", " +
                                  std::to_string(scale.max) + "]");
        }
        records.push_back({std::string(fields[0]), std::string(fields[1]),
                           std::string(fields[2]), score});
    });
    if (!saw_header) throw ParseError("empty input: missing header");
    return HumanEvalTable(std::move(records), scale);
}

std::string HumanEvalTable::to_csv() const {
    std::ostringstream out;
    out << "model_id,sample_id,annotator_id,score\n";
    for (const auto& r : records_) {
        out << r.model_id << ',' << r.sample_id << ',' << r.annotator_id << ','
            << r.score << '\n';
    }
    return out.str();
}

std::vector<std::string> HumanEvalTable::models() const {
    std::set<std::string> ids;
    for (const auto& r : records_) ids.insert(r.model_id);
    return {ids.begin(), ids.end()};
}

std::vector<std::pair<std::string, std::string>> HumanEvalTable::universe() const {
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& r : records_) pairs.insert({r.model_id, r.sample_id});
    return {pairs.begin(), pairs.end()};
}

JudgeScoreTable::JudgeScoreTable(std::string judge_id, std::vector<JudgeRecord> records,
                                 ScoreScale scale)
    : judge_id_(std::move(judge_id)), records_(std::move(records)), scale_(scale) {
    if (judge_id_.empty()) throw ValidationError("empty judge id");
    if (records_.empty()) throw ValidationError("no records");
    for (const auto& r : records_) {
        if (!scale_.contains(r.score)) {
            throw ValidationError("score " + std::to_string(r.score) + " for (" +
                                  r.model_id + ", " + r.sample_id +
                                  ") is outside scale [" + std::to_string(scale_.min) +
                                  ", " + std::to_string(scale_.max) + "]");
        }
    }
    std::sort(records_.begin(), records_.end());
    auto dup = std::adjacent_find(records_.begin(), records_.end(),
                                  [](const JudgeRecord& a, const JudgeRecord& b) {
                                      return a.model_id == b.model_id &&
                                             a.sample_id == b.sample_id;
                                  });
    if (dup != records_.end()) {
        throw ValidationError("duplicate (model, sample) key: (" + dup->model_id +
                              ", " + dup->sample_id + ")");
    }
}

JudgeScoreTable JudgeScoreTable::parse_csv(std::string_view source, ScoreScale scale) {
    std::string judge_id;
    std::vector<JudgeRecord> records;
    bool saw_header = false;
    for_each_line(source, [&](std::string_view line, size_t line_no) {
        if (!saw_header) {
            require_header(line, "judge_id,model_id,sample_id,score");
            saw_header = true;
            return;
        }
        auto fields = split_fields(line);
        check_field_count(fields.size(), 4, line_no);
        check_nonempty(fields, line_no);
        if (judge_id.empty()) {
            judge_id = std::string(fields[0]);
        } else if (judge_id != fields[0]) {
            throw ValidationError("line " + std::to_string(line_no) +
                                  ": multiple judge ids in one table ('" + judge_id +
                                  "' vs '" + std::string(fields[0]) + "')");
        }
        int score = parse_score(fields[3], line_no);
        if (!scale.contains(score)) {
            throw ValidationError("line " + std::to_string(line_no) + ": score " +
                                  std::to_string(score) + " outside scale [" +
                                  std::to_string(scale.min) + ", " +
                                  std::to_string(scale.max) + "]");
        }
        records.push_back({std::string(fields[1]), std::string(fields[2]), score});
    });
    if (!saw_header) throw ParseError("empty input: missing header");
    return JudgeScoreTable(std::move(judge_id), std::move(records), scale);
}

std::string JudgeScoreTable::to_csv() const {
    std::ostringstream out;
    out << "judge_id,model_id,sample_id,score\n";
    for (const auto& r : records_) {
        out << judge_id_ << ',' << r.model_id << ',' << r.sample_id << ','
            << r.score << '\n';
    }
    return out.str();
}

std::vector<std::string> JudgeScoreTable::models() const {
    std::set<std::string> ids;
    for (const auto& r : records_) ids.insert(r.model_id);
    return {ids.begin(), ids.end()};
}

void validate_coverage(const HumanEvalTable& human, const JudgeScoreTable& judge) {
    if (human.scale() != judge.scale()) {
        throw ValidationError(
            "scale mismatch: human [" + std::to_string(human.scale().min) + ", " +
            std::to_string(human.scale().max) + "] vs judge [" +
            std::to_string(judge.scale().min) + ", " +
            std::to_string(judge.scale().max) + "]");
    }
    std::set<std::pair<std::string, std::string>> covered;
    for (const auto& r : judge.records()) covered.insert({r.model_id, r.sample_id});

    std::string missing;
    size_t missing_count = 0;
    for (const auto& pair : human.universe()) {
        if (!covered.contains(pair)) {
            ++missing_count;
            if (missing_count <= 10) {
                if (!missing.empty()) missing += ", ";
                missing += "(" + pair.first + ", " + pair.second + ")";
            }
        }
    }
    if (missing_count > 0) {
        if (missing_count > 10) missing += ", ...";
        throw ValidationError("judge '" + judge.judge_id() + "' missing " +
                              std::to_string(missing_count) + " (model, sample) pair" +
                              (missing_count == 1 ? "" : "s") + ": " + missing);
    }
}

} // namespace sparsealign
