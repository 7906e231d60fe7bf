#pragma once

// Domain types and CSV ingestion for human and judge evaluation tables.
//
// Human tables are sparse: each annotator saw only a subset of the
// (model, sample) universe. Judge tables are dense: one judge, one score
// for every (model, sample) pair of the companion human table.

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace sparsealign {

// Inclusive integer grading scale.
struct ScoreScale {
    int min = 1;
    int max = 7;

    ScoreScale() = default;
    ScoreScale(int lo, int hi) : min(lo), max(hi) {
        if (min >= max) throw ConfigError("scale min must be < max");
    }

    bool contains(int s) const { return s >= min && s <= max; }
    int span() const { return max - min; }
    bool operator==(const ScoreScale&) const = default;
};

struct EvalRecord {
    std::string model_id;
    std::string sample_id;
    std::string annotator_id;
    int score = 0;

    auto operator<=>(const EvalRecord&) const = default;
};

struct JudgeRecord {
    std::string model_id;
    std::string sample_id;
    int score = 0;

    auto operator<=>(const JudgeRecord&) const = default;
};

// Sparse human evaluation table. Immutable once constructed; records are
// kept sorted by (model, sample, annotator) so equality is set equality.
class HumanEvalTable {
public:
    HumanEvalTable(std::vector<EvalRecord> records, ScoreScale scale);

    // Parses the CSV contract: header `model_id,sample_id,annotator_id,score`,
    // no quoting. Throws ParseError (naming the line) or ValidationError.
    static HumanEvalTable parse_csv(std::string_view source, ScoreScale scale);

    std::string to_csv() const;

    const std::vector<EvalRecord>& records() const { return records_; }
    const ScoreScale& scale() const { return scale_; }

    // Distinct model ids, ascending.
    std::vector<std::string> models() const;
    // Distinct (model, sample) pairs, ascending.
    std::vector<std::pair<std::string, std::string>> universe() const;

    bool operator==(const HumanEvalTable&) const = default;

private:
    std::vector<EvalRecord> records_;
    ScoreScale scale_;
};

// Dense table of one judge's scores.
class JudgeScoreTable {
public:
    JudgeScoreTable(std::string judge_id, std::vector<JudgeRecord> records,
                    ScoreScale scale);

    // CSV contract: header `judge_id,model_id,sample_id,score`; all rows must
    // carry the same judge id.
    static JudgeScoreTable parse_csv(std::string_view source, ScoreScale scale);

    std::string to_csv() const;

    const std::string& judge_id() const { return judge_id_; }
    const std::vector<JudgeRecord>& records() const { return records_; }
    const ScoreScale& scale() const { return scale_; }

    std::vector<std::string> models() const;

    bool operator==(const JudgeScoreTable&) const = default;

private:
    std::string judge_id_;
    std::vector<JudgeRecord> records_;
    ScoreScale scale_;
};

// Succeeds iff the judge covers every (model, sample) pair of the human
// table and both tables share a scale. Throws ValidationError listing the
// missing pairs otherwise.
void validate_coverage(const HumanEvalTable& human, const JudgeScoreTable& judge);

} // namespace sparsealign
