#pragma once

#include "lsat/executor.hpp"
#include "lsat/interpret.hpp"
#include "lsat/logic.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lsat::harness {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Section { AR, LR, RC };

struct PositionSpec {
    std::string name;
    std::vector<std::string> aliases;
    std::optional<int> index;
};

struct LrSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    int symbol = 0;
};

struct LrSentence {
    std::string text;
    std::vector<LrSpan> spans;
};

struct LrAnnotations {
    std::vector<logic::LogicSymbol> symbols;
    std::vector<LrSentence> sentences;
};

struct Annotations {
    std::vector<std::string> participants;
    std::vector<PositionSpec> positions;
    std::optional<bool> ordered;
    std::optional<std::string> multiplicity; // "exactly-one" | "at-most-one"
    std::vector<std::pair<int, int>> capacities;
    std::vector<std::string> programs;        // DSL text, one per constraint
    std::vector<std::string> option_programs; // DSL text, one per option
    std::optional<LrAnnotations> lr;
};

struct ProblemRecord {
    std::string id;
    Section section = Section::AR;
    std::string context;
    std::string question;
    std::vector<std::string> options; // exactly 5 after loading
    int label = 0;
    executor::Polarity polarity = executor::Polarity::Positive;
    std::optional<Annotations> annotations;
};

// JSON-lines, one record per line (schema in docs/formats.md). Records with
// four options are padded to five by duplicating a seeded-random wrong
// option. Throws DataError with the offending record id.
std::vector<ProblemRecord> load_dataset(const std::string& path, std::uint64_t seed = 0);
std::vector<ProblemRecord> parse_dataset(const std::string& text, std::uint64_t seed = 0);
std::string serialize_record(const ProblemRecord& rec);

struct QuestionResult {
    std::string id;
    int predicted = -1; // -1 = abstained
    int gold = 0;
    std::vector<double> scores;
    std::string diagnostic;
    std::map<int, std::string> extended_contexts; // LR: option index -> extension text
};

struct EvalReport {
    std::vector<QuestionResult> questions;
    int total = 0;
    int correct = 0;
    int skipped = 0;
    double accuracy_percent = 0.0;
    // NL interpretation bookkeeping for the no-annotation path
    int interpreted_sentences = 0;
    int attempted_sentences = 0;
};

struct RunOptions {
    executor::SearchLimits limits;
    executor::ScoreMode mode = executor::ScoreMode::Ratio;
    std::uint64_t seed = 0;
    bool random_on_failure = false; // default: abstain
    bool use_annotated_programs = true;
    executor::TraceSink trace;
};

// The AR pipeline end to end: entities, constraint programs (annotated
// programs override rule interpretation), solve, per-option scores, answer.
EvalReport run_ar(const std::vector<ProblemRecord>& dataset, const interpret::TriggerLexicon& lex,
                  const RunOptions& opts);

// LR symbolic pipeline: identify, extend, select related expressions per
// option and verbalize them as extension artifacts. Prediction is a
// documented weak stand-in: the option best supported (by content-word
// overlap) by its own extended context, with context overlap as tie-break.
EvalReport run_lr_extend(const std::vector<ProblemRecord>& dataset);

double accuracy(const EvalReport& report);

// Monotone raw-percent -> LSAT-scale [120,180] conversion table.
class ScoreScale {
public:
    // anchors: (raw percent, scaled score), need not be sorted.
    explicit ScoreScale(std::vector<std::pair<double, int>> anchors);
    static ScoreScale builtin(); // the five published anchor pairs
    static ScoreScale load_file(const std::string& path);

    // Linear interpolation between anchors, clamped to [120,180].
    int scaled(double raw_percent) const;

private:
    std::vector<std::pair<double, int>> anchors_;
};

// Weighted average with AR:LR:RC = 1:2:1.
double overall_score(double ar_percent, double lr_percent, double rc_percent);

// GameConfig for a record: annotations when present, otherwise the
// extraction heuristic over the context's leading sentence.
std::pair<game::GameConfig, interpret::EntityCatalog> game_setup(const ProblemRecord& rec);

} // namespace lsat::harness
