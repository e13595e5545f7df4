#pragma once

#include "lsat/game.hpp"
#include "lsat/program.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsat::executor {

struct SearchLimits {
    std::int64_t max_nodes = 1'000'000;
    std::int64_t max_assignments = 100'000;
};

struct SearchStats {
    std::int64_t nodes = 0;
    std::int64_t assignments = 0;
};

// Thrown when the search exceeds its limits; carries partial statistics so
// the failure is loud and diagnosable rather than a silent wrong answer.
struct LimitsExceeded : std::runtime_error {
    LimitsExceeded(const std::string& msg, SearchStats s)
        : std::runtime_error(msg), stats(s) {}
    SearchStats stats;
};

struct UnsatisfiableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ScoreMode { Count, Ratio };

struct OptionScore {
    int option_index = 0;
    ScoreMode mode = ScoreMode::Ratio;
    double value = 0.0;
    bool uninterpretable = false;
};

// One expansion/pruning event for external tree visualization.
struct TraceEvent {
    std::int64_t node = 0;
    std::int64_t parent = 0;
    int program_index = 0; // -1 for the final grounding pass
    char verdict = '?';    // 'T', 'F' or 'U'
};
using TraceSink = std::function<void(const TraceEvent&)>;

// Root assignment: repeatedly forces the cells of deterministic programs
// (To / NOT To atoms and conjunctions of them) from the all-Unknown grid.
// Throws UnsatisfiableError on contradiction.
game::Assignment initial_assignment(const std::vector<program::Ast>& programs,
                                    const game::GameConfig& cfg);

// Exact set of complete assignments satisfying every program: iterative
// frontier expansion per program (branches evaluating False are dropped),
// then a final grounding pass over remaining Unknowns filtered by the
// conjunction of all programs. Deduplicated, sorted by grid digest.
std::vector<game::Assignment> solve(const std::vector<program::Ast>& programs,
                                    const game::GameConfig& cfg, const SearchLimits& limits,
                                    SearchStats* stats = nullptr,
                                    const TraceSink& trace = nullptr);

OptionScore score_option(const std::vector<game::Assignment>& legit, const program::Ast& option,
                         const game::GameConfig& cfg, ScoreMode mode);

enum class Polarity { Positive, Negative };

// Argmax of the five scores (argmin for Negative questions); ties break to
// the lowest option index.
int select_answer(const std::vector<OptionScore>& scores, Polarity polarity);

} // namespace lsat::executor
