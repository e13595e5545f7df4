#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsat::game {

struct Participant {
    int id = 0;
    std::string name;
};

struct Position {
    int id = 0;
    std::string name;
    std::optional<int> index; // ordinal slot for ordered games, 1-based
};

enum class Multiplicity { ExactlyOne, AtMostOne };

struct Capacity {
    int min = 0;
    int max = 0;
};

struct GameConfig {
    std::vector<Participant> participants;
    std::vector<Position> positions;
    Multiplicity multiplicity = Multiplicity::ExactlyOne;
    std::vector<Capacity> capacities; // one per position; empty = [0, |participants|]
    bool ordered = false;

    int participant_count() const { return static_cast<int>(participants.size()); }
    int position_count() const { return static_cast<int>(positions.size()); }

    Capacity capacity(int pos) const {
        if (capacities.empty()) return {0, participant_count()};
        return capacities[static_cast<std::size_t>(pos)];
    }

    std::optional<int> find_participant(const std::string& name) const;
    std::optional<int> find_position(const std::string& name) const;

    // Throws std::invalid_argument when names collide, capacity bounds are
    // malformed, or ordered position indices are not 1..n.
    void check() const;
};

enum class CellState : std::uint8_t { Unknown, True, False };

// Tri-state grid, rows = positions, columns = participants. Immutable in
// use: mutating operations return fresh copies.
class Assignment {
public:
    Assignment() = default;
    Assignment(int positions, int participants)
        : rows_(positions), cols_(participants),
          cells_(static_cast<std::size_t>(positions) * static_cast<std::size_t>(participants),
                 CellState::Unknown) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    CellState at(int pos, int part) const { return cells_[idx(pos, part)]; }
    void set_raw(int pos, int part, CellState v) { cells_[idx(pos, part)] = v; }

    bool operator==(const Assignment&) const = default;
    bool operator<(const Assignment& o) const { return cells_ < o.cells_; }

    // Compact row-major digest, one char per cell in {T,F,.}.
    std::string digest() const;

private:
    std::size_t idx(int pos, int part) const {
        return static_cast<std::size_t>(pos) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(part);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<CellState> cells_;
};

// All-Unknown grid for the configuration.
Assignment new_assignment(const GameConfig& cfg);

// Sets one cell and runs unit propagation (column multiplicity rules, row
// capacity rules) to fixpoint. Contradiction is a normal empty result.
std::optional<Assignment> set_cell(const Assignment& a, int participant, int position, bool value,
                                   const GameConfig& cfg);

// Propagation alone, from the grid as-is.
std::optional<Assignment> propagate(const Assignment& a, const GameConfig& cfg);

// All extensions of `a` in which every participant in `scope` is fully
// determined (no Unknown in its column). Deterministic order: participants
// by id, positions by id; for at-most-one games the unassigned branch
// comes last.
std::vector<Assignment> enumerate_completions(const Assignment& a, const GameConfig& cfg,
                                              const std::vector<int>& scope);

bool is_complete(const Assignment& a);

// Multiplicity and capacity hold on the determined part of the grid.
bool validate(const Assignment& a, const GameConfig& cfg);

// Fixed-width debug table, rows = positions, cells in {T,F,.}.
std::string render(const Assignment& a, const GameConfig& cfg);

} // namespace lsat::game
