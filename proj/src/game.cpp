#include "lsat/game.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lsat::game {

std::optional<int> GameConfig::find_participant(const std::string& name) const {
    for (const auto& p : participants)
        if (p.name == name) return p.id;
    return std::nullopt;
}

std::optional<int> GameConfig::find_position(const std::string& name) const {
    for (const auto& p : positions)
        if (p.name == name) return p.id;
    return std::nullopt;
}

void GameConfig::check() const {
    for (std::size_t i = 0; i < participants.size(); ++i) {
        if (participants[i].id != static_cast<int>(i))
            throw std::invalid_argument("participant ids must be 0..n-1 in order");
        for (std::size_t j = i + 1; j < participants.size(); ++j)
            if (participants[i].name == participants[j].name)
                throw std::invalid_argument("duplicate participant name: " + participants[i].name);
    }
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (positions[i].id != static_cast<int>(i))
            throw std::invalid_argument("position ids must be 0..n-1 in order");
        for (std::size_t j = i + 1; j < positions.size(); ++j)
            if (positions[i].name == positions[j].name)
                throw std::invalid_argument("duplicate position name: " + positions[i].name);
    }
    if (!capacities.empty() && capacities.size() != positions.size())
        throw std::invalid_argument("capacities must match positions");
    int min_sum = 0;
    long max_sum = 0;
    for (int p = 0; p < position_count(); ++p) {
        Capacity c = capacity(p);
        if (c.min < 0 || c.max < c.min)
            throw std::invalid_argument("malformed capacity bounds");
        min_sum += c.min;
        max_sum += c.max;
    }
    if (multiplicity == Multiplicity::ExactlyOne && position_count() > 0) {
        if (min_sum > participant_count() || max_sum < participant_count())
            throw std::invalid_argument("capacity bounds incompatible with exactly-one multiplicity");
    }
    if (ordered) {
        std::vector<int> idx;
        for (const auto& p : positions) {
            if (!p.index) throw std::invalid_argument("ordered game: every position needs an index");
            idx.push_back(*p.index);
        }
        std::sort(idx.begin(), idx.end());
        for (std::size_t i = 0; i < idx.size(); ++i)
            if (idx[i] != static_cast<int>(i) + 1)
                throw std::invalid_argument("ordered game: indices must be 1..n with no gaps");
    }
}

std::string Assignment::digest() const {
    std::string out;
    out.reserve(cells_.size());
    for (CellState c : cells_)
        out += c == CellState::True ? 'T' : c == CellState::False ? 'F' : '.';
    return out;
}

Assignment new_assignment(const GameConfig& cfg) {
    cfg.check();
    return Assignment(cfg.position_count(), cfg.participant_count());
}

namespace {

// Runs the unit rules to fixpoint in place. Returns false on contradiction.
bool propagate_inplace(Assignment& a, const GameConfig& cfg) {
    const int rows = a.rows(), cols = a.cols();
    bool changed = true;
    while (changed) {
        changed = false;
        // Column rules: at most one True per participant; exactly-one also
        // forces the last remaining cell True.
        for (int c = 0; c < cols; ++c) {
            int trues = 0, unknowns = 0, last_unknown = -1;
            for (int r = 0; r < rows; ++r) {
                CellState v = a.at(r, c);
                if (v == CellState::True) ++trues;
                if (v == CellState::Unknown) {
                    ++unknowns;
                    last_unknown = r;
                }
            }
            if (trues > 1) return false;
            if (trues == 1 && unknowns > 0) {
                for (int r = 0; r < rows; ++r)
                    if (a.at(r, c) == CellState::Unknown) a.set_raw(r, c, CellState::False);
                changed = true;
            }
            if (cfg.multiplicity == Multiplicity::ExactlyOne && trues == 0) {
                if (unknowns == 0) return rows == 0;
                if (unknowns == 1) {
                    a.set_raw(last_unknown, c, CellState::True);
                    changed = true;
                }
            }
        }
        // Row rules: capacity bounds.
        for (int r = 0; r < rows; ++r) {
            Capacity cap = cfg.capacity(r);
            int trues = 0, unknowns = 0;
            for (int c = 0; c < cols; ++c) {
                CellState v = a.at(r, c);
                if (v == CellState::True) ++trues;
                if (v == CellState::Unknown) ++unknowns;
            }
            if (trues > cap.max) return false;
            if (trues + unknowns < cap.min) return false;
            if (trues == cap.max && unknowns > 0) {
                for (int c = 0; c < cols; ++c)
                    if (a.at(r, c) == CellState::Unknown) a.set_raw(r, c, CellState::False);
                changed = true;
            }
            if (trues + unknowns == cap.min && unknowns > 0) {
                for (int c = 0; c < cols; ++c)
                    if (a.at(r, c) == CellState::Unknown) a.set_raw(r, c, CellState::True);
                changed = true;
            }
        }
    }
    return true;
}

} // namespace

std::optional<Assignment> propagate(const Assignment& a, const GameConfig& cfg) {
    Assignment out = a;
    if (!propagate_inplace(out, cfg)) return std::nullopt;
    return out;
}

std::optional<Assignment> set_cell(const Assignment& a, int participant, int position, bool value,
                                   const GameConfig& cfg) {
    if (position < 0 || position >= a.rows() || participant < 0 || participant >= a.cols())
        throw std::out_of_range("set_cell: cell out of range");
    CellState want = value ? CellState::True : CellState::False;
    CellState have = a.at(position, participant);
    if (have == want) return a;
    if (have != CellState::Unknown) return std::nullopt;
    Assignment out = a;
    out.set_raw(position, participant, want);
    if (!propagate_inplace(out, cfg)) return std::nullopt;
    return out;
}

namespace {

bool column_determined(const Assignment& a, int part) {
    for (int r = 0; r < a.rows(); ++r)
        if (a.at(r, part) == CellState::Unknown) return false;
    return true;
}

void enumerate_rec(const Assignment& a, const GameConfig& cfg, const std::vector<int>& scope,
                   std::vector<Assignment>& out) {
    int branch_part = -1;
    for (int p : scope) {
        if (!column_determined(a, p)) {
            branch_part = p;
            break;
        }
    }
    if (branch_part < 0) {
        out.push_back(a);
        return;
    }
    for (int r = 0; r < a.rows(); ++r) {
        if (a.at(r, branch_part) != CellState::Unknown) continue;
        if (auto next = set_cell(a, branch_part, r, true, cfg)) enumerate_rec(*next, cfg, scope, out);
    }
    if (cfg.multiplicity == Multiplicity::AtMostOne) {
        // Unassigned branch: falsify every remaining cell of the column.
        Assignment next = a;
        for (int r = 0; r < a.rows(); ++r)
            if (next.at(r, branch_part) == CellState::Unknown)
                next.set_raw(r, branch_part, CellState::False);
        if (auto prop = propagate(next, cfg)) enumerate_rec(*prop, cfg, scope, out);
    }
}

} // namespace

std::vector<Assignment> enumerate_completions(const Assignment& a, const GameConfig& cfg,
                                              const std::vector<int>& scope) {
    std::vector<int> ordered_scope(scope);
    std::sort(ordered_scope.begin(), ordered_scope.end());
    ordered_scope.erase(std::unique(ordered_scope.begin(), ordered_scope.end()),
                        ordered_scope.end());
    std::vector<Assignment> out;
    auto start = propagate(a, cfg);
    if (!start) return out;
    enumerate_rec(*start, cfg, ordered_scope, out);
    return out;
}

bool is_complete(const Assignment& a) {
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            if (a.at(r, c) == CellState::Unknown) return false;
    return true;
}

bool validate(const Assignment& a, const GameConfig& cfg) {
    for (int c = 0; c < a.cols(); ++c) {
        int trues = 0, unknowns = 0;
        for (int r = 0; r < a.rows(); ++r) {
            if (a.at(r, c) == CellState::True) ++trues;
            if (a.at(r, c) == CellState::Unknown) ++unknowns;
        }
        if (trues > 1) return false;
        if (cfg.multiplicity == Multiplicity::ExactlyOne && trues == 0 && unknowns == 0 &&
            a.rows() > 0)
            return false;
    }
    for (int r = 0; r < a.rows(); ++r) {
        Capacity cap = cfg.capacity(r);
        int trues = 0, unknowns = 0;
        for (int c = 0; c < a.cols(); ++c) {
            if (a.at(r, c) == CellState::True) ++trues;
            if (a.at(r, c) == CellState::Unknown) ++unknowns;
        }
        if (trues > cap.max) return false;
        if (trues + unknowns < cap.min) return false;
    }
    return true;
}

std::string render(const Assignment& a, const GameConfig& cfg) {
    std::size_t name_w = 0;
    for (const auto& p : cfg.positions) name_w = std::max(name_w, p.name.size());
    std::ostringstream out;
    out << std::string(name_w, ' ');
    for (const auto& p : cfg.participants) out << ' ' << (p.name.empty() ? "?" : p.name);
    out << '\n';
    for (int r = 0; r < a.rows(); ++r) {
        const std::string& n = cfg.positions[static_cast<std::size_t>(r)].name;
        out << n << std::string(name_w - n.size(), ' ');
        for (int c = 0; c < a.cols(); ++c) {
            CellState v = a.at(r, c);
            char ch = v == CellState::True ? 'T' : v == CellState::False ? 'F' : '.';
            std::size_t w = cfg.participants[static_cast<std::size_t>(c)].name.size();
            out << ' ' << ch << std::string(w > 1 ? w - 1 : 0, ' ');
        }
        out << '\n';
    }
    return out.str();
}

} // namespace lsat::game
