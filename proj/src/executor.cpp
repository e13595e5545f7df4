#include "lsat/executor.hpp"

#include <algorithm>
#include <map>

namespace lsat::executor {

using game::Assignment;
using game::GameConfig;
using program::Ast;
using program::Kind;
using program::TriBool;

namespace {

struct ForcedCell {
    int participant;
    int position;
    bool value;
};

// A program forces cells when it can only be satisfied one way: a To atom,
// NOT To, or a conjunction of such atoms.
bool collect_forced(const program::Node& n, bool negated, std::vector<ForcedCell>& out) {
    switch (n.kind) {
    case Kind::To:
        out.push_back({n.entities[0].id, n.entities[1].id, !negated});
        return true;
    case Kind::Not:
        return collect_forced(*n.children[0], !negated, out);
    case Kind::And: {
        if (negated) return false;
        for (const auto& c : n.children)
            if (!collect_forced(*c, false, out)) return false;
        return true;
    }
    default:
        return false;
    }
}

} // namespace

Assignment initial_assignment(const std::vector<Ast>& programs, const GameConfig& cfg) {
    Assignment a = game::new_assignment(cfg);
    auto p = game::propagate(a, cfg);
    if (!p) throw UnsatisfiableError("unsatisfiable constraints");
    a = *p;
    for (const auto& f : programs) {
        std::vector<ForcedCell> cells;
        if (!collect_forced(*f, false, cells)) continue;
        for (const ForcedCell& c : cells) {
            auto next = game::set_cell(a, c.participant, c.position, c.value, cfg);
            if (!next) throw UnsatisfiableError("unsatisfiable constraints");
            a = *next;
        }
    }
    return a;
}

std::vector<Assignment> solve(const std::vector<Ast>& programs, const GameConfig& cfg,
                              const SearchLimits& limits, SearchStats* stats_out,
                              const TraceSink& trace) {
    if (limits.max_nodes <= 0 || limits.max_assignments <= 0)
        throw std::invalid_argument("search limits must be positive");

    SearchStats stats;
    auto publish = [&] {
        if (stats_out) *stats_out = stats;
    };
    auto count_node = [&] {
        if (++stats.nodes > limits.max_nodes) {
            publish();
            throw LimitsExceeded("node limit exceeded", stats);
        }
    };

    struct Frontier {
        Assignment a;
        std::int64_t id;
    };
    std::int64_t next_id = 1;
    std::vector<Frontier> frontier{{initial_assignment(programs, cfg), 0}};

    for (std::size_t fi = 0; fi < programs.size(); ++fi) {
        const Ast& f = programs[fi];
        auto [parts, positions] = program::free_entities(f);
        (void)positions;
        std::vector<int> scope(parts.begin(), parts.end());
        std::vector<Frontier> next;
        for (const Frontier& node : frontier) {
            for (Assignment& c : game::enumerate_completions(node.a, cfg, scope)) {
                count_node();
                TriBool v = program::eval(f, c, cfg);
                if (trace)
                    trace({next_id, node.id, static_cast<int>(fi),
                           v == TriBool::True ? 'T' : v == TriBool::False ? 'F' : 'U'});
                std::int64_t id = next_id++;
                if (v != TriBool::False) next.push_back({std::move(c), id});
            }
        }
        frontier = std::move(next);
    }

    // Final grounding: complete every remaining Unknown column and keep the
    // assignments on which every program evaluates True.
    std::vector<int> all_parts(static_cast<std::size_t>(cfg.participant_count()));
    for (int p = 0; p < cfg.participant_count(); ++p) all_parts[static_cast<std::size_t>(p)] = p;

    std::map<std::string, Assignment> result;
    for (const Frontier& node : frontier) {
        for (Assignment& c : game::enumerate_completions(node.a, cfg, all_parts)) {
            count_node();
            if (!game::is_complete(c) || !game::validate(c, cfg)) continue;
            bool ok = true;
            for (const auto& f : programs)
                if (program::eval(f, c, cfg) != TriBool::True) {
                    ok = false;
                    break;
                }
            if (trace) trace({next_id, node.id, -1, ok ? 'T' : 'F'});
            ++next_id;
            if (!ok) continue;
            std::string key = c.digest();
            if (result.emplace(std::move(key), std::move(c)).second) {
                if (++stats.assignments > limits.max_assignments) {
                    publish();
                    throw LimitsExceeded("assignment limit exceeded", stats);
                }
            }
        }
    }
    publish();

    std::vector<Assignment> out;
    out.reserve(result.size());
    for (auto& [key, a] : result) out.push_back(std::move(a));
    return out;
}

OptionScore score_option(const std::vector<Assignment>& legit, const Ast& option,
                         const GameConfig& cfg, ScoreMode mode) {
    OptionScore s;
    s.mode = mode;
    long count = 0;
    for (const auto& a : legit)
        if (program::eval(option, a, cfg) == TriBool::True) ++count;
    if (mode == ScoreMode::Count)
        s.value = static_cast<double>(count);
    else
        s.value = legit.empty() ? 0.0 : static_cast<double>(count) / static_cast<double>(legit.size());
    return s;
}

int select_answer(const std::vector<OptionScore>& scores, Polarity polarity) {
    if (scores.size() != 5) throw std::invalid_argument("select_answer: need exactly 5 scores");
    int best = 0;
    for (int i = 1; i < 5; ++i) {
        double a = scores[static_cast<std::size_t>(i)].value;
        double b = scores[static_cast<std::size_t>(best)].value;
        if (polarity == Polarity::Positive ? a > b : a < b) best = i;
    }
    return best;
}

} // namespace lsat::executor
