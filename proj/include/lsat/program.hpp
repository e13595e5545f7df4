#pragma once

#include "lsat/game.hpp"

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lsat::program {

enum class TriBool { False, Unknown, True };

TriBool tri_not(TriBool v);
TriBool tri_and(TriBool a, TriBool b);
TriBool tri_or(TriBool a, TriBool b);

enum class Kind {
    // boolean atoms
    To,
    Before,
    After,
    Adjacent,
    // boolean composition
    IfThen,
    And,
    Or,
    Not,
    Cmp,
    // numeric
    Value,
    Count,
    Const,
    Add,
    Sub,
    MaxOf,
    MinOf,
    // entity-valued
    ArgMax,
    ArgMin,
    Select,
    EntRef,
};

enum class CmpOp { Eq, Ne, Lt, Gt, Le, Ge };

enum class EntityKind { Unresolved, Participant, Position };

struct EntityRef {
    std::string name;
    EntityKind kind = EntityKind::Unresolved;
    int id = -1;

    bool resolved() const { return kind != EntityKind::Unresolved; }
};

struct Node;
using Ast = std::shared_ptr<const Node>;

// One AST node. Which fields are meaningful depends on `kind`:
//   To(p,pos), Before(p,q), After(p,q), Adjacent(p,q)  -> entities
//   IfThen    -> children, with the first `if_split` forming the condition set
//   And/Or    -> children (>= 2), Not -> 1 child
//   Cmp       -> cmp + 2 children (numeric, or entity-valued under Eq/Ne)
//   Value(p)  -> entities[0]; Const -> value; Add/Sub -> 2 children
//   Count     -> entities = optional participant subset + position last
//   MaxOf/MinOf/ArgMax/ArgMin -> entities = participants
//   Select    -> 1 numeric child (slot index); EntRef -> entities[0]
struct Node {
    Kind kind;
    CmpOp cmp = CmpOp::Eq;
    long value = 0;
    std::size_t if_split = 0;
    bool count_has_subset = false;
    std::vector<Ast> children;
    std::vector<EntityRef> entities;
};

enum class Sort { Bool, Num, Entity };

Sort sort_of(const Node& n);

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int column);
    int line;
    int column;
};

struct BindError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Recursive-descent parser for the DSL (grammar in docs/dsl.md). Keywords
// are case-insensitive; entity names are bare identifiers or quoted
// strings and stay symbolic until bind().
Ast parse_program(const std::string& text);

// Canonical printer; parse_program(print_program(a)) reproduces `a` and
// printing is idempotent after one pass.
std::string print_program(const Ast& ast);

// Resolves entity names against the configuration (slot position decides
// whether a name is looked up among participants or positions). Throws
// BindError on unknown names.
Ast bind(const Ast& ast, const game::GameConfig& cfg);

// Referenced (participant ids, position ids); requires a bound AST.
std::pair<std::set<int>, std::set<int>> free_entities(const Ast& ast);

// Kleene evaluation over a partial assignment. Never Unknown on a complete
// assignment. Before/After/Adjacent/Value/Select require an ordered game.
TriBool eval(const Ast& ast, const game::Assignment& a, const game::GameConfig& cfg);

// Convenience constructors used by the interpreter and tests.
Ast make_to(EntityRef p, EntityRef pos);
Ast make_not(Ast x);
Ast make_and(std::vector<Ast> xs);

} // namespace lsat::program
