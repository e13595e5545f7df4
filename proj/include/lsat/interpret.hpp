#pragma once

#include "lsat/program.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lsat::interpret {

struct CatalogEntry {
    std::string name;
    std::vector<std::string> aliases;
};

struct EntityCatalog {
    std::vector<CatalogEntry> participants;
    std::vector<CatalogEntry> positions;
};

// Heuristic extraction from the context's leading sentence: coordinated
// capitalized groups in order, the earlier group becoming participants and
// the later one positions. Throws std::invalid_argument when fewer than two
// groups are found.
EntityCatalog extract_entities(const std::string& context);

// Ordered first-match-wins rule table: token pattern -> program template.
// File format (one rule per line, '#' comments):
//   pattern => template
// Pattern tokens: literal words (case-insensitive; a trailing '*' makes the
// token a prefix match), entity slots <p1>/<pos1>/..., number slots <n1>,
// and '*' matching any run of tokens. Templates are DSL text with $p1 /
// $pos1 / $n1 placeholders.
class TriggerLexicon {
public:
    struct Rule {
        std::vector<std::string> pattern;
        std::string program_template;
    };

    static TriggerLexicon parse(const std::string& text);
    static TriggerLexicon load_file(const std::string& path);
    // The starter rule set shipped in data/lexicon.txt.
    static const TriggerLexicon& builtin();

    const std::vector<Rule>& rules() const { return rules_; }

private:
    std::vector<Rule> rules_;
};

struct InterpretResult {
    std::optional<program::Ast> ast; // unbound; names are catalog canonical names
    std::string diagnostic;          // set when a rule matched but produced nothing
};

// First matching rule wins; arguments bind by position relative to the
// trigger tokens. Negation cues wrap the nearest following atom in NOT.
// No match -> empty result with no diagnostic.
InterpretResult interpret_constraint(const std::string& sentence, const EntityCatalog& cat,
                                     const TriggerLexicon& lex);

// Like interpret_constraint, but also understands full roster options of
// the form "X: A, B, D; Y: C, E".
InterpretResult interpret_option(const std::string& question, const std::string& option,
                                 const EntityCatalog& cat, const TriggerLexicon& lex);

// Wraps line i in <linei>...</linei> and paragraph j in <Pj>...</Pj>.
// Idempotent: text already carrying marks is returned unchanged.
std::string annotate_positions(const std::string& text);

} // namespace lsat::interpret
