#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsat::logic {

// An atomic proposition extracted from text, e.g. "have keyboarding skills".
struct LogicSymbol {
    int id = 0;
    std::string surface;
};

struct Literal {
    int symbol = 0;
    bool negated = false;

    auto operator<=>(const Literal&) const = default;
};

inline Literal negate(Literal l) {
    l.negated = !l.negated;
    return l;
}

// antecedent -> consequent over literals. Self-implications (same symbol on
// both sides) are never constructed by the closure operations.
struct Implication {
    Literal antecedent;
    Literal consequent;

    auto operator<=>(const Implication&) const = default;
};

inline Implication contrapose(const Implication& i) {
    return Implication{negate(i.consequent), negate(i.antecedent)};
}

// (a -> b), (b -> c) => (a -> c) when the middle literals match exactly
// (same symbol and polarity). Results that would be self-implications are
// suppressed.
std::optional<Implication> transitive_join(const Implication& i1, const Implication& i2);

// Ordered, duplicate-free set of implications. Iteration follows insertion
// order so serialized output is byte-stable.
class ExpressionSet {
public:
    ExpressionSet() = default;
    ExpressionSet(std::initializer_list<Implication> exprs);

    // Returns true if the implication was new.
    bool insert(const Implication& i);
    bool contains(const Implication& i) const { return seen_.count(i) != 0; }

    std::size_t size() const { return order_.size(); }
    bool empty() const { return order_.empty(); }

    const std::vector<Implication>& items() const { return order_; }
    auto begin() const { return order_.begin(); }
    auto end() const { return order_.end(); }

    // Equality is on contents and order.
    bool operator==(const ExpressionSet& o) const { return order_ == o.order_; }

    // One implication per line: "[~]sym -> [~]sym", LF terminated.
    std::string serialize() const;
    static ExpressionSet deserialize(const std::string& text);

private:
    std::vector<Implication> order_;
    std::set<Implication> seen_;
};

// Fixpoint of {contrapose, transitive_join} over s, minus s itself.
// Derivations proceed breadth-first by round; within a round all
// contrapositions are emitted before transitive joins, each in insertion
// order, so the result order is deterministic.
ExpressionSet extend_closure(const ExpressionSet& s);

// A symbol occurrence inside one sentence, by byte offsets [begin, end).
struct SymbolSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    int symbol = 0;
};

// The negation cues scanned for by identify_logic. Exposed so callers can
// substitute their own list.
const std::vector<std::string>& default_negation_cues();

// Builds one implication per sentence matching a conditional template
// ("if a, then b" / "a thus b" / "b due to a" / "b unless a"). A literal is
// negated when a cue word occurs inside its span or in the gap before it.
// Sentences matching no template contribute nothing. Overlapping spans in a
// sentence are rejected.
ExpressionSet identify_logic(const std::vector<std::string>& sentences,
                             const std::vector<std::vector<SymbolSpan>>& spans,
                             const std::vector<std::string>& cues = default_negation_cues());

// "If [do not] <antecedent>, then [will not] <consequent>".
std::string verbalize(const Implication& i, const std::map<int, std::string>& surfaces);

// Subset of `extended` touching any of the given symbols, order preserved.
ExpressionSet select_related(const ExpressionSet& extended, const std::set<int>& option_symbols);

enum class AugmentOp { Delete, ReverseConditional, NegateSymbol };

// Produces a set that is literally similar but logically different from s:
// Delete drops one expression, ReverseConditional swaps one expression's
// sides, NegateSymbol flips one literal occurrence. Deterministic under the
// Mcg64 contract for `seed`. Throws std::invalid_argument on an empty set.
ExpressionSet augment_negative(const ExpressionSet& s, AugmentOp op, std::uint64_t seed);

} // namespace lsat::logic
