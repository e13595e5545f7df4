#include "lsat/logic.hpp"

#include "lsat/rng.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lsat::logic {

std::optional<Implication> transitive_join(const Implication& i1, const Implication& i2) {
    if (i1.consequent != i2.antecedent) return std::nullopt;
    if (i1.antecedent.symbol == i2.consequent.symbol) return std::nullopt;
    return Implication{i1.antecedent, i2.consequent};
}

ExpressionSet::ExpressionSet(std::initializer_list<Implication> exprs) {
    for (const auto& e : exprs) insert(e);
}

bool ExpressionSet::insert(const Implication& i) {
    if (!seen_.insert(i).second) return false;
    order_.push_back(i);
    return true;
}

std::string ExpressionSet::serialize() const {
    std::ostringstream out;
    for (const auto& i : order_) {
        if (i.antecedent.negated) out << '~';
        out << i.antecedent.symbol << " -> ";
        if (i.consequent.negated) out << '~';
        out << i.consequent.symbol << '\n';
    }
    return out.str();
}

ExpressionSet ExpressionSet::deserialize(const std::string& text) {
    ExpressionSet s;
    std::istringstream in(text);
    std::string line;
    auto parse_lit = [](std::istringstream& ls) {
        Literal l;
        ls >> std::ws;
        if (ls.peek() == '~') {
            ls.get();
            l.negated = true;
        }
        if (!(ls >> l.symbol)) throw std::invalid_argument("expression set: bad literal");
        return l;
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Literal a = parse_lit(ls);
        std::string arrow;
        ls >> arrow;
        if (arrow != "->") throw std::invalid_argument("expression set: expected '->'");
        Literal c = parse_lit(ls);
        s.insert(Implication{a, c});
    }
    return s;
}

ExpressionSet extend_closure(const ExpressionSet& s) {
    std::vector<Implication> all(s.items());
    std::set<Implication> seen(all.begin(), all.end());
    std::vector<Implication> derived;

    while (true) {
        std::vector<Implication> fresh;
        auto emit = [&](const Implication& i) {
            if (i.antecedent.symbol == i.consequent.symbol) return;
            if (seen.insert(i).second) fresh.push_back(i);
        };
        // Contrapositions of everything known so far, then all transitive
        // joins; `seen` filters re-derivations.
        for (const auto& i : all) emit(contrapose(i));
        for (std::size_t a = 0; a < all.size(); ++a)
            for (std::size_t b = 0; b < all.size(); ++b)
                if (auto j = transitive_join(all[a], all[b])) emit(*j);
        if (fresh.empty()) break;
        for (const auto& i : fresh) {
            all.push_back(i);
            derived.push_back(i);
        }
    }

    ExpressionSet out;
    for (const auto& i : derived)
        if (!s.contains(i)) out.insert(i);
    return out;
}

const std::vector<std::string>& default_negation_cues() {
    static const std::vector<std::string> cues = {
        "not", "n't", "unable", "no", "few", "little", "neither", "none of"};
    return cues;
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '\''; }

// Whole-word (or word-suffix, for cues like "n't") occurrence of `phrase`
// in `text`; both already lowercased.
bool contains_cue(const std::string& text, const std::string& phrase) {
    for (std::size_t pos = text.find(phrase); pos != std::string::npos;
         pos = text.find(phrase, pos + 1)) {
        std::size_t end = pos + phrase.size();
        bool left_ok = pos == 0 || !is_word_char(text[pos - 1]) || phrase[0] == '\'';
        bool right_ok = end == text.size() || !is_word_char(text[end]);
        if (left_ok && right_ok) return true;
    }
    return false;
}

bool any_cue(const std::string& text, const std::vector<std::string>& cues) {
    const std::string t = lower(text);
    for (const auto& c : cues)
        if (contains_cue(t, c)) return true;
    return false;
}

} // namespace

ExpressionSet identify_logic(const std::vector<std::string>& sentences,
                             const std::vector<std::vector<SymbolSpan>>& spans,
                             const std::vector<std::string>& cues) {
    if (sentences.size() != spans.size())
        throw std::invalid_argument("identify_logic: sentences/spans size mismatch");

    ExpressionSet out;
    for (std::size_t si = 0; si < sentences.size(); ++si) {
        const std::string& sent = sentences[si];
        std::vector<SymbolSpan> sp(spans[si]);
        std::sort(sp.begin(), sp.end(),
                  [](const SymbolSpan& a, const SymbolSpan& b) { return a.begin < b.begin; });
        for (std::size_t k = 0; k + 1 < sp.size(); ++k)
            if (sp[k].end > sp[k + 1].begin)
                throw std::invalid_argument("identify_logic: overlapping symbol spans");
        for (const auto& s : sp)
            if (s.end > sent.size() || s.begin >= s.end)
                throw std::invalid_argument("identify_logic: span out of range");
        if (sp.size() < 2) continue;

        const SymbolSpan& s1 = sp[0];
        const SymbolSpan& s2 = sp[1];

        // A literal is negated when a cue occurs between the previous symbol
        // (or sentence start) and the end of its own span.
        auto literal_at = [&](const SymbolSpan& span, std::size_t window_begin) {
            Literal l{span.symbol, false};
            l.negated = any_cue(sent.substr(window_begin, span.end - window_begin), cues);
            return l;
        };
        Literal l1 = literal_at(s1, 0);
        Literal l2 = literal_at(s2, s1.end);

        const std::string before = lower(sent.substr(0, s1.begin));
        const std::string between = lower(sent.substr(s1.end, s2.begin - s1.end));

        std::optional<Implication> expr;
        if (contains_cue(between, "unless")) {
            expr = Implication{l2, negate(l1)};
        } else if (contains_cue(before, "if")) {
            expr = Implication{l1, l2};
        } else if (contains_cue(between, "thus")) {
            expr = Implication{l1, l2};
        } else if (between.find("due to") != std::string::npos) {
            expr = Implication{l2, l1};
        }
        if (expr && expr->antecedent.symbol != expr->consequent.symbol) out.insert(*expr);
    }
    return out;
}

std::string verbalize(const Implication& i, const std::map<int, std::string>& surfaces) {
    auto surf = [&](int sym) {
        auto it = surfaces.find(sym);
        if (it == surfaces.end())
            throw std::invalid_argument("verbalize: no surface for symbol " + std::to_string(sym));
        return it->second;
    };
    std::string out = "If ";
    if (i.antecedent.negated) out += "do not ";
    out += surf(i.antecedent.symbol);
    out += ", then ";
    if (i.consequent.negated) out += "will not ";
    out += surf(i.consequent.symbol);
    return out;
}

ExpressionSet select_related(const ExpressionSet& extended, const std::set<int>& option_symbols) {
    ExpressionSet out;
    for (const auto& i : extended)
        if (option_symbols.count(i.antecedent.symbol) || option_symbols.count(i.consequent.symbol))
            out.insert(i);
    return out;
}

ExpressionSet augment_negative(const ExpressionSet& s, AugmentOp op, std::uint64_t seed) {
    if (s.empty()) throw std::invalid_argument("augment_negative: empty expression set");
    Mcg64 rng(seed);
    const auto& items = s.items();

    // A modification can collide with an existing expression (the result
    // must stay duplicate-free and differ from the input); redraw a bounded
    // number of times before giving up.
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::size_t idx = rng.draw(items.size());
        ExpressionSet out;
        bool ok = true;
        switch (op) {
        case AugmentOp::Delete:
            for (std::size_t k = 0; k < items.size(); ++k)
                if (k != idx) out.insert(items[k]);
            break;
        case AugmentOp::ReverseConditional: {
            Implication mod{items[idx].consequent, items[idx].antecedent};
            for (std::size_t k = 0; k < items.size(); ++k)
                ok &= out.insert(k == idx ? mod : items[k]);
            break;
        }
        case AugmentOp::NegateSymbol: {
            Implication mod = items[idx];
            if (rng.draw(2) == 0)
                mod.antecedent = negate(mod.antecedent);
            else
                mod.consequent = negate(mod.consequent);
            for (std::size_t k = 0; k < items.size(); ++k)
                ok &= out.insert(k == idx ? mod : items[k]);
            break;
        }
        }
        if (ok && !(out == s)) return out;
    }
    throw std::runtime_error("augment_negative: no distinct modification found");
}

} // namespace lsat::logic
