#include "lsat/interpret.hpp"

#include "lsat/logic.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

namespace lsat::interpret {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '\''; }

std::vector<std::string> words(const std::string& text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!word_char(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && word_char(text[j])) ++j;
        out.push_back(text.substr(i, j - i));
        i = j;
    }
    return out;
}

enum class TokKind { Word, Part, Pos, Num };

struct Tok {
    TokKind kind;
    std::string text; // lowercased word, or canonical entity name
    int id = -1;
    long num = 0;
};

const std::vector<std::pair<std::string, long>>& number_words() {
    static const std::vector<std::pair<std::string, long>> nw = {
        {"zero", 0}, {"one", 1}, {"two", 2},   {"three", 3}, {"four", 4},  {"five", 5},
        {"six", 6},  {"seven", 7}, {"eight", 8}, {"nine", 9},  {"ten", 10}};
    return nw;
}

// Replaces catalog alias occurrences (longest alias first) with entity
// tokens; recognizes numerals and number words.
std::vector<Tok> recognize(const std::vector<std::string>& ws, const EntityCatalog& cat) {
    struct Alias {
        std::vector<std::string> toks;
        TokKind kind;
        int id;
        std::string canonical;
    };
    std::vector<Alias> aliases;
    auto add = [&](const CatalogEntry& e, TokKind kind, int id) {
        std::vector<std::string> names = e.aliases;
        names.insert(names.begin(), e.name);
        for (const auto& n : names) {
            std::vector<std::string> toks;
            for (auto& w : words(n)) toks.push_back(lower(w));
            if (!toks.empty()) aliases.push_back({std::move(toks), kind, id, e.name});
        }
    };
    for (std::size_t i = 0; i < cat.participants.size(); ++i)
        add(cat.participants[i], TokKind::Part, static_cast<int>(i));
    for (std::size_t i = 0; i < cat.positions.size(); ++i)
        add(cat.positions[i], TokKind::Pos, static_cast<int>(i));
    std::stable_sort(aliases.begin(), aliases.end(),
                     [](const Alias& a, const Alias& b) { return a.toks.size() > b.toks.size(); });

    std::vector<Tok> out;
    std::size_t i = 0;
    while (i < ws.size()) {
        std::string w = lower(ws[i]);
        const Alias* hit = nullptr;
        for (const auto& al : aliases) {
            if (i + al.toks.size() > ws.size()) continue;
            bool ok = true;
            for (std::size_t k = 0; k < al.toks.size(); ++k)
                if (lower(ws[i + k]) != al.toks[k]) {
                    ok = false;
                    break;
                }
            if (ok) {
                hit = &al;
                break;
            }
        }
        if (hit) {
            out.push_back(Tok{hit->kind, hit->canonical, hit->id});
            i += hit->toks.size();
            continue;
        }
        Tok t{TokKind::Word, w};
        if (std::all_of(w.begin(), w.end(),
                        [](unsigned char c) { return std::isdigit(c); }) &&
            !w.empty()) {
            t.kind = TokKind::Num;
            t.num = std::stol(w);
        } else {
            for (const auto& [nw, v] : number_words())
                if (w == nw) {
                    t.kind = TokKind::Num;
                    t.num = v;
                }
        }
        out.push_back(std::move(t));
        ++i;
    }
    return out;
}

struct Slot {
    std::string name; // p1, pos2, n1, ...
    Tok tok;
};

// Backtracking full match of a rule pattern (with implicit leading and
// trailing gaps) over the recognized token list.
bool match_pattern(const std::vector<std::string>& pat, const std::vector<Tok>& toks,
                   std::vector<Slot>& slots) {
    std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t pi,
                                                           std::size_t ti) -> bool {
        if (pi == pat.size()) return true; // trailing gap is implicit
        const std::string& p = pat[pi];
        if (p == "*") {
            for (std::size_t skip = ti; skip <= toks.size(); ++skip)
                if (go(pi + 1, skip)) return true;
            return false;
        }
        if (ti >= toks.size()) return false;
        const Tok& t = toks[ti];
        if (p.size() > 2 && p.front() == '<' && p.back() == '>') {
            std::string name = p.substr(1, p.size() - 2);
            TokKind want = TokKind::Word;
            if (name.rfind("pos", 0) == 0)
                want = TokKind::Pos;
            else if (name.rfind("p", 0) == 0)
                want = TokKind::Part;
            else if (name.rfind("n", 0) == 0)
                want = TokKind::Num;
            if (t.kind != want) return false;
            slots.push_back({name, t});
            if (go(pi + 1, ti + 1)) return true;
            slots.pop_back();
            return false;
        }
        if (t.kind != TokKind::Word && t.kind != TokKind::Num) return false;
        std::string lit = lower(p);
        bool ok;
        if (!lit.empty() && lit.back() == '*')
            ok = t.text.rfind(lit.substr(0, lit.size() - 1), 0) == 0;
        else
            ok = t.text == lit;
        return ok && go(pi + 1, ti + 1);
    };
    // implicit leading gap
    for (std::size_t start = 0; start <= toks.size(); ++start) {
        slots.clear();
        if (go(0, start)) return true;
    }
    return false;
}

std::string quote(const std::string& name) { return '"' + name + '"'; }

std::string substitute(const std::string& tmpl, const std::vector<Slot>& slots) {
    std::string out;
    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl[i] != '$') {
            out += tmpl[i++];
            continue;
        }
        std::size_t j = i + 1;
        while (j < tmpl.size() && (std::isalnum(static_cast<unsigned char>(tmpl[j])))) ++j;
        std::string name = tmpl.substr(i + 1, j - i - 1);
        const Slot* found = nullptr;
        for (const auto& s : slots)
            if (s.name == name) {
                found = &s;
                break;
            }
        if (!found) throw std::invalid_argument("lexicon template references unknown slot $" + name);
        if (found->tok.kind == TokKind::Num)
            out += std::to_string(found->tok.num);
        else
            out += quote(found->tok.text);
        i = j;
    }
    return out;
}

bool is_negation_cue(const Tok& t, const std::vector<Tok>& toks, std::size_t i) {
    if (t.kind != TokKind::Word) return false;
    for (const auto& cue : lsat::logic::default_negation_cues()) {
        if (cue == "none of") {
            if (t.text == "none" && i + 1 < toks.size() && toks[i + 1].text == "of") return true;
            continue;
        }
        if (cue == "n't") {
            if (t.text.size() > 2 && t.text.compare(t.text.size() - 3, 3, "n't") == 0) return true;
            continue;
        }
        if (t.text == cue) return true;
    }
    return false;
}

// Wraps the first relational atom accepted by `match` in NOT. Returns the
// rewritten tree and whether a wrap happened.
template <class Pred>
std::pair<program::Ast, bool> wrap_atom(const program::Ast& ast, const Pred& match) {
    using program::Kind;
    const auto& n = *ast;
    bool is_atom = n.kind == Kind::To || n.kind == Kind::Before || n.kind == Kind::After ||
                   n.kind == Kind::Adjacent;
    if (is_atom) {
        if (match(n)) return {program::make_not(ast), true};
        return {ast, false};
    }
    auto copy = std::make_shared<program::Node>(n);
    for (auto& c : copy->children) {
        auto [rewritten, done] = wrap_atom(c, match);
        if (done) {
            c = rewritten;
            return {copy, true};
        }
    }
    return {ast, false};
}

program::Ast apply_negation(program::Ast ast, const std::vector<Tok>& toks) {
    auto mentions = [](const program::Node& n, const std::string& name) {
        for (const auto& e : n.entities)
            if (e.name == name) return true;
        return false;
    };
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (!is_negation_cue(toks[i], toks, i)) continue;
        // the cue negates the atom of the nearest entity mentioned after it;
        // the nearest entity before the cue (the clause subject, when there
        // is one) disambiguates between atoms sharing that entity
        std::string after, before;
        for (std::size_t j = i + 1; j < toks.size(); ++j)
            if (toks[j].kind == TokKind::Part || toks[j].kind == TokKind::Pos) {
                after = toks[j].text;
                break;
            }
        for (std::size_t j = i; j-- > 0;)
            if (toks[j].kind == TokKind::Part || toks[j].kind == TokKind::Pos) {
                before = toks[j].text;
                break;
            }
        if (after.empty()) return program::make_not(std::move(ast));
        bool done = false;
        if (!before.empty()) {
            auto [rewritten, hit] = wrap_atom(ast, [&](const program::Node& n) {
                return mentions(n, after) && mentions(n, before);
            });
            if (hit) {
                ast = rewritten;
                done = true;
            }
        }
        if (!done) {
            auto [rewritten, hit] =
                wrap_atom(ast, [&](const program::Node& n) { return mentions(n, after); });
            ast = hit ? rewritten : program::make_not(std::move(ast));
        }
    }
    return ast;
}

} // namespace

TriggerLexicon TriggerLexicon::parse(const std::string& text) {
    TriggerLexicon lex;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t arrow = line.find("=>");
        if (arrow == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::invalid_argument("lexicon line " + std::to_string(lineno) +
                                            ": expected 'pattern => template'");
            continue;
        }
        Rule r;
        std::istringstream ps(line.substr(0, arrow));
        std::string tok;
        while (ps >> tok) r.pattern.push_back(tok);
        r.program_template = line.substr(arrow + 2);
        // trim template
        std::size_t b = r.program_template.find_first_not_of(" \t\r");
        std::size_t e = r.program_template.find_last_not_of(" \t\r");
        if (r.pattern.empty() || b == std::string::npos)
            throw std::invalid_argument("lexicon line " + std::to_string(lineno) +
                                        ": empty pattern or template");
        r.program_template = r.program_template.substr(b, e - b + 1);
        lex.rules_.push_back(std::move(r));
    }
    return lex;
}

TriggerLexicon TriggerLexicon::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open lexicon file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const TriggerLexicon& TriggerLexicon::builtin() {
    // Kept in sync with data/lexicon.txt; a reconstruction, not a published
    // rule set.
    static const TriggerLexicon lex = parse(R"(
if <p1> * serve* on * <pos1> * then <p2> * serve* on * <pos2> => IfThen({To($p1,$pos1)}, {To($p2,$pos2)})
if <p1> * <pos1> * then <p2> * <pos2> => IfThen({To($p1,$pos1)}, {To($p2,$pos2)})
<p1> and <p2> both serve* on * <pos1> => To($p1,$pos1) AND To($p2,$pos1)
<p1> and <p2> both * <pos1> => To($p1,$pos1) AND To($p2,$pos1)
exactly <n1> * <pos1> => COUNT($pos1) = $n1
at least <n1> * <pos1> => COUNT($pos1) >= $n1
at most <n1> * <pos1> => COUNT($pos1) <= $n1
<p1> * immediately before <p2> => Adjacent($p1,$p2) AND Before($p1,$p2)
<p1> * immediately after <p2> => Adjacent($p1,$p2) AND After($p1,$p2)
<p1> * next to <p2> => Adjacent($p1,$p2)
<p1> * earlier * than the <p2> => Before($p1,$p2)
<p1> * earlier * than <p2> => Before($p1,$p2)
<p1> * later * than the <p2> => After($p1,$p2)
<p1> * later * than <p2> => After($p1,$p2)
<p1> * before the <p2> => Before($p1,$p2)
<p1> * before <p2> => Before($p1,$p2)
<p1> * after the <p2> => After($p1,$p2)
<p1> * after <p2> => After($p1,$p2)
<p1> * serve* on * <pos1> => To($p1,$pos1)
<p1> * assigned to * <pos1> => To($p1,$pos1)
<p1> * in * <pos1> => To($p1,$pos1)
<p1> * on * <pos1> => To($p1,$pos1)
)");
    return lex;
}

EntityCatalog extract_entities(const std::string& context) {
    // Leading sentence only.
    std::size_t stop = context.find_first_of(".\n");
    std::string lead = context.substr(0, stop == std::string::npos ? context.size() : stop);

    // Split into segments on commas/semicolons/colons/dashes and the
    // coordinators "and"/"or"; a segment contributes an entity when it
    // contains a capitalized token (ignoring the sentence-initial word).
    struct Seg {
        std::vector<std::string> toks;
        bool first_of_sentence = false;
    };
    std::vector<Seg> segs;
    Seg cur;
    bool first = true;
    std::size_t i = 0;
    auto flush = [&]() {
        if (!cur.toks.empty()) segs.push_back(cur);
        cur = Seg{};
    };
    while (i <= lead.size()) {
        char c = i < lead.size() ? lead[i] : ',';
        if (i == lead.size() || c == ',' || c == ';' || c == ':' || c == '(' || c == ')') {
            ++i;
            flush();
            continue;
        }
        if (!word_char(c)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < lead.size() && word_char(lead[j])) ++j;
        std::string w = lead.substr(i, j - i);
        std::string wl = lower(w);
        if (wl == "and" || wl == "or") {
            flush();
        } else {
            if (cur.toks.empty() && first) cur.first_of_sentence = true;
            cur.toks.push_back(w);
        }
        first = false;
        i = j;
    }

    static const std::vector<std::string> stop_words = {"the", "a",  "an",   "each", "of",
                                                        "i",   "e",  "ie",   "eg",   "namely",
                                                        "viz", "to", "into", "onto"};
    auto entity_of = [&](const Seg& s) -> std::optional<std::string> {
        for (std::size_t k = 0; k < s.toks.size(); ++k) {
            const std::string& w = s.toks[k];
            if (k == 0 && s.first_of_sentence) continue;
            bool cap = std::isupper(static_cast<unsigned char>(w[0])) != 0;
            // single capital letters are names (committee "A"), never stopwords
            bool stop_word =
                w.size() > 1 &&
                std::find(stop_words.begin(), stop_words.end(), lower(w)) != stop_words.end();
            if (cap && !stop_word) {
                std::string name = w;
                for (std::size_t m = k + 1; m < s.toks.size(); ++m) name += " " + s.toks[m];
                return name;
            }
        }
        return std::nullopt;
    };

    // Consecutive entity-bearing segments form chains.
    std::vector<std::vector<std::string>> chains;
    bool open = false;
    for (const auto& s : segs) {
        if (auto e = entity_of(s)) {
            if (!open) {
                chains.emplace_back();
                open = true;
            }
            chains.back().push_back(*e);
        } else {
            open = false;
        }
    }
    if (chains.size() < 2)
        throw std::invalid_argument("extract_entities: could not find two entity groups");

    auto to_entries = [](const std::vector<std::string>& names) {
        std::vector<CatalogEntry> out;
        for (const auto& n : names) {
            CatalogEntry e{n, {}};
            auto ws = words(n);
            if (ws.size() > 1) e.aliases.push_back(ws[0]);
            out.push_back(std::move(e));
        }
        return out;
    };
    EntityCatalog cat;
    cat.participants = to_entries(chains[0]);
    cat.positions = to_entries(chains[1]);
    return cat;
}

InterpretResult interpret_constraint(const std::string& sentence, const EntityCatalog& cat,
                                     const TriggerLexicon& lex) {
    std::vector<Tok> toks = recognize(words(sentence), cat);
    for (const auto& rule : lex.rules()) {
        std::vector<Slot> slots;
        if (!match_pattern(rule.pattern, toks, slots)) continue;
        try {
            program::Ast ast = program::parse_program(substitute(rule.program_template, slots));
            return {apply_negation(std::move(ast), toks), ""};
        } catch (const std::exception& ex) {
            return {std::nullopt,
                    std::string("matched rule produced no program: ") + ex.what()};
        }
    }
    return {std::nullopt, ""};
}

namespace {

// "X: A, B, D; Y: C, E" -> conjunction of To atoms. Returns empty when the
// option is not a full roster.
std::optional<program::Ast> roster_program(const std::string& option, const EntityCatalog& cat) {
    std::vector<std::string> chunks;
    std::string curs;
    for (char c : option) {
        if (c == ';') {
            chunks.push_back(curs);
            curs.clear();
        } else {
            curs += c;
        }
    }
    chunks.push_back(curs);
    std::vector<program::Ast> atoms;
    int chunks_used = 0;
    for (const auto& chunk : chunks) {
        std::size_t colon = chunk.find(':');
        if (colon == std::string::npos) continue;
        std::vector<Tok> head = recognize(words(chunk.substr(0, colon)), cat);
        const Tok* pos = nullptr;
        for (const auto& t : head)
            if (t.kind == TokKind::Pos) pos = &t;
        if (!pos) return std::nullopt;
        std::vector<Tok> members = recognize(words(chunk.substr(colon + 1)), cat);
        int found = 0;
        for (const auto& t : members) {
            if (t.kind == TokKind::Part) {
                atoms.push_back(program::make_to(program::EntityRef{t.text},
                                                 program::EntityRef{pos->text}));
                ++found;
            } else if (t.kind != TokKind::Word || (t.text != "none" && t.text != "nobody")) {
                return std::nullopt; // stray token: not a clean roster
            }
        }
        if (found == 0 && members.empty()) return std::nullopt;
        ++chunks_used;
    }
    if (chunks_used == 0 || atoms.empty()) return std::nullopt;
    return program::make_and(std::move(atoms));
}

} // namespace

InterpretResult interpret_option(const std::string& question, const std::string& option,
                                 const EntityCatalog& cat, const TriggerLexicon& lex) {
    (void)question;
    if (auto roster = roster_program(option, cat)) return {roster, ""};
    InterpretResult r = interpret_constraint(option, cat, lex);
    if (!r.ast && r.diagnostic.empty()) r.diagnostic = "option matched no rule";
    return r;
}

std::string annotate_positions(const std::string& text) {
    if (text.empty()) return text;
    if (text.find("<line1>") != std::string::npos) return text; // already marked

    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    bool trailing_newline = !text.empty() && text.back() == '\n';
    if (!trailing_newline) lines.push_back(cur);

    std::ostringstream out;
    int line_no = 0, para_no = 0;
    bool in_para = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& l = lines[i];
        if (l.empty()) {
            if (in_para) {
                out << "</P" << para_no << ">";
                in_para = false;
            }
            out << '\n';
            continue;
        }
        if (!in_para) {
            ++para_no;
            out << "<P" << para_no << ">";
            in_para = true;
        } else {
            out << '\n';
        }
        ++line_no;
        out << "<line" << line_no << ">" << l << "</line" << line_no << ">";
        bool last_of_para = i + 1 >= lines.size() || lines[i + 1].empty();
        if (last_of_para) {
            out << "</P" << para_no << ">";
            in_para = false;
            if (i + 1 < lines.size() || trailing_newline) out << '\n';
        }
    }
    return out.str();
}

} // namespace lsat::interpret
