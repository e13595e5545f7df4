#include "lsat/program.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <sstream>

namespace lsat::program {

TriBool tri_not(TriBool v) {
    if (v == TriBool::True) return TriBool::False;
    if (v == TriBool::False) return TriBool::True;
    return TriBool::Unknown;
}

TriBool tri_and(TriBool a, TriBool b) {
    if (a == TriBool::False || b == TriBool::False) return TriBool::False;
    if (a == TriBool::True && b == TriBool::True) return TriBool::True;
    return TriBool::Unknown;
}

TriBool tri_or(TriBool a, TriBool b) {
    if (a == TriBool::True || b == TriBool::True) return TriBool::True;
    if (a == TriBool::False && b == TriBool::False) return TriBool::False;
    return TriBool::Unknown;
}

Sort sort_of(const Node& n) {
    switch (n.kind) {
    case Kind::To:
    case Kind::Before:
    case Kind::After:
    case Kind::Adjacent:
    case Kind::IfThen:
    case Kind::And:
    case Kind::Or:
    case Kind::Not:
    case Kind::Cmp:
        return Sort::Bool;
    case Kind::Value:
    case Kind::Count:
    case Kind::Const:
    case Kind::Add:
    case Kind::Sub:
    case Kind::MaxOf:
    case Kind::MinOf:
        return Sort::Num;
    case Kind::ArgMax:
    case Kind::ArgMin:
    case Kind::Select:
    case Kind::EntRef:
        return Sort::Entity;
    }
    throw std::logic_error("sort_of: bad kind");
}

ParseError::ParseError(const std::string& msg, int line_, int column_)
    : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(column_)),
      line(line_), column(column_) {}

// ---------------------------------------------------------------------------
// Tokenizer

namespace {

enum class Tok {
    Ident,
    String,
    Number,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Plus,
    Minus,
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
    End,
};

struct Token {
    Tok type;
    std::string text;
    long number = 0;
    int line = 1;
    int column = 1;
};

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok t, std::string s, long num = 0) {
        out.push_back(Token{t, std::move(s), num, line, col});
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
            continue;
        }
        int start_col = col;
        auto advance = [&](std::size_t n) {
            i += n;
            col += static_cast<int>(n);
        };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            Token t{Tok::Ident, text.substr(i, j - i), 0, line, start_col};
            out.push_back(t);
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            long v = std::stol(text.substr(i, j - i));
            out.push_back(Token{Tok::Number, text.substr(i, j - i), v, line, start_col});
            advance(j - i);
            continue;
        }
        if (c == '"') {
            std::size_t j = i + 1;
            while (j < text.size() && text[j] != '"') ++j;
            if (j >= text.size()) throw ParseError("unterminated string", line, start_col);
            out.push_back(Token{Tok::String, text.substr(i + 1, j - i - 1), 0, line, start_col});
            advance(j - i + 1);
            continue;
        }
        switch (c) {
        case '(': push(Tok::LParen, "("); advance(1); continue;
        case ')': push(Tok::RParen, ")"); advance(1); continue;
        case '{': push(Tok::LBrace, "{"); advance(1); continue;
        case '}': push(Tok::RBrace, "}"); advance(1); continue;
        case ',': push(Tok::Comma, ","); advance(1); continue;
        case '+': push(Tok::Plus, "+"); advance(1); continue;
        case '-': push(Tok::Minus, "-"); advance(1); continue;
        case '=': push(Tok::Eq, "="); advance(1); continue;
        case '!':
            if (i + 1 < text.size() && text[i + 1] == '=') {
                push(Tok::Ne, "!=");
                advance(2);
                continue;
            }
            throw ParseError("unexpected '!'", line, start_col);
        case '<':
            if (i + 1 < text.size() && text[i + 1] == '=') {
                push(Tok::Le, "<=");
                advance(2);
            } else {
                push(Tok::Lt, "<");
                advance(1);
            }
            continue;
        case '>':
            if (i + 1 < text.size() && text[i + 1] == '=') {
                push(Tok::Ge, ">=");
                advance(2);
            } else {
                push(Tok::Gt, ">");
                advance(1);
            }
            continue;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", line, start_col);
        }
    }
    out.push_back(Token{Tok::End, "", 0, line, col});
    return out;
}

bool is_keyword(const std::string& up) {
    static const std::set<std::string> kw = {"TO",  "BEFORE", "AFTER", "ADJACENT", "IFTHEN",
                                            "IF",  "THEN",   "AND",   "OR",       "NOT",
                                            "VALUE", "COUNT", "MAX",  "MIN",      "ARGMAX",
                                            "ARGMIN", "SELECT"};
    return kw.count(up) != 0;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    Ast parse() {
        Ast e = or_expr();
        expect(Tok::End, "end of input");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& get() { return toks_[pos_++]; }
    bool at(Tok t) const { return peek().type == t; }

    bool at_kw(const char* kw) const {
        return peek().type == Tok::Ident && upper(peek().text) == kw;
    }

    void expect(Tok t, const char* what) {
        if (!at(t)) fail(std::string("expected ") + what);
        get();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " (got '" + peek().text + "')", peek().line, peek().column);
    }

    bool eat_kw(const char* kw) {
        if (at_kw(kw)) {
            get();
            return true;
        }
        return false;
    }

    Ast or_expr() {
        Ast lhs = and_expr();
        std::vector<Ast> parts{lhs};
        while (eat_kw("OR")) parts.push_back(and_expr());
        if (parts.size() == 1) return lhs;
        auto n = std::make_shared<Node>();
        n->kind = Kind::Or;
        n->children = std::move(parts);
        return n;
    }

    Ast and_expr() {
        Ast lhs = not_expr();
        std::vector<Ast> parts{lhs};
        while (eat_kw("AND")) parts.push_back(not_expr());
        if (parts.size() == 1) return lhs;
        auto n = std::make_shared<Node>();
        n->kind = Kind::And;
        n->children = std::move(parts);
        return n;
    }

    Ast not_expr() {
        if (eat_kw("NOT")) {
            auto n = std::make_shared<Node>();
            n->kind = Kind::Not;
            n->children.push_back(not_expr());
            require_sort(n->children[0], Sort::Bool, "NOT");
            return n;
        }
        return bool_atom();
    }

    Ast bool_atom() {
        if (at(Tok::LParen)) {
            get();
            Ast e = or_expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (at_kw("IF")) {
            get();
            Ast cond = or_expr();
            if (!eat_kw("THEN")) fail("expected THEN");
            Ast then = or_expr();
            auto n = std::make_shared<Node>();
            n->kind = Kind::IfThen;
            n->children = {cond, then};
            n->if_split = 1;
            return n;
        }
        if (at_kw("IFTHEN")) {
            get();
            expect(Tok::LParen, "'('");
            std::vector<Ast> cond = bool_set();
            expect(Tok::Comma, "','");
            std::vector<Ast> then = bool_set();
            expect(Tok::RParen, "')'");
            auto n = std::make_shared<Node>();
            n->kind = Kind::IfThen;
            n->if_split = cond.size();
            n->children = std::move(cond);
            n->children.insert(n->children.end(), then.begin(), then.end());
            return n;
        }
        for (auto [kw, kind] : {std::pair{"TO", Kind::To}, {"BEFORE", Kind::Before},
                                {"AFTER", Kind::After}, {"ADJACENT", Kind::Adjacent}}) {
            if (at_kw(kw)) {
                get();
                expect(Tok::LParen, "'('");
                EntityRef a = entity_name();
                expect(Tok::Comma, "','");
                EntityRef b = entity_name();
                expect(Tok::RParen, "')'");
                auto n = std::make_shared<Node>();
                n->kind = kind;
                n->entities = {std::move(a), std::move(b)};
                return n;
            }
        }
        return comparison();
    }

    std::vector<Ast> bool_set() {
        expect(Tok::LBrace, "'{'");
        std::vector<Ast> out;
        if (!at(Tok::RBrace)) {
            out.push_back(or_expr());
            while (at(Tok::Comma)) {
                get();
                out.push_back(or_expr());
            }
        }
        expect(Tok::RBrace, "'}'");
        return out;
    }

    bool at_num_head() const {
        return at(Tok::Number) || at_kw("VALUE") || at_kw("COUNT") || at_kw("MAX") ||
               at_kw("MIN");
    }

    Ast comparison() {
        if (at_num_head()) {
            Ast lhs = num_expr();
            CmpOp op = cmp_op();
            Ast rhs = num_expr();
            auto n = std::make_shared<Node>();
            n->kind = Kind::Cmp;
            n->cmp = op;
            n->children = {lhs, rhs};
            return n;
        }
        if (at_kw("ARGMAX") || at_kw("ARGMIN") || at_kw("SELECT") || at(Tok::Ident) ||
            at(Tok::String)) {
            Ast lhs = ent_operand();
            CmpOp op = cmp_op();
            if (op != CmpOp::Eq && op != CmpOp::Ne)
                fail("entity comparison supports only = and !=");
            Ast rhs = ent_operand();
            auto n = std::make_shared<Node>();
            n->kind = Kind::Cmp;
            n->cmp = op;
            n->children = {lhs, rhs};
            return n;
        }
        fail("expected boolean expression");
    }

    CmpOp cmp_op() {
        switch (peek().type) {
        case Tok::Eq: get(); return CmpOp::Eq;
        case Tok::Ne: get(); return CmpOp::Ne;
        case Tok::Lt: get(); return CmpOp::Lt;
        case Tok::Gt: get(); return CmpOp::Gt;
        case Tok::Le: get(); return CmpOp::Le;
        case Tok::Ge: get(); return CmpOp::Ge;
        default: fail("expected comparison operator");
        }
    }

    Ast num_expr() {
        Ast lhs = num_term();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            Kind k = at(Tok::Plus) ? Kind::Add : Kind::Sub;
            get();
            Ast rhs = num_term();
            auto n = std::make_shared<Node>();
            n->kind = k;
            n->children = {lhs, rhs};
            lhs = n;
        }
        return lhs;
    }

    Ast num_term() {
        if (at(Tok::Number)) {
            auto n = std::make_shared<Node>();
            n->kind = Kind::Const;
            n->value = get().number;
            return n;
        }
        if (at(Tok::LParen)) {
            get();
            Ast e = num_expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (at_kw("VALUE")) {
            get();
            expect(Tok::LParen, "'('");
            EntityRef p = entity_name();
            expect(Tok::RParen, "')'");
            auto n = std::make_shared<Node>();
            n->kind = Kind::Value;
            n->entities = {std::move(p)};
            return n;
        }
        if (at_kw("COUNT")) {
            get();
            expect(Tok::LParen, "'('");
            auto n = std::make_shared<Node>();
            n->kind = Kind::Count;
            if (at(Tok::LBrace)) {
                get();
                n->count_has_subset = true;
                if (!at(Tok::RBrace)) {
                    n->entities.push_back(entity_name());
                    while (at(Tok::Comma)) {
                        get();
                        n->entities.push_back(entity_name());
                    }
                }
                expect(Tok::RBrace, "'}'");
                expect(Tok::Comma, "','");
            }
            n->entities.push_back(entity_name());
            expect(Tok::RParen, "')'");
            return n;
        }
        for (auto [kw, kind] : {std::pair{"MAX", Kind::MaxOf}, {"MIN", Kind::MinOf}}) {
            if (at_kw(kw)) {
                get();
                auto n = std::make_shared<Node>();
                n->kind = kind;
                n->entities = entity_list();
                return n;
            }
        }
        fail("expected numeric expression");
    }

    Ast ent_operand() {
        for (auto [kw, kind] : {std::pair{"ARGMAX", Kind::ArgMax}, {"ARGMIN", Kind::ArgMin}}) {
            if (at_kw(kw)) {
                get();
                auto n = std::make_shared<Node>();
                n->kind = kind;
                n->entities = entity_list();
                return n;
            }
        }
        if (at_kw("SELECT")) {
            get();
            expect(Tok::LParen, "'('");
            Ast idx = num_expr();
            expect(Tok::RParen, "')'");
            auto n = std::make_shared<Node>();
            n->kind = Kind::Select;
            n->children = {idx};
            return n;
        }
        auto n = std::make_shared<Node>();
        n->kind = Kind::EntRef;
        n->entities = {entity_name()};
        return n;
    }

    std::vector<EntityRef> entity_list() {
        expect(Tok::LParen, "'('");
        std::vector<EntityRef> out;
        out.push_back(entity_name());
        while (at(Tok::Comma)) {
            get();
            out.push_back(entity_name());
        }
        expect(Tok::RParen, "')'");
        return out;
    }

    EntityRef entity_name() {
        if (at(Tok::String)) return EntityRef{get().text};
        if (at(Tok::Ident)) {
            if (is_keyword(upper(peek().text))) fail("reserved word used as entity name");
            return EntityRef{get().text};
        }
        fail("expected entity name");
    }

    void require_sort(const Ast& a, Sort s, const char* ctx) {
        if (sort_of(*a) != s) throw ParseError(std::string("type error in ") + ctx, peek().line,
                                               peek().column);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

Ast parse_program(const std::string& text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Printer

namespace {

bool bare_ok(const std::string& name) {
    if (name.empty() || is_keyword(upper(name))) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

std::string ent_str(const EntityRef& e) {
    if (bare_ok(e.name)) return e.name;
    return '"' + e.name + '"';
}

std::string cmp_str(CmpOp op) {
    switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Gt: return ">";
    case CmpOp::Le: return "<=";
    case CmpOp::Ge: return ">=";
    }
    return "?";
}

// precedence: OR(1) < AND(2) < NOT(3); atoms 4
int prec(const Node& n) {
    switch (n.kind) {
    case Kind::Or: return 1;
    case Kind::And: return 2;
    case Kind::Not: return 3;
    default: return 4;
    }
}

std::string print_node(const Node& n);

std::string join_ents(const std::vector<EntityRef>& es, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (i) out += sep;
        out += ent_str(es[i]);
    }
    return out;
}

std::string print_num(const Node& n, bool parenthesize_compound) {
    std::string s = print_node(n);
    if (parenthesize_compound && (n.kind == Kind::Add || n.kind == Kind::Sub))
        return "(" + s + ")";
    return s;
}

std::string print_node(const Node& n) {
    switch (n.kind) {
    case Kind::To: return "To(" + join_ents(n.entities, ",") + ")";
    case Kind::Before: return "Before(" + join_ents(n.entities, ",") + ")";
    case Kind::After: return "After(" + join_ents(n.entities, ",") + ")";
    case Kind::Adjacent: return "Adjacent(" + join_ents(n.entities, ",") + ")";
    case Kind::IfThen: {
        std::string out = "IfThen({";
        for (std::size_t i = 0; i < n.if_split; ++i) {
            if (i) out += ", ";
            out += print_node(*n.children[i]);
        }
        out += "}, {";
        for (std::size_t i = n.if_split; i < n.children.size(); ++i) {
            if (i > n.if_split) out += ", ";
            out += print_node(*n.children[i]);
        }
        return out + "})";
    }
    case Kind::And:
    case Kind::Or: {
        const char* sep = n.kind == Kind::And ? " AND " : " OR ";
        std::string out;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            const Node& c = *n.children[i];
            std::string s = print_node(c);
            // Same-kind children keep parens so the n-ary flattening done by
            // the parser cannot change the tree shape on a round trip.
            if (prec(c) < prec(n) || c.kind == n.kind) s = "(" + s + ")";
            if (i) out += sep;
            out += s;
        }
        return out;
    }
    case Kind::Not: {
        const Node& c = *n.children[0];
        std::string s = print_node(c);
        if (c.kind == Kind::Cmp || prec(c) < prec(n)) s = "(" + s + ")";
        return "NOT " + s;
    }
    case Kind::Cmp:
        return print_num(*n.children[0], false) + " " + cmp_str(n.cmp) + " " +
               print_num(*n.children[1], false);
    case Kind::Value: return "VALUE(" + ent_str(n.entities[0]) + ")";
    case Kind::Count: {
        std::string out = "COUNT(";
        if (n.count_has_subset) {
            out += "{";
            for (std::size_t i = 0; i + 1 < n.entities.size(); ++i) {
                if (i) out += ",";
                out += ent_str(n.entities[i]);
            }
            out += "}, ";
        }
        return out + ent_str(n.entities.back()) + ")";
    }
    case Kind::Const: return std::to_string(n.value);
    case Kind::Add:
        return print_num(*n.children[0], false) + " + " + print_num(*n.children[1], true);
    case Kind::Sub:
        return print_num(*n.children[0], false) + " - " + print_num(*n.children[1], true);
    case Kind::MaxOf: return "MAX(" + join_ents(n.entities, ",") + ")";
    case Kind::MinOf: return "MIN(" + join_ents(n.entities, ",") + ")";
    case Kind::ArgMax: return "ARGMAX(" + join_ents(n.entities, ",") + ")";
    case Kind::ArgMin: return "ARGMIN(" + join_ents(n.entities, ",") + ")";
    case Kind::Select: return "SELECT(" + print_node(*n.children[0]) + ")";
    case Kind::EntRef: return ent_str(n.entities[0]);
    }
    throw std::logic_error("print: bad kind");
}

} // namespace

std::string print_program(const Ast& ast) { return print_node(*ast); }

// ---------------------------------------------------------------------------
// Binding

namespace {

EntityRef resolve(const EntityRef& e, const game::GameConfig& cfg, EntityKind want) {
    EntityRef out = e;
    if (want == EntityKind::Participant) {
        if (auto id = cfg.find_participant(e.name)) {
            out.kind = EntityKind::Participant;
            out.id = *id;
            return out;
        }
        throw BindError("unknown participant: " + e.name);
    }
    if (auto id = cfg.find_position(e.name)) {
        out.kind = EntityKind::Position;
        out.id = *id;
        return out;
    }
    throw BindError("unknown position: " + e.name);
}

} // namespace

Ast bind(const Ast& ast, const game::GameConfig& cfg) {
    auto n = std::make_shared<Node>(*ast);
    // qualified call: ADL on shared_ptr would otherwise also find std::bind
    for (auto& c : n->children) c = lsat::program::bind(c, cfg);
    switch (n->kind) {
    case Kind::To:
        n->entities[0] = resolve(n->entities[0], cfg, EntityKind::Participant);
        n->entities[1] = resolve(n->entities[1], cfg, EntityKind::Position);
        break;
    case Kind::Before:
    case Kind::After:
    case Kind::Adjacent:
    case Kind::MaxOf:
    case Kind::MinOf:
    case Kind::ArgMax:
    case Kind::ArgMin:
    case Kind::Value:
    case Kind::EntRef:
        for (auto& e : n->entities) e = resolve(e, cfg, EntityKind::Participant);
        break;
    case Kind::Count:
        for (std::size_t i = 0; i + 1 < n->entities.size(); ++i)
            n->entities[i] = resolve(n->entities[i], cfg, EntityKind::Participant);
        n->entities.back() = resolve(n->entities.back(), cfg, EntityKind::Position);
        break;
    default:
        break;
    }
    return n;
}

std::pair<std::set<int>, std::set<int>> free_entities(const Ast& ast) {
    std::set<int> parts, poss;
    auto walk = [&](auto&& self, const Node& n) -> void {
        for (const auto& e : n.entities) {
            if (!e.resolved()) throw BindError("free_entities: unbound entity " + e.name);
            (e.kind == EntityKind::Participant ? parts : poss).insert(e.id);
        }
        for (const auto& c : n.children) self(self, *c);
    };
    walk(walk, *ast);
    return {std::move(parts), std::move(poss)};
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Interval {
    long lo = 0;
    long hi = 0;
    bool point() const { return lo == hi; }
};

struct EntVal {
    bool determined = false;
    int id = -1; // -1 = no participant
};

int position_index(const game::GameConfig& cfg, int pos) {
    return cfg.positions[static_cast<std::size_t>(pos)].index.value_or(pos + 1);
}

void require_ordered(const game::GameConfig& cfg, const char* what) {
    if (!cfg.ordered) throw EvalError(std::string(what) + " requires an ordered game");
}

// Possible slot indices for a participant: the True row's index when
// placed, otherwise the range over non-False rows. 0 encodes "unassigned"
// (reachable under at-most-one multiplicity, or a fully falsified column).
Interval value_interval(int part, const game::Assignment& a, const game::GameConfig& cfg) {
    long lo = std::numeric_limits<long>::max(), hi = std::numeric_limits<long>::min();
    for (int r = 0; r < a.rows(); ++r) {
        if (a.at(r, part) == game::CellState::True) {
            long idx = position_index(cfg, r);
            return {idx, idx};
        }
    }
    bool any_unknown = false;
    for (int r = 0; r < a.rows(); ++r) {
        if (a.at(r, part) == game::CellState::Unknown) {
            any_unknown = true;
            long idx = position_index(cfg, r);
            lo = std::min(lo, idx);
            hi = std::max(hi, idx);
        }
    }
    if (!any_unknown) return {0, 0};
    if (cfg.multiplicity == game::Multiplicity::AtMostOne) lo = 0;
    return {lo, hi};
}

Interval num_eval(const Node& n, const game::Assignment& a, const game::GameConfig& cfg) {
    switch (n.kind) {
    case Kind::Const: return {n.value, n.value};
    case Kind::Value:
        require_ordered(cfg, "VALUE");
        return value_interval(n.entities[0].id, a, cfg);
    case Kind::Count: {
        int pos = n.entities.back().id;
        long trues = 0, unknowns = 0;
        auto tally = [&](int part) {
            game::CellState v = a.at(pos, part);
            if (v == game::CellState::True) ++trues;
            if (v == game::CellState::Unknown) ++unknowns;
        };
        if (n.count_has_subset) {
            for (std::size_t i = 0; i + 1 < n.entities.size(); ++i) tally(n.entities[i].id);
        } else {
            for (int p = 0; p < a.cols(); ++p) tally(p);
        }
        return {trues, trues + unknowns};
    }
    case Kind::Add: {
        Interval x = num_eval(*n.children[0], a, cfg), y = num_eval(*n.children[1], a, cfg);
        return {x.lo + y.lo, x.hi + y.hi};
    }
    case Kind::Sub: {
        Interval x = num_eval(*n.children[0], a, cfg), y = num_eval(*n.children[1], a, cfg);
        return {x.lo - y.hi, x.hi - y.lo};
    }
    case Kind::MaxOf:
    case Kind::MinOf: {
        require_ordered(cfg, "MAX/MIN");
        Interval acc = value_interval(n.entities[0].id, a, cfg);
        for (std::size_t i = 1; i < n.entities.size(); ++i) {
            Interval v = value_interval(n.entities[i].id, a, cfg);
            if (n.kind == Kind::MaxOf)
                acc = {std::max(acc.lo, v.lo), std::max(acc.hi, v.hi)};
            else
                acc = {std::min(acc.lo, v.lo), std::min(acc.hi, v.hi)};
        }
        return acc;
    }
    default:
        throw std::logic_error("num_eval: bad kind");
    }
}

TriBool cmp_intervals(CmpOp op, Interval x, Interval y) {
    switch (op) {
    case CmpOp::Lt:
        if (x.hi < y.lo) return TriBool::True;
        if (x.lo >= y.hi) return TriBool::False;
        return TriBool::Unknown;
    case CmpOp::Le:
        if (x.hi <= y.lo) return TriBool::True;
        if (x.lo > y.hi) return TriBool::False;
        return TriBool::Unknown;
    case CmpOp::Gt: return cmp_intervals(CmpOp::Lt, y, x);
    case CmpOp::Ge: return cmp_intervals(CmpOp::Le, y, x);
    case CmpOp::Eq:
        if (x.point() && y.point()) return x.lo == y.lo ? TriBool::True : TriBool::False;
        if (x.hi < y.lo || x.lo > y.hi) return TriBool::False;
        return TriBool::Unknown;
    case CmpOp::Ne: return tri_not(cmp_intervals(CmpOp::Eq, x, y));
    }
    return TriBool::Unknown;
}

EntVal ent_eval(const Node& n, const game::Assignment& a, const game::GameConfig& cfg) {
    switch (n.kind) {
    case Kind::EntRef: return {true, n.entities[0].id};
    case Kind::ArgMax:
    case Kind::ArgMin: {
        require_ordered(cfg, "ARGMAX/ARGMIN");
        long best = 0;
        int best_id = -1;
        for (const auto& e : n.entities) {
            Interval v = value_interval(e.id, a, cfg);
            if (!v.point()) return {false, -1};
            bool better = best_id < 0 || (n.kind == Kind::ArgMax ? v.lo > best : v.lo < best);
            if (better) {
                best = v.lo;
                best_id = e.id;
            }
        }
        return {true, best_id};
    }
    case Kind::Select: {
        require_ordered(cfg, "SELECT");
        Interval idx = num_eval(*n.children[0], a, cfg);
        if (!idx.point()) return {false, -1};
        int row = -1;
        for (int r = 0; r < cfg.position_count(); ++r)
            if (position_index(cfg, r) == idx.lo) row = r;
        if (row < 0) return {true, -1};
        int who = -1;
        int trues = 0;
        for (int p = 0; p < a.cols(); ++p) {
            game::CellState v = a.at(row, p);
            if (v == game::CellState::Unknown) return {false, -1};
            if (v == game::CellState::True) {
                ++trues;
                who = p;
            }
        }
        return {true, trues == 1 ? who : -1};
    }
    default:
        throw std::logic_error("ent_eval: bad kind");
    }
}

TriBool bool_eval(const Node& n, const game::Assignment& a, const game::GameConfig& cfg) {
    switch (n.kind) {
    case Kind::To: {
        game::CellState v = a.at(n.entities[1].id, n.entities[0].id);
        if (v == game::CellState::True) return TriBool::True;
        if (v == game::CellState::False) return TriBool::False;
        return TriBool::Unknown;
    }
    case Kind::Before:
    case Kind::After: {
        require_ordered(cfg, n.kind == Kind::Before ? "Before" : "After");
        Interval x = value_interval(n.entities[0].id, a, cfg);
        Interval y = value_interval(n.entities[1].id, a, cfg);
        return cmp_intervals(n.kind == Kind::Before ? CmpOp::Lt : CmpOp::Gt, x, y);
    }
    case Kind::Adjacent: {
        require_ordered(cfg, "Adjacent");
        Interval x = value_interval(n.entities[0].id, a, cfg);
        Interval y = value_interval(n.entities[1].id, a, cfg);
        Interval d{x.lo - y.hi, x.hi - y.lo};
        return tri_or(cmp_intervals(CmpOp::Eq, d, {1, 1}), cmp_intervals(CmpOp::Eq, d, {-1, -1}));
    }
    case Kind::Not: return tri_not(bool_eval(*n.children[0], a, cfg));
    case Kind::And: {
        TriBool acc = TriBool::True;
        for (const auto& c : n.children) acc = tri_and(acc, bool_eval(*c, a, cfg));
        return acc;
    }
    case Kind::Or: {
        TriBool acc = TriBool::False;
        for (const auto& c : n.children) acc = tri_or(acc, bool_eval(*c, a, cfg));
        return acc;
    }
    case Kind::IfThen: {
        TriBool cond = TriBool::True, then = TriBool::True;
        for (std::size_t i = 0; i < n.if_split; ++i)
            cond = tri_and(cond, bool_eval(*n.children[i], a, cfg));
        for (std::size_t i = n.if_split; i < n.children.size(); ++i)
            then = tri_and(then, bool_eval(*n.children[i], a, cfg));
        return tri_or(tri_not(cond), then);
    }
    case Kind::Cmp: {
        if (sort_of(*n.children[0]) == Sort::Entity) {
            EntVal x = ent_eval(*n.children[0], a, cfg);
            EntVal y = ent_eval(*n.children[1], a, cfg);
            if (!x.determined || !y.determined) return TriBool::Unknown;
            bool eq = x.id >= 0 && x.id == y.id; // "no participant" equals nothing
            if (n.cmp == CmpOp::Eq) return eq ? TriBool::True : TriBool::False;
            return eq ? TriBool::False : TriBool::True;
        }
        return cmp_intervals(n.cmp, num_eval(*n.children[0], a, cfg),
                             num_eval(*n.children[1], a, cfg));
    }
    default:
        throw std::logic_error("bool_eval: bad kind");
    }
}

} // namespace

TriBool eval(const Ast& ast, const game::Assignment& a, const game::GameConfig& cfg) {
    if (sort_of(*ast) != Sort::Bool) throw EvalError("eval: program is not boolean-sorted");
    return bool_eval(*ast, a, cfg);
}

Ast make_to(EntityRef p, EntityRef pos) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::To;
    n->entities = {std::move(p), std::move(pos)};
    return n;
}

Ast make_not(Ast x) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Not;
    n->children = {std::move(x)};
    return n;
}

Ast make_and(std::vector<Ast> xs) {
    if (xs.size() == 1) return xs[0];
    auto n = std::make_shared<Node>();
    n->kind = Kind::And;
    n->children = std::move(xs);
    return n;
}

} // namespace lsat::program
