#include "lsat/program.hpp"
#include "lsat/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace lsat::program;
using lsat::game::Assignment;
using lsat::game::CellState;
using lsat::game::GameConfig;
using lsat::game::Multiplicity;

namespace {

GameConfig cars_cfg() {
    GameConfig cfg;
    cfg.participants = {{0, "roadster"}, {1, "van"}, {2, "hatchback"}};
    cfg.positions = {{0, "day1", 1}, {1, "day2", 2}, {2, "day3", 3}};
    cfg.capacities = {{0, 1}, {0, 1}, {0, 1}};
    cfg.ordered = true;
    return cfg;
}

GameConfig committee_cfg() {
    GameConfig cfg;
    for (int i = 0; i < 4; ++i)
        cfg.participants.push_back({i, std::string(1, static_cast<char>('A' + i))});
    cfg.positions = {{0, "X", std::nullopt}, {1, "Y", std::nullopt}};
    return cfg;
}

std::string roundtrip(const std::string& text) { return print_program(parse_program(text)); }

} // namespace

TEST_CASE("reference strings parse and round-trip byte-identically") {
    const std::string p1 = "VALUE(roadster) > VALUE(van) AND VALUE(roadster) < VALUE(hatchback)";
    const std::string p2 = "IfThen({To(A,X)}, {To(B,Y)})";
    CHECK(roundtrip(p1) == p1);
    CHECK(roundtrip(p2) == p2);

    Ast a1 = parse_program(p1);
    REQUIRE(a1->kind == Kind::And);
    REQUIRE(a1->children.size() == 2);
    CHECK(a1->children[0]->kind == Kind::Cmp);
    CHECK(a1->children[0]->cmp == CmpOp::Gt);

    Ast a2 = parse_program(p2);
    REQUIRE(a2->kind == Kind::IfThen);
    CHECK(a2->if_split == 1);
    CHECK(a2->children[0]->kind == Kind::To);
}

TEST_CASE("single atom and keyword case-insensitivity") {
    Ast a = parse_program("to(A, X)");
    CHECK(a->kind == Kind::To);
    CHECK(print_program(a) == "To(A,X)");
}

TEST_CASE("IF ... THEN sugar canonicalizes to IfThen") {
    CHECK(roundtrip("IF To(A,X) THEN To(B,Y)") == "IfThen({To(A,X)}, {To(B,Y)})");
}

TEST_CASE("printer does not simplify") {
    CHECK(roundtrip("NOT NOT To(A,X)") == "NOT NOT To(A,X)");
}

TEST_CASE("precedence and canonical parenthesization") {
    CHECK(roundtrip("To(A,X) OR To(B,Y) AND To(C,X)") == "To(A,X) OR To(B,Y) AND To(C,X)");
    CHECK(roundtrip("(To(A,X) OR To(B,Y)) AND To(C,X)") == "(To(A,X) OR To(B,Y)) AND To(C,X)");
    CHECK(roundtrip("NOT (To(A,X) AND To(B,Y))") == "NOT (To(A,X) AND To(B,Y))");
    CHECK(roundtrip("NOT VALUE(A) = 1") == "NOT (VALUE(A) = 1)");
}

TEST_CASE("parse errors carry positions; type errors are rejected") {
    CHECK_THROWS_AS(parse_program("To(A,"), ParseError);
    CHECK_THROWS_AS(parse_program("VALUE(x) AND y"), ParseError);
    CHECK_THROWS_AS(parse_program("ARGMAX(A,B) < ARGMIN(A,B)"), ParseError);
    try {
        parse_program("To(A,X) AND\n  !");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("quoted entity names") {
    const std::string p = "To(\"Dr. Smith\",\"X committee\")";
    CHECK(roundtrip(p) == p);
}

TEST_CASE("free_entities") {
    GameConfig cfg = committee_cfg();
    Ast a = lsat::program::bind(parse_program("IfThen({To(A,X)}, {To(B,Y)})"), cfg);
    auto [parts, poss] = free_entities(a);
    CHECK(parts == std::set<int>{0, 1});
    CHECK(poss == std::set<int>{0, 1});

    auto [p2, s2] = free_entities(parse_program("2 > 1"));
    CHECK(p2.empty());
    CHECK(s2.empty());

    GameConfig cars = cars_cfg();
    auto [p3, s3] =
        free_entities(lsat::program::bind(parse_program("COUNT({van,hatchback}, day1) = 1"), cars));
    CHECK(p3 == std::set<int>{1, 2});
    CHECK(s3 == std::set<int>{0});
}

TEST_CASE("bind rejects unknown entities") {
    CHECK_THROWS_AS(lsat::program::bind(parse_program("To(Z,X)"), committee_cfg()), BindError);
}

TEST_CASE("eval atoms over partial assignments") {
    GameConfig cfg = committee_cfg();
    Assignment a = lsat::game::new_assignment(cfg);
    Ast to_dx = lsat::program::bind(parse_program("To(D,X)"), cfg);
    CHECK(eval(to_dx, a, cfg) == TriBool::Unknown);
    auto b = lsat::game::set_cell(a, 3, 0, true, cfg);
    REQUIRE(b.has_value());
    CHECK(eval(to_dx, *b, cfg) == TriBool::True);
    CHECK(eval(lsat::program::bind(parse_program("To(D,Y)"), cfg), *b, cfg) == TriBool::False);
}

TEST_CASE("Before is Unknown on a fresh ordering game") {
    GameConfig cfg = cars_cfg();
    Assignment a = lsat::game::new_assignment(cfg);
    CHECK(eval(lsat::program::bind(parse_program("Before(roadster,van)"), cfg), a, cfg) == TriBool::Unknown);
}

TEST_CASE("ordering operators require an ordered game") {
    GameConfig cfg = committee_cfg();
    Assignment a = lsat::game::new_assignment(cfg);
    CHECK_THROWS_AS(eval(lsat::program::bind(parse_program("Before(A,B)"), cfg), a, cfg), EvalError);
}

TEST_CASE("eval matches a direct checker on all completions of an ordering game") {
    GameConfig cfg = cars_cfg();
    std::vector<std::string> programs = {
        "VALUE(roadster) > VALUE(van) AND VALUE(roadster) < VALUE(hatchback)",
        "Before(van,hatchback)",
        "Adjacent(roadster,van)",
        "COUNT(day1) = 1",
        "MAX(roadster,van) >= 2",
        "ARGMIN(roadster,van,hatchback) = van",
        "SELECT(1) = van",
        "VALUE(hatchback) - VALUE(van) > 0",
    };
    auto grids = oracle::all_valid_grids(cfg);
    REQUIRE(grids.size() == 6); // 3! schedules
    auto value_of = [&](const Assignment& g, int part) {
        for (int r = 0; r < g.rows(); ++r)
            if (g.at(r, part) == CellState::True) return r + 1;
        return 0;
    };
    for (const auto& g : grids) {
        int vr = value_of(g, 0), vv = value_of(g, 1), vh = value_of(g, 2);
        std::vector<bool> expect = {
            vr > vv && vr < vh,
            vv < vh,
            vr - vv == 1 || vv - vr == 1,
            true, // each day holds exactly one car
            std::max(vr, vv) >= 2,
            (vv < vr && vv < vh),
            vv == 1,
            vh - vv > 0,
        };
        for (std::size_t i = 0; i < programs.size(); ++i) {
            CAPTURE(programs[i]);
            Ast ast = lsat::program::bind(parse_program(programs[i]), cfg);
            CHECK(eval(ast, g, cfg) == (expect[i] ? TriBool::True : TriBool::False));
        }
    }
}

TEST_CASE("eval is never Unknown on complete assignments") {
    GameConfig cfg = cars_cfg();
    std::vector<std::string> programs = {
        "IfThen({To(roadster,day1)}, {To(van,day2)})",
        "NOT Adjacent(van,hatchback)",
        "COUNT({roadster}, day2) = 0 OR Before(roadster,hatchback)",
        "ARGMAX(roadster,van) = hatchback",
        "SELECT(2) != roadster",
        "MIN(van,hatchback) + 1 <= 3",
    };
    for (const auto& g : oracle::all_valid_grids(cfg)) {
        for (const auto& p : programs) {
            Ast ast = lsat::program::bind(parse_program(p), cfg);
            CHECK(eval(ast, g, cfg) != TriBool::Unknown);
        }
    }
}

TEST_CASE("Kleene monotonicity on refinements") {
    GameConfig cfg = cars_cfg();
    std::vector<Ast> programs;
    for (const char* p :
         {"Before(roadster,van)", "Adjacent(roadster,hatchback)", "COUNT(day2) = 1",
          "IfThen({To(van,day1)}, {To(roadster,day3)})",
          "VALUE(roadster) > VALUE(van) AND VALUE(roadster) < VALUE(hatchback)"})
        programs.push_back(lsat::program::bind(parse_program(p), cfg));

    lsat::Mcg64 rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        Assignment a = lsat::game::new_assignment(cfg);
        int presets = static_cast<int>(rng.draw(3));
        for (int k = 0; k < presets; ++k) {
            auto next = lsat::game::set_cell(a, static_cast<int>(rng.draw(3)),
                                             static_cast<int>(rng.draw(3)), rng.draw(2) == 0, cfg);
            if (next) a = *next;
        }
        // refine one more step
        Assignment b = a;
        for (int k = 0; k < 2; ++k) {
            auto next = lsat::game::set_cell(b, static_cast<int>(rng.draw(3)),
                                             static_cast<int>(rng.draw(3)), rng.draw(2) == 0, cfg);
            if (next) b = *next;
        }
        for (const auto& f : programs) {
            TriBool va = eval(f, a, cfg);
            TriBool vb = eval(f, b, cfg);
            if (va != TriBool::Unknown) CHECK(va == vb);
        }
    }
}

TEST_CASE("fuzz: print/parse round-trip on random ASTs") {
    // random programs assembled from textual fragments
    lsat::Mcg64 rng(31);
    std::vector<std::string> atoms = {
        "To(A,X)",       "To(B,Y)",        "Before(A,B)",        "After(C,D)",
        "Adjacent(B,C)", "VALUE(A) = 2",   "COUNT(X) >= 1",      "COUNT({A,B}, Y) != 2",
        "SELECT(1) = A", "ARGMAX(A,B) = C", "MAX(A,B) - 1 < 3",  "VALUE(C) + VALUE(D) <= 4",
    };
    for (int trial = 0; trial < 400; ++trial) {
        std::string expr = atoms[rng.draw(atoms.size())];
        int ops = static_cast<int>(rng.draw(4));
        for (int k = 0; k < ops; ++k) {
            switch (rng.draw(4)) {
            case 0: expr = "NOT (" + expr + ")"; break;
            case 1: expr = "(" + expr + ") AND " + atoms[rng.draw(atoms.size())]; break;
            case 2: expr = "(" + expr + ") OR " + atoms[rng.draw(atoms.size())]; break;
            default:
                expr = "IfThen({" + expr + "}, {" + atoms[rng.draw(atoms.size())] + "})";
            }
        }
        CAPTURE(expr);
        std::string canon = roundtrip(expr);
        CHECK(roundtrip(canon) == canon); // printing is idempotent
        // parse(print(ast)) == ast, compared via the printer
        CHECK(print_program(parse_program(canon)) == canon);
    }
}
