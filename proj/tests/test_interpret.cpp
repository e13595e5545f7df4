#include "lsat/interpret.hpp"

#include <doctest.h>

using namespace lsat::interpret;
using lsat::program::Kind;

namespace {

EntityCatalog committee_catalog() {
    EntityCatalog cat;
    for (const char* n : {"A", "B", "C", "D", "E", "F", "G"})
        cat.participants.push_back({n, {}});
    cat.positions = {{"X", {"X committee"}}, {"Y", {"Y committee"}}};
    return cat;
}

std::string interp(const std::string& sentence, const EntityCatalog& cat) {
    auto r = interpret_constraint(sentence, cat, TriggerLexicon::builtin());
    REQUIRE(r.ast.has_value());
    return lsat::program::print_program(*r.ast);
}

} // namespace

TEST_CASE("extract_entities splits the leading sentence into two groups") {
    EntityCatalog cat = extract_entities(
        "Seven people, A, B, C, D, E, F, and G, will serve on two committees, X and Y. "
        "Other text follows.");
    REQUIRE(cat.participants.size() == 7);
    CHECK(cat.participants[0].name == "A");
    CHECK(cat.participants[6].name == "G");
    REQUIRE(cat.positions.size() == 2);
    CHECK(cat.positions[0].name == "X");
    CHECK(cat.positions[1].name == "Y");
}

TEST_CASE("extract_entities keeps multi-word names and aliases their head word") {
    EntityCatalog cat = extract_entities(
        "Five drivers, Alice Reed, Bob, Carol, Dan, and Eve, each visit one of two spots, "
        "Greenfield Park and Harbor Square");
    REQUIRE(cat.participants.size() == 5);
    CHECK(cat.participants[0].name == "Alice Reed");
    REQUIRE(cat.participants[0].aliases.size() == 1);
    CHECK(cat.participants[0].aliases[0] == "Alice");
    REQUIRE(cat.positions.size() == 2);
    CHECK(cat.positions[0].name == "Greenfield Park");
    CHECK(cat.positions[1].name == "Harbor Square");
}

TEST_CASE("extract_entities needs two groups") {
    CHECK_THROWS_AS(extract_entities("Nothing capitalized here, at all."),
                    std::invalid_argument);
    CHECK_THROWS_AS(extract_entities("Only Alice and Bob appear."), std::invalid_argument);
}

TEST_CASE("conditional sentences become IfThen programs") {
    EntityCatalog cat = committee_catalog();
    CHECK(interp("If A serves on the X committee, then B serves on the Y committee.", cat) ==
          "IfThen({To(A,X)}, {To(B,Y)})");
}

TEST_CASE("coordinated membership becomes a conjunction") {
    EntityCatalog cat = committee_catalog();
    CHECK(interp("D and F both serve on the X committee.", cat) == "To(D,X) AND To(F,X)");
}

TEST_CASE("negation cues wrap the nearest following entity's atom") {
    EntityCatalog cat = committee_catalog();
    CHECK(interp("B does not serve on the X committee.", cat) == "NOT To(B,X)");
    CHECK(interp("B doesn't serve on the Y committee.", cat) == "NOT To(B,Y)");
    CHECK(interp("If A serves on the X committee, then C does not serve on the X committee.",
                 cat) == "IfThen({To(A,X)}, {NOT To(C,X)})");
}

TEST_CASE("count phrases use numerals or number words") {
    EntityCatalog cat = committee_catalog();
    CHECK(interp("Exactly two people serve on the Y committee.", cat) == "COUNT(Y) = 2");
    CHECK(interp("Exactly 3 people serve on the X committee.", cat) == "COUNT(X) = 3");
    CHECK(interp("At least one person serves on the X committee.", cat) == "COUNT(X) >= 1");
    CHECK(interp("At most two people serve on the Y committee.", cat) == "COUNT(Y) <= 2");
}

TEST_CASE("ordering phrases") {
    EntityCatalog cat;
    cat.participants = {{"Alice", {}}, {"Bob", {}}, {"Carol", {}}};
    cat.positions = {{"slot 1", {}}, {"slot 2", {}}, {"slot 3", {}}};
    auto one = [&](const std::string& s) { return interp(s, cat); };
    CHECK(one("Alice is scheduled earlier than Bob.") == "Before(Alice,Bob)");
    CHECK(one("Carol performs later than Alice.") == "After(Carol,Alice)");
    CHECK(one("Alice performs immediately before Bob.") ==
          "Adjacent(Alice,Bob) AND Before(Alice,Bob)");
    CHECK(one("Bob sits next to Carol.") == "Adjacent(Bob,Carol)");
}

TEST_CASE("unmatched sentences yield no program and no diagnostic") {
    EntityCatalog cat = committee_catalog();
    auto r = interpret_constraint("The weather is nice today.", cat, TriggerLexicon::builtin());
    CHECK_FALSE(r.ast.has_value());
    CHECK(r.diagnostic.empty());
}

TEST_CASE("entity recognition prefers longer aliases and is case-insensitive") {
    EntityCatalog cat = committee_catalog();
    // "X committee" must resolve as one position token, not X plus a stray word
    CHECK(interp("g SERVES ON THE x COMMITTEE.", cat) == "To(G,X)");
}

TEST_CASE("lexicon files parse, preserve order, and reject junk") {
    TriggerLexicon lex = TriggerLexicon::parse(
        "# comment\n"
        "<p1> * likes * <pos1> => To($p1,$pos1)\n"
        "<p1> * <pos1> => NOT To($p1,$pos1)\n");
    REQUIRE(lex.rules().size() == 2);
    EntityCatalog cat = committee_catalog();
    auto r = interpret_constraint("A likes the X committee", cat, lex);
    REQUIRE(r.ast.has_value());
    // the first matching rule wins even though the second also matches
    CHECK(lsat::program::print_program(*r.ast) == "To(A,X)");

    CHECK_THROWS_AS(TriggerLexicon::parse("no arrow here\n"), std::invalid_argument);
    CHECK_THROWS_AS(TriggerLexicon::parse(" => To($p1,$pos1)\n"), std::invalid_argument);
}

TEST_CASE("templates with unknown slots surface a diagnostic") {
    TriggerLexicon lex = TriggerLexicon::parse("<p1> * here => To($p1,$pos9)\n");
    EntityCatalog cat = committee_catalog();
    auto r = interpret_constraint("A is here", cat, lex);
    CHECK_FALSE(r.ast.has_value());
    CHECK_FALSE(r.diagnostic.empty());
}

TEST_CASE("roster options become conjunctions of placements") {
    EntityCatalog cat = committee_catalog();
    auto r = interpret_option("Which is an acceptable assignment?", "X: A, B; Y: C",
                              cat, TriggerLexicon::builtin());
    REQUIRE(r.ast.has_value());
    CHECK(lsat::program::print_program(*r.ast) == "To(A,X) AND To(B,X) AND To(C,Y)");

    // non-roster options fall back to constraint interpretation
    auto r2 = interpret_option("", "A serves on the X committee", cat,
                               TriggerLexicon::builtin());
    REQUIRE(r2.ast.has_value());
    CHECK(lsat::program::print_program(*r2.ast) == "To(A,X)");

    // a roster with stray members is rejected rather than half-read
    auto r3 = interpret_option("", "X: A, Q, B; Y: C", cat, TriggerLexicon::builtin());
    CHECK_FALSE(r3.ast.has_value());
    CHECK_FALSE(r3.diagnostic.empty());
}

TEST_CASE("annotate_positions marks lines and paragraphs and is idempotent") {
    std::string marked = annotate_positions("aaa\nbbb\n\nccc\n");
    CHECK(marked ==
          "<P1><line1>aaa</line1>\n<line2>bbb</line2></P1>\n\n<P2><line3>ccc</line3></P2>\n");
    CHECK(annotate_positions(marked) == marked);
    CHECK(annotate_positions("").empty());
    CHECK(annotate_positions("solo") == "<P1><line1>solo</line1></P1>");
}
