#include "lsat/harness.hpp"

#include <doctest.h>

using namespace lsat::harness;

namespace {

const char* kCarsRecord = R"json({"id":"cars-1","section":"AR","context":"Three cars, a roadster, a van, and a hatchback, are shown on three days, day1, day2, and day3.","question":"Which schedule is possible?","options":["van first","roadster first","hatchback first","van second","van third"],"label":0,"annotations":{"participants":["roadster","van","hatchback"],"positions":[{"name":"day1","index":1},{"name":"day2","index":2},{"name":"day3","index":3}],"ordered":true,"capacities":[[1,1],[1,1],[1,1]],"programs":["VALUE(roadster) > VALUE(van) AND VALUE(roadster) < VALUE(hatchback)"],"option_programs":["To(van,day1)","To(roadster,day1)","To(hatchback,day1)","To(van,day2)","To(van,day3)"]}})json";

std::string committee_nl_record() {
    return R"json({"id":"comm-1","section":"AR","context":"Seven people, A, B, C, D, E, F, and G, will serve on two committees, X and Y. D and F both serve on the X committee. If A serves on the X committee, then B serves on the Y committee.","question":"Which is an acceptable assignment?","options":["X: A, D, F; Y: B, C, E, G","X: D; Y: A, B, C, E, F, G","X: A, B, D, F; Y: C, E, G","X: B, D; Y: A, C, E, F, G","X: A, D; Y: B, C, E, F, G"],"label":0})json";
}

} // namespace

TEST_CASE("dataset parsing and serialization round-trip") {
    auto recs = parse_dataset(std::string(kCarsRecord) + "\n");
    REQUIRE(recs.size() == 1);
    const ProblemRecord& r = recs[0];
    CHECK(r.id == "cars-1");
    CHECK(r.section == Section::AR);
    CHECK(r.options.size() == 5);
    REQUIRE(r.annotations.has_value());
    CHECK(r.annotations->programs.size() == 1);
    CHECK(r.annotations->positions[2].index == 3);

    auto again = parse_dataset(serialize_record(r) + "\n");
    REQUIRE(again.size() == 1);
    CHECK(serialize_record(again[0]) == serialize_record(r));
}

TEST_CASE("dataset errors are loud and name the culprit") {
    CHECK_THROWS_AS(parse_dataset("{not json\n"), DataError);
    CHECK_THROWS_AS(parse_dataset(std::string(kCarsRecord) + "\n" + kCarsRecord + "\n"),
                    DataError); // duplicate id
    CHECK_THROWS_AS(
        parse_dataset(
            R"json({"id":"x","section":"AR","context":"c","options":["a","b","c","d","e"],"label":7})json"
            "\n"),
        DataError);
    CHECK_THROWS_AS(
        parse_dataset(
            R"json({"id":"x","section":"ZZ","context":"c","options":["a","b","c","d","e"],"label":0})json"
            "\n"),
        DataError);
    CHECK_THROWS_AS(
        parse_dataset(
            R"json({"id":"x","section":"AR","context":"c","options":["a","b","c"],"label":0})json"
            "\n"),
        DataError);
}

TEST_CASE("four-option records are padded with a seeded wrong option") {
    std::string rec =
        R"json({"id":"p","section":"RC","context":"c","options":["o0","o1","o2","o3"],"label":2})json"
        "\n";
    auto a = parse_dataset(rec, 7);
    auto b = parse_dataset(rec, 7);
    REQUIRE(a[0].options.size() == 5);
    CHECK(a[0].options[4] != "o2");             // never duplicates the gold answer
    CHECK(a[0].options[4] == b[0].options[4]);  // same seed, same padding
}

TEST_CASE("game_setup prefers annotations and falls back to extraction") {
    auto recs = parse_dataset(std::string(kCarsRecord) + "\n");
    auto [cfg, cat] = game_setup(recs[0]);
    CHECK(cfg.participant_count() == 3);
    CHECK(cfg.position_count() == 3);
    CHECK(cfg.ordered);
    REQUIRE(cfg.capacities.size() == 3);
    CHECK(cfg.capacities[0].min == 1);
    CHECK(cat.participants[1].name == "van");

    auto nl = parse_dataset(committee_nl_record() + "\n");
    auto [cfg2, cat2] = game_setup(nl[0]);
    CHECK(cfg2.participant_count() == 7);
    CHECK(cfg2.position_count() == 2);
    CHECK_FALSE(cfg2.ordered);
    CHECK(cat2.positions[0].name == "X");
}

TEST_CASE("run_ar answers the annotated ordering game") {
    auto recs = parse_dataset(std::string(kCarsRecord) + "\n");
    RunOptions opts;
    auto report = run_ar(recs, lsat::interpret::TriggerLexicon::builtin(), opts);
    REQUIRE(report.total == 1);
    CHECK(report.correct == 1);
    const QuestionResult& q = report.questions[0];
    CHECK(q.predicted == 0);
    REQUIRE(q.scores.size() == 5);
    CHECK(q.scores[0] == doctest::Approx(1.0));
    CHECK(q.scores[1] == doctest::Approx(0.0));
    CHECK(report.accuracy_percent == doctest::Approx(100.0));
}

TEST_CASE("run_ar interprets plain-language games end to end") {
    auto recs = parse_dataset(committee_nl_record() + "\n");
    RunOptions opts;
    auto report = run_ar(recs, lsat::interpret::TriggerLexicon::builtin(), opts);
    REQUIRE(report.total == 1);
    CHECK(report.attempted_sentences == 2);
    CHECK(report.interpreted_sentences == 2);
    CHECK(report.questions[0].predicted == 0);
    CHECK(report.correct == 1);
}

TEST_CASE("run_ar abstains on unsatisfiable games unless told to guess") {
    std::string rec =
        R"json({"id":"bad","section":"AR","context":"c","options":["a","b","c","d","e"],"label":1,"annotations":{"participants":["A","B"],"positions":["X","Y"],"programs":["To(A,X)","To(A,Y)"],"option_programs":["To(A,X)","To(A,X)","To(A,X)","To(A,X)","To(A,X)"]}})json"
        "\n";
    auto recs = parse_dataset(rec);
    RunOptions opts;
    auto report = run_ar(recs, lsat::interpret::TriggerLexicon::builtin(), opts);
    REQUIRE(report.total == 1);
    CHECK(report.questions[0].predicted == -1);
    CHECK(report.questions[0].diagnostic == "unsatisfiable");
    CHECK(report.correct == 0);

    opts.random_on_failure = true;
    opts.seed = 5;
    auto guess = run_ar(recs, lsat::interpret::TriggerLexicon::builtin(), opts);
    CHECK(guess.questions[0].predicted >= 0);
    CHECK(guess.questions[0].predicted <= 4);
    auto guess2 = run_ar(recs, lsat::interpret::TriggerLexicon::builtin(), opts);
    CHECK(guess.questions[0].predicted == guess2.questions[0].predicted);
}

TEST_CASE("run_ar skips non-AR records and sorts results by id") {
    std::string lines = committee_nl_record() + "\n" + kCarsRecord + "\n" +
                        R"json({"id":"rc","section":"RC","context":"c","options":["a","b","c","d","e"],"label":0})json"
                        "\n";
    auto recs = parse_dataset(lines);
    auto report = run_ar(recs, lsat::interpret::TriggerLexicon::builtin(), RunOptions{});
    REQUIRE(report.total == 2);
    CHECK(report.questions[0].id == "cars-1");
    CHECK(report.questions[1].id == "comm-1");
}

TEST_CASE("run_lr_extend derives and attaches implied statements") {
    std::string rec =
        R"json({"id":"lr-1","section":"LR","context":"If it rains, then the field is wet. If the field is wet, then the game is delayed.","question":"Which one of the following can be concluded?","options":["If it rains, then the game is delayed.","The picnic moves indoors.","Nothing follows from these facts.","The stadium roof stays open.","Tickets are refunded at the gate."],"label":0,"annotations":{"lr":{"symbols":[{"id":0,"surface":"it rains"},{"id":1,"surface":"the game is delayed"},{"id":2,"surface":"the field is wet"}],"sentences":[{"text":"If it rains, then the field is wet.","spans":[[3,11,0],[18,34,2]]},{"text":"If the field is wet, then the game is delayed.","spans":[[3,19,2],[26,45,1]]}]}}})json"
        "\n";
    auto recs = parse_dataset(rec);
    auto report = run_lr_extend(recs);
    REQUIRE(report.total == 1);
    const QuestionResult& q = report.questions[0];
    CHECK(q.predicted == 0);
    CHECK(report.correct == 1);
    REQUIRE(q.extended_contexts.count(0) == 1);
    const std::string& ext = q.extended_contexts.at(0);
    CHECK(ext.find("it rains") != std::string::npos);
    CHECK(ext.find("the game is delayed") != std::string::npos);
}

TEST_CASE("run_lr_extend counts unannotated LR records as skipped") {
    std::string rec =
        R"json({"id":"lr-2","section":"LR","context":"c","options":["a","b","c","d","e"],"label":0})json"
        "\n";
    auto report = run_lr_extend(parse_dataset(rec));
    CHECK(report.total == 0);
    CHECK(report.skipped == 1);
}

TEST_CASE("score scale interpolates between published anchors") {
    ScoreScale scale = ScoreScale::builtin();
    CHECK(scale.scaled(30.9) == 135);
    CHECK(scale.scaled(56.8) == 151);
    CHECK(scale.scaled(58.0) == 152);
    CHECK(scale.scaled(63.5) == 155);
    CHECK(scale.scaled(69.1) == 158);
    CHECK(scale.scaled(57.4) == 152); // midpoint of the 151-152 segment rounds up
    CHECK(scale.scaled(0.0) == 120);
    CHECK(scale.scaled(100.0) == 180);
    CHECK(scale.scaled(-5.0) == 120);
    CHECK(scale.scaled(250.0) == 180);
    for (double x = 0.0; x < 100.0; x += 0.5)
        CHECK(scale.scaled(x) <= scale.scaled(x + 0.5));

    CHECK_THROWS_AS(ScoreScale({{10.0, 150}, {20.0, 140}}), std::invalid_argument);
    CHECK_THROWS_AS(ScoreScale({{10.0, 200}}), std::invalid_argument);
    CHECK_THROWS_AS(ScoreScale({}), std::invalid_argument);
}

TEST_CASE("overall score weights LR double") {
    CHECK(overall_score(30.9, 63.5, 69.1) == doctest::Approx(56.75));
    CHECK(overall_score(0, 0, 0) == doctest::Approx(0.0));
    CHECK(overall_score(100, 100, 100) == doctest::Approx(100.0));
    CHECK_THROWS_AS(overall_score(-1, 50, 50), std::invalid_argument);
    CHECK_THROWS_AS(overall_score(50, 101, 50), std::invalid_argument);
}
