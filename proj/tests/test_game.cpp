#include "lsat/game.hpp"
#include "lsat/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace lsat::game;

namespace {

GameConfig make_cfg(int nparts, int npos, Multiplicity m = Multiplicity::ExactlyOne,
                    bool ordered = false, std::vector<Capacity> caps = {}) {
    GameConfig cfg;
    for (int i = 0; i < nparts; ++i)
        cfg.participants.push_back({i, std::string(1, static_cast<char>('A' + i))});
    for (int i = 0; i < npos; ++i) {
        Position p{i, std::string(1, static_cast<char>('W' + i)), std::nullopt};
        if (ordered) p.index = i + 1;
        cfg.positions.push_back(std::move(p));
    }
    cfg.multiplicity = m;
    cfg.ordered = ordered;
    cfg.capacities = std::move(caps);
    return cfg;
}

std::vector<int> all_parts(const GameConfig& cfg) {
    std::vector<int> out;
    for (int i = 0; i < cfg.participant_count(); ++i) out.push_back(i);
    return out;
}

} // namespace

TEST_CASE("new_assignment starts all Unknown") {
    GameConfig cfg = make_cfg(7, 2);
    Assignment a = new_assignment(cfg);
    CHECK(a.rows() == 2);
    CHECK(a.cols() == 7);
    CHECK(a.digest() == std::string(14, '.'));

    CHECK(new_assignment(make_cfg(0, 2)).digest().empty());
    CHECK(new_assignment(make_cfg(3, 3)).digest() == std::string(9, '.'));
}

TEST_CASE("config validation") {
    GameConfig bad = make_cfg(2, 2);
    bad.participants[1].name = "A";
    CHECK_THROWS_AS(bad.check(), std::invalid_argument);

    GameConfig caps = make_cfg(3, 2, Multiplicity::ExactlyOne, false, {{0, 1}, {0, 1}});
    CHECK_THROWS_AS(caps.check(), std::invalid_argument); // max_sum < participants

    GameConfig ord = make_cfg(2, 2, Multiplicity::ExactlyOne, true);
    ord.positions[1].index = 3;
    CHECK_THROWS_AS(ord.check(), std::invalid_argument);
}

TEST_CASE("set_cell propagates exactly-one columns") {
    GameConfig cfg = make_cfg(2, 2);
    Assignment a = new_assignment(cfg);
    auto b = set_cell(a, 0, 0, true, cfg); // participant A to first position
    REQUIRE(b.has_value());
    CHECK(b->at(1, 0) == CellState::False);

    // setting an already-True cell True is a no-op
    auto c = set_cell(*b, 0, 0, true, cfg);
    REQUIRE(c.has_value());
    CHECK(*c == *b);

    // last-remaining propagation: False in one of two rows forces the other
    auto d = set_cell(a, 0, 0, false, cfg);
    REQUIRE(d.has_value());
    CHECK(d->at(1, 0) == CellState::True);
}

TEST_CASE("set_cell reports contradiction as empty") {
    GameConfig cfg = make_cfg(1, 2);
    Assignment a = new_assignment(cfg);
    auto b = set_cell(a, 0, 0, true, cfg);
    REQUIRE(b.has_value());
    CHECK_FALSE(set_cell(*b, 0, 1, true, cfg).has_value());
}

TEST_CASE("capacity max propagation") {
    GameConfig cfg = make_cfg(2, 2, Multiplicity::ExactlyOne, false, {{0, 1}, {0, 2}});
    Assignment a = new_assignment(cfg);
    auto b = set_cell(a, 0, 0, true, cfg);
    REQUIRE(b.has_value());
    // row 0 full: B cannot also take it, so B lands in row 1
    CHECK(b->at(0, 1) == CellState::False);
    CHECK(b->at(1, 1) == CellState::True);
}

TEST_CASE("enumerate_completions basics") {
    GameConfig cfg = make_cfg(2, 2);
    Assignment a = new_assignment(cfg);
    CHECK(enumerate_completions(a, cfg, all_parts(cfg)).size() == 4);
    auto only_a = enumerate_completions(a, cfg, {});
    REQUIRE(only_a.size() == 1);
    CHECK(only_a[0] == a);

    GameConfig perm = make_cfg(2, 2, Multiplicity::ExactlyOne, false, {{0, 1}, {0, 1}});
    CHECK(enumerate_completions(new_assignment(perm), perm, all_parts(perm)).size() == 2);
}

TEST_CASE("enumerate_completions equals brute force on random grids") {
    lsat::Mcg64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int nparts = 1 + static_cast<int>(rng.draw(4));
        int npos = 1 + static_cast<int>(rng.draw(3));
        Multiplicity m =
            rng.draw(2) == 0 ? Multiplicity::ExactlyOne : Multiplicity::AtMostOne;
        GameConfig cfg = make_cfg(nparts, npos, m);
        if (m == Multiplicity::ExactlyOne && npos == 0) continue;

        // random consistent partial assignment via set_cell
        Assignment a = new_assignment(cfg);
        int moves = static_cast<int>(rng.draw(4));
        for (int k = 0; k < moves; ++k) {
            int p = static_cast<int>(rng.draw(static_cast<std::uint64_t>(nparts)));
            int r = static_cast<int>(rng.draw(static_cast<std::uint64_t>(npos)));
            bool v = rng.draw(2) == 0;
            if (auto next = set_cell(a, p, r, v, cfg)) a = *next;
        }

        auto got = enumerate_completions(a, cfg, all_parts(cfg));
        std::set<std::string> got_digests;
        for (const auto& g : got) {
            CHECK(is_complete(g));
            CHECK(validate(g, cfg));
            got_digests.insert(g.digest());
        }
        CHECK(got_digests.size() == got.size()); // no duplicates

        std::set<std::string> want;
        for (const auto& g : oracle::all_valid_grids(cfg))
            if (oracle::extends(a, g)) want.insert(g.digest());
        CHECK(got_digests == want);
    }
}

TEST_CASE("free enumeration counts |positions|^|participants|") {
    GameConfig cfg = make_cfg(3, 2);
    CHECK(enumerate_completions(new_assignment(cfg), cfg, all_parts(cfg)).size() == 8);
}

TEST_CASE("propagation is confluent") {
    GameConfig cfg = make_cfg(3, 2, Multiplicity::ExactlyOne, false, {{0, 2}, {0, 2}});
    struct Move {
        int p, r;
        bool v;
    };
    std::vector<Move> moves = {{0, 0, true}, {1, 0, false}, {2, 1, true}};
    std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
        return std::tie(a.p, a.r) < std::tie(b.p, b.r);
    });
    std::optional<std::string> first;
    do {
        Assignment a = new_assignment(cfg);
        bool contradiction = false;
        for (const Move& m : moves) {
            auto next = set_cell(a, m.p, m.r, m.v, cfg);
            if (!next) {
                contradiction = true;
                break;
            }
            a = *next;
        }
        std::string digest = contradiction ? "contradiction" : a.digest();
        if (!first)
            first = digest;
        else
            CHECK(*first == digest);
    } while (std::next_permutation(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
        return std::tie(a.p, a.r) < std::tie(b.p, b.r);
    }));
}

TEST_CASE("is_complete and validate") {
    GameConfig cfg = make_cfg(1, 1);
    Assignment a = new_assignment(cfg);
    CHECK_FALSE(is_complete(a));
    auto b = set_cell(a, 0, 0, true, cfg);
    REQUIRE(b.has_value());
    CHECK(is_complete(*b));
    CHECK(validate(*b, cfg));

    GameConfig caps = make_cfg(2, 1, Multiplicity::AtMostOne, false, {{0, 1}});
    Assignment over(1, 2);
    over.set_raw(0, 0, CellState::True);
    over.set_raw(0, 1, CellState::True);
    CHECK_FALSE(validate(over, caps));
}

TEST_CASE("render is stable") {
    GameConfig cfg = make_cfg(2, 2);
    Assignment a = new_assignment(cfg);
    auto b = set_cell(a, 0, 0, true, cfg);
    REQUIRE(b.has_value());
    CHECK(render(*b, cfg) == "  A B\nW T .\nX F .\n");
}
