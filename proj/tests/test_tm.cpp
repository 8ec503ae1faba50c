#include <doctest.h>

#include <set>

#include "sft/text_io.hpp"
#include "tm_corpus.hpp"

using namespace sft;
using namespace sft::testing;

namespace {
int accepted_runs(const TmSpec& tm, const std::vector<int>& input, int t, int w) {
    int n = 0;
    for (auto& run : run_bounded(tm, input, t, w))
        if (run.accepted) ++n;
    return n;
}
}  // namespace

TEST_CASE("parse_tm") {
    SUBCASE("minimal machine parses") {
        TmSpec tm = tm_immediate();
        CHECK(tm.states.size() == 1);
        CHECK(tm.is_halting(tm.initial));
        CHECK(tm.delta.empty());
    }
    SUBCASE("delta from a halting state is rejected") {
        CHECK_THROWS_AS(tm_from(R"(%tm
states: q0
tape: 1 _
blank: _
input: 1
initial: q0
halting: q0
delta: q0 1 -> q0 1 S
)"),
                        ParseError);
    }
    SUBCASE("two delta lines for one key give branch count 2") {
        TmSpec tm = tm_branch2();
        CHECK(tm.delta.at({tm.states.index("q0"), tm.tape.index("1")}).size() == 2);
    }
    SUBCASE("duplicate identical delta lines collapse") {
        TmSpec tm = tm_from(R"(%tm
states: q0 h
tape: 1 _
blank: _
input: 1
initial: q0
halting: h
delta: q0 1 -> h 1 S
delta: q0 1 -> h 1 S
)");
        CHECK(tm.delta.at({0, 0}).size() == 1);
    }
    SUBCASE("undeclared state reported with line number") {
        try {
            tm_from("%tm\nstates: q0\ntape: 1 _\nblank: _\ninput: 1\ninitial: q0\nhalting:\n"
                    "delta: q0 1 -> nope 1 S\n");
            FAIL("expected parse error");
        } catch (const ParseError& e) {
            CHECK(e.line == 8);
        }
    }
}

TEST_CASE("run_bounded") {
    SUBCASE("immediately-halting machine: one accepted run of length 1") {
        auto runs = run_bounded(tm_immediate(), {}, 3, 1);
        REQUIRE(runs.size() == 1);
        CHECK(runs[0].accepted);
        CHECK(runs[0].snapshots.size() == 1);
    }
    SUBCASE("two nondeterministic accepting branches on 1") {
        TmSpec tm = tm_branch2();
        CHECK(accepted_runs(tm, tm_word(tm, "1"), 6, 2) == 2);
    }
    SUBCASE("loop machine: zero accepted, branches cut at t") {
        TmSpec tm = tm_rejector();
        auto runs = run_bounded(tm, tm_word(tm, "1"), 4, 2);
        for (auto& r : runs) {
            CHECK(!r.accepted);
            CHECK(r.snapshots.size() <= 4);
        }
        CHECK(accepted_runs(tm, tm_word(tm, "1"), 4, 2) == 0);
    }
    SUBCASE("head leaving the tape kills the branch") {
        TmSpec tm = tm_from(R"(%tm
states: q0 h
tape: 1 _
blank: _
input: 1
initial: q0
halting: h
delta: q0 1 -> h 1 L
)");
        CHECK(accepted_runs(tm, tm_word(tm, "1"), 4, 2) == 0);
    }
    SUBCASE("snapshots chain by declared transitions") {
        TmSpec tm = tm_zigzag();
        auto runs = run_bounded(tm, tm_word(tm, "1"), 6, 2);
        REQUIRE(runs.size() == 1);
        REQUIRE(runs[0].accepted);
        REQUIRE(runs[0].snapshots.size() == 4);
        CHECK(runs[0].snapshots[1].head == 1);
        CHECK(runs[0].snapshots[2].head == 0);
        CHECK(runs[0].snapshots[0].tape == std::vector<int>{0, 2});   // "1_"
        CHECK(runs[0].snapshots[1].tape == std::vector<int>{1, 2});   // "0_"
    }
}

TEST_CASE("compiled rectangles count accepting runs exactly") {
    struct Case {
        TmSpec tm;
        std::vector<std::string> input;
    };
    std::vector<Case> cases{{tm_immediate(), {}},   {tm_immediate(), {"1"}},
                            {tm_scan_right(), {"1"}}, {tm_branch2(), {"1"}},
                            {tm_branch3(), {"1"}},    {tm_rejector(), {"1"}},
                            {tm_zigzag(), {"1"}}};
    for (auto& c : cases) {
        WangTileset tiles = compile_tm(c.tm);
        std::vector<int> word;
        for (auto& tok : c.input) word.push_back(c.tm.tape.index(tok));
        for (int w = static_cast<int>(word.size()); w <= 4; ++w) {
            if (w == 0) continue;
            for (int t = 1; t <= 6; ++t) {
                INFO("w=", w, " t=", t);
                CHECK(count_rectangle_tilings(tiles, w, t, c.input) ==
                      accepted_runs(c.tm, word, t, w));
            }
        }
    }
}

TEST_CASE("specific rectangle counts") {
    // immediately-accepting machine, empty input, w=1, t=1: exactly one tiling
    CHECK(count_rectangle_tilings(compile_tm(tm_immediate()), 1, 1, {}) == 1);
    // machine rejecting everything: zero tilings at all small sizes
    WangTileset rej = compile_tm(tm_rejector());
    for (int w = 1; w <= 4; ++w)
        for (int t = 1; t <= 4; ++t) CHECK(count_rectangle_tilings(rej, w, t, {"1"}) == 0);
    // empty tileset counts zero
    WangTileset empty;
    CHECK(count_rectangle_tilings(empty, 2, 2, {}) == 0);
}

TEST_CASE("deterministic machines tile at most once") {
    for (auto tm : {tm_immediate(), tm_scan_right(), tm_zigzag()}) {
        REQUIRE(tm.deterministic());
        WangTileset tiles = compile_tm(tm);
        for (int w = 1; w <= 4; ++w)
            for (int t = 1; t <= 6; ++t) CHECK(count_rectangle_tilings(tiles, w, t, {"1"}) <= 1);
    }
}

TEST_CASE("encode_unary") {
    CHECK(encode_unary(2, 3) == "aabbb");
    CHECK(encode_unary(0, 0) == "");
    CHECK(encode_unary(-1, 2) == "acc");
    CHECK(encode_unary(3) == "aaa");
    CHECK_THROWS_AS(encode_unary(-1), std::invalid_argument);
    // injective on Z x N over a small grid
    std::set<std::string> seen;
    for (int p = -4; p <= 4; ++p)
        for (int q = 0; q <= 4; ++q) CHECK(seen.insert(encode_unary(p, q)).second);
}

TEST_CASE("tm text round-trips") {
    TmSpec tm = tm_branch2();
    std::ostringstream os;
    write_tm(os, tm);
    TmSpec back = tm_from(os.str());
    std::ostringstream os2;
    write_tm(os2, back);
    CHECK(os.str() == os2.str());
}
