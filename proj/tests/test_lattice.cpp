#include <doctest.h>

#include "sft/lattice.hpp"
#include "test_helpers.hpp"

using namespace sft;
using namespace sft::testing;

TEST_CASE("hermite form is canonical") {
    // {(1,1),(2,0)} and {(1,1),(0,2)} generate the same index-2 lattice
    auto g1 = PeriodGroup::from_generators(2, {{1, 1}, {2, 0}});
    auto g2 = PeriodGroup::from_generators(2, {{1, 1}, {0, 2}});
    CHECK(g1 == g2);
    CHECK(g1.rank == 2);
    CHECK(g1.index() == 2);
    CHECK(g1.contains({1, 1}));
    CHECK(g1.contains({2, 0}));
    CHECK(!g1.contains({1, 0}));
    CHECK(g1.contains({3, -1}));
}

TEST_CASE("scaled full lattice recognition") {
    auto g = PeriodGroup::from_generators(2, {{2, 0}, {0, 2}});
    CHECK(g.is_scaled_full_lattice(2));
    CHECK(!g.is_scaled_full_lattice(1));
    auto h = PeriodGroup::from_generators(2, {{2, 0}, {1, 1}});
    CHECK(!h.is_scaled_full_lattice(2));
}

TEST_CASE("stabilizer of simple tori") {
    SUBCASE("uniform 3x3 config has the full lattice") {
        TorusConfig c({3, 3}, std::vector<int>(9, 0));
        auto g = stabilizer(c);
        CHECK(g.is_scaled_full_lattice(1));
    }
    SUBCASE("d=1 config 'ab' has stabilizer 2Z") {
        auto g = stabilizer(torus1({0, 1}));
        REQUIRE(g.rank == 1);
        CHECK(g.basis[0] == IVec{2});
    }
    SUBCASE("2x2 checkerboard: generated by (1,1) and (2,0)") {
        TorusConfig c = torus2(2, 2, {0, 1, 1, 0});
        auto g = stabilizer(c);
        CHECK(g == PeriodGroup::from_generators(2, {{1, 1}, {2, 0}}));
    }
}

TEST_CASE("stabilizer equals brute-force fixing translations on small tori") {
    // all configs up to 3x3 over 2 symbols: the stabilizer is exactly the
    // lattice generated by the fixing translations plus the torus lattice
    for (int w = 1; w <= 3; ++w)
        for (int h = 1; h <= 3; ++h) {
            std::vector<int> cells(static_cast<size_t>(w) * h, 0);
            int checked = 0;
            while (checked < 200) {  // all of 2x2, a prefix of the largest
                TorusConfig cfg({w, h}, cells);
                auto g = stabilizer(cfg);
                std::vector<IVec> gens{{w, 0}, {0, h}};
                for (int x = 0; x < w; ++x)
                    for (int y = 0; y < h; ++y)
                        if (cfg.translated({x, y}) == cfg) gens.push_back({x, y});
                CHECK(g == PeriodGroup::from_generators(2, gens));
                // every basis vector must actually fix the config
                for (auto& b : g.basis) CHECK(cfg.translated(b) == cfg);
                ++checked;
                int i = static_cast<int>(cells.size()) - 1;
                while (i >= 0 && ++cells[i] == 2) cells[i--] = 0;
                if (i < 0) break;
            }
        }
}

TEST_CASE("least axis period") {
    CHECK(least_axis_period(torus1({0, 1, 0, 1}), 0) == 2);
    CHECK(least_axis_period(torus1({0, 1, 1, 0}), 0) == 4);
    CHECK(least_axis_period(torus1({0, 0, 0, 0}), 0) == 1);
}

TEST_CASE("lattice quotient canonicalizes") {
    auto g = PeriodGroup::from_generators(2, {{1, 1}, {0, 2}});
    LatticeQuotient q(g);
    CHECK(q.size() == 2);
    CHECK(q.canonical({0, 0}) == IVec{0, 0});
    CHECK(q.canonical({1, 1}) == IVec{0, 0});
    CHECK(q.canonical({1, 0}) == q.canonical({0, 1}));  // (1,0)-(0,1) = (1,-1) = (1,1)-(0,2)
    CHECK(q.canonical({5, 3}) == IVec{0, 0});
}
