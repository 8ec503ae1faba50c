#include <doctest.h>

#include <sstream>

#include "sft/render.hpp"
#include "sft/text_io.hpp"
#include "test_helpers.hpp"

using namespace sft;
using namespace sft::testing;

TEST_CASE("torus text round-trips") {
    Alphabet a({"x", "y"});
    TorusConfig c({2, 2}, {0, 1, 1, 0});
    std::ostringstream os;
    write_torus(os, c, a);
    std::istringstream is(os.str());
    TorusConfig back = parse_torus(is, a);
    CHECK(back == c);
}

TEST_CASE("svg render: one rect per cell") {
    Alphabet a({"x"});
    std::ostringstream os;
    render_svg(os, TorusConfig({1, 1}, {0}), a);
    std::string svg = os.str();
    size_t rects = 0, pos = 0;
    while ((pos = svg.find("<rect", pos)) != std::string::npos) {
        ++rects;
        pos += 5;
    }
    CHECK(rects == 1);
}

TEST_CASE("checkerboard renders four alternating cells") {
    Alphabet a({"x", "y"});
    std::ostringstream os;
    render_ppm(os, TorusConfig({2, 2}, {0, 1, 1, 0}));
    std::string ppm = os.str();
    CHECK(ppm.rfind("P6\n2 2\n255\n", 0) == 0);
    const size_t off = std::string("P6\n2 2\n255\n").size();
    REQUIRE(ppm.size() == off + 12);
    // opposite corners equal, neighbors differ
    auto px = [&](int i) { return ppm.substr(off + 3 * static_cast<size_t>(i), 3); };
    CHECK(px(0) == px(3));
    CHECK(px(1) == px(2));
    CHECK(px(0) != px(1));
}

TEST_CASE("renders are byte-stable") {
    Alphabet a({"x", "y", "z"});
    TorusConfig c({3, 2}, {0, 1, 2, 0, 1, 2});
    std::ostringstream s1, s2, p1, p2;
    render_svg(s1, c, a);
    render_svg(s2, c, a);
    render_ppm(p1, c);
    render_ppm(p2, c);
    CHECK(s1.str() == s2.str());
    CHECK(p1.str() == p2.str());
}
