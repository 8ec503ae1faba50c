#pragma once

#include <random>
#include <sstream>

#include "sft/ops.hpp"
#include "sft/spec.hpp"

namespace sft::testing {

inline SftSpec full_shift(int dim, int symbols) {
    Alphabet a;
    for (int i = 0; i < symbols; ++i) a.add("s" + std::to_string(i));
    return SftSpec(dim, a);
}

// d=1 spec over {0,1} forbidding the word "11"
inline SftSpec no_adjacent_ones() {
    SftSpec s = full_shift(1, 2);
    s.add_forbidden(Pattern(1, {{{0}, 1}, {{1}, 1}}));
    return s;
}

// forbid monochromatic horizontal and vertical dominoes over {a,b}
inline SftSpec checkerboard_spec() {
    SftSpec s = full_shift(2, 2);
    for (int v = 0; v < 2; ++v) {
        s.add_forbidden(Pattern(2, {{{0, 0}, v}, {{1, 0}, v}}));
        s.add_forbidden(Pattern(2, {{{0, 0}, v}, {{0, 1}, v}}));
    }
    return s;
}

inline TorusConfig torus1(std::vector<int> cells) {
    std::vector<int> dims{static_cast<int>(cells.size())};
    return TorusConfig(dims, std::move(cells));
}

inline TorusConfig torus2(int w, int h, std::vector<int> cells_rowmajor_y_fast) {
    return TorusConfig({w, h}, std::move(cells_rowmajor_y_fast));
}

// deterministic random radius-1 spec over `symbols` symbols: a few forbidden
// dominoes in each direction
inline SftSpec random_domino_spec(uint32_t seed, int symbols, int max_patterns) {
    std::mt19937 rng(seed);
    SftSpec s = full_shift(2, symbols);
    std::uniform_int_distribution<int> sym(0, symbols - 1);
    std::uniform_int_distribution<int> axis(0, 1);
    std::uniform_int_distribution<int> count(1, max_patterns);
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
        int a = sym(rng), b = sym(rng);
        IVec off = axis(rng) == 0 ? IVec{1, 0} : IVec{0, 1};
        s.add_forbidden(Pattern(2, {{{0, 0}, a}, {off, b}}));
    }
    return s;
}

}  // namespace sft::testing
