#pragma once

#include <iosfwd>

#include "sft/spec.hpp"

namespace sft {

// Deterministic color for a symbol index: a fixed golden-angle HSV walk, so
// renders are byte-stable across runs and platforms.
struct Rgb {
    unsigned char r, g, b;
};
Rgb symbol_color(int symbol);

// One rect per cell; (0,0) bottom-left, cell size 16px.
void render_svg(std::ostream& os, const TorusConfig& config, const Alphabet& alphabet);

// Binary P6, one pixel per cell, row 0 of the file is the top row.
void render_ppm(std::ostream& os, const TorusConfig& config);

}  // namespace sft
