#include "sft/render.hpp"

#include <cmath>
#include <ostream>

namespace sft {

namespace {
// integer HSV->RGB, v and s fixed; hue walks the golden angle per symbol
Rgb hsv(int hue_deg) {
    double h = (hue_deg % 360) / 60.0;
    double s = 0.55, v = 0.93;
    int i = static_cast<int>(h) % 6;
    double f = h - std::floor(h);
    double p = v * (1 - s), q = v * (1 - s * f), t = v * (1 - s * (1 - f));
    double r = 0, g = 0, b = 0;
    switch (i) {
        case 0: r = v, g = t, b = p; break;
        case 1: r = q, g = v, b = p; break;
        case 2: r = p, g = v, b = t; break;
        case 3: r = p, g = q, b = v; break;
        case 4: r = t, g = p, b = v; break;
        default: r = v, g = p, b = q; break;
    }
    auto to8 = [](double x) { return static_cast<unsigned char>(std::lround(x * 255)); };
    return {to8(r), to8(g), to8(b)};
}
}  // namespace

Rgb symbol_color(int symbol) {
    if (symbol == 0) return {240, 240, 240};
    return hsv(static_cast<int>((static_cast<long long>(symbol) * 137) % 360));
}

void render_svg(std::ostream& os, const TorusConfig& config, const Alphabet& alphabet) {
    if (config.dim() != 2) throw std::invalid_argument("render: config must be 2-dimensional");
    const int w = config.dims[0], h = config.dims[1], cell = 16;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * cell << "\" height=\""
       << h * cell << "\">\n";
    for (int x = 0; x < w; ++x)
        for (int y = 0; y < h; ++y) {
            Rgb c = symbol_color(config.at({x, y}));
            os << "<rect x=\"" << x * cell << "\" y=\"" << (h - 1 - y) * cell << "\" width=\""
               << cell << "\" height=\"" << cell << "\" fill=\"rgb(" << int(c.r) << ','
               << int(c.g) << ',' << int(c.b) << ")\"><title>"
               << alphabet.token(config.at({x, y})) << "</title></rect>\n";
        }
    os << "</svg>\n";
}

void render_ppm(std::ostream& os, const TorusConfig& config) {
    if (config.dim() != 2) throw std::invalid_argument("render: config must be 2-dimensional");
    const int w = config.dims[0], h = config.dims[1];
    os << "P6\n" << w << ' ' << h << "\n255\n";
    for (int y = h - 1; y >= 0; --y)
        for (int x = 0; x < w; ++x) {
            Rgb c = symbol_color(config.at({x, y}));
            os.put(static_cast<char>(c.r));
            os.put(static_cast<char>(c.g));
            os.put(static_cast<char>(c.b));
        }
}

}  // namespace sft
