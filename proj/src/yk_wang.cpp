#include <sstream>

#include "sft/constructions.hpp"

namespace sft {

// The bundle's only non-Wang rules are the sheared diagonal constraints of
// the aperiodic base. Wang form pushes the compared values onto lattice
// corners: vertical edges carry the value at their top endpoint, horizontal
// edges the value at their right endpoint, and a tile pins its NW corner to
// its own column data and its SE corner to the one above-left via matching.
// Breaker-facing edges carry no corner, so a single breaker tile suffices.
WangTileset y_k_wang(int k) {
    if (k < 2) throw std::invalid_argument("y_k_wang: k must be >= 2");
    WangTileset kari = kari_nw();
    const int nk = static_cast<int>(kari.tiles.size());

    // corner domain: the base tileset's vertical (N/S) colors
    std::vector<int> vcolors;
    std::vector<int> vcolor_index(kari.colors.size(), -1);
    for (int c = 0; c < kari.colors.size(); ++c) {
        const std::string& tok = kari.colors.token(c);
        if (tok[0] == 'u' || tok[0] == 'd') {
            vcolor_index[c] = static_cast<int>(vcolors.size());
            vcolors.push_back(c);
        }
    }

    WangTileset out;
    auto v_white = [&](int hcolor, int corner) {
        return "k." + kari.colors.token(hcolor) + "." + std::to_string(corner);
    };
    auto h_white = [&](int corner) { return "c." + std::to_string(corner); };
    auto c_vert = [&](int digit) { return "d" + std::to_string(digit); };
    auto c_horiz = [&](int carry, bool mark) {
        return std::string("c") + std::to_string(carry) + (mark ? "h" : "e");
    };
    auto t_horiz = [&](int v) { return "t" + std::to_string(v); };
    auto join3 = [](const std::string& a, const std::string& b, const std::string& c) {
        return a + "/" + b + "/" + c;
    };

    // white tiles: base tile x NE corner x neighbor faces x counter cell x sync value
    for (int t = 0; t < nk; ++t) {
        const WangTile& kt = kari.tiles[t];
        const int nw_corner = vcolor_index[kt.north];  // published at the NW corner
        const int se_corner = vcolor_index[kt.south];
        for (size_t f = 0; f < vcolors.size(); ++f) {
            for (int wface = 0; wface < 2; ++wface)
                for (int eface = 0; eface < 2; ++eface)
                    for (int db = 0; db < k; ++db)
                        for (int cin = 0; cin < 2; ++cin) {
                            const int d = (db + cin) % k;
                            const int cout = (db + cin) >= k ? 1 : 0;
                            for (int mark = 0; mark < 2; ++mark) {
                                if (wface == 1 && mark != ((d == 0 && cout == 1) ? 1 : 0))
                                    continue;  // zero-row marking, read right of a breaker
                                for (int v = 0; v < nk; ++v) {
                                    if (wface == 1 && v != t) continue;  // sync layer copies
                                    std::string aw = wface ? "bkR"
                                                           : v_white(kt.west, nw_corner);
                                    std::string ae =
                                        eface ? "bkL" : v_white(kt.east, static_cast<int>(f));
                                    std::string an = h_white(static_cast<int>(f));
                                    std::string as = h_white(se_corner);
                                    std::ostringstream nm;
                                    nm << "w." << t << "." << f << "." << wface << eface << "."
                                       << db << cin << mark << "." << v;
                                    out.add_tile(nm.str(),
                                                 join3(an, c_vert(d), "t"),
                                                 join3(ae, c_horiz(cin, mark), t_horiz(v)),
                                                 join3(as, c_vert(db), "t"),
                                                 join3(aw, c_horiz(cout, mark), t_horiz(v)));
                                }
                            }
                        }
        }
    }

    // breaker tiles: the counter shows a permanent carry on its west side and
    // absorbs whatever carry arrives from the east
    for (int disc = 0; disc < 2; ++disc)
        for (int mark = 0; mark < 2; ++mark)
            for (int v = 0; v < nk; ++v) {
                std::ostringstream nm;
                nm << "b." << disc << mark << "." << v;
                out.add_tile(nm.str(), join3("bkV", "dbk", "t"),
                             join3("bkR", c_horiz(disc, mark), t_horiz(v)),
                             join3("bkV", "dbk", "t"),
                             join3("bkL", c_horiz(1, mark), t_horiz(v)));
            }
    return out;
}

}  // namespace sft
