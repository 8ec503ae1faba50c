#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sft/alphabet.hpp"
#include "sft/pattern.hpp"

namespace sft {

// Edge-color view of a spec that came from a Wang tileset. Lets the solver
// use color buckets instead of scanning pairwise mismatch patterns.
struct WangAdjacency {
    std::vector<int> north, east, south, west;  // per symbol, color ids
    int color_count = 0;
};

// Projection from a product alphabet back onto one layer.
struct LayerProjection {
    Alphabet target;
    std::vector<int> component;  // product symbol -> layer symbol
};

// Subshift of finite type: alphabet + finite forbidden set, dimension d.
// Forbidden constraints live in two lists with one semantic: `forbidden`
// holds exact patterns (normalized, deduped); `templates` holds set-valued
// ones (typically lifted layer rules). Violation indices number the exact
// patterns first, then the templates.
struct SftSpec {
    int dim = 0;
    Alphabet alphabet;
    std::vector<Pattern> forbidden;
    std::vector<ForbiddenTemplate> templates;
    int radius = 0;

    std::optional<WangAdjacency> wang;
    std::vector<LayerProjection> projections;

    SftSpec() = default;
    SftSpec(int d, Alphabet a) : dim(d), alphabet(std::move(a)) {
        if (d <= 0) throw std::invalid_argument("sft: dimension must be positive");
        if (alphabet.empty()) throw std::invalid_argument("sft: empty alphabet");
    }

    void add_forbidden(const Pattern& p) {
        if (p.dim != dim) throw std::invalid_argument("sft: forbidden pattern dim mismatch");
        for (auto& [_, sym] : p.cells)
            if (sym >= alphabet.size()) throw std::invalid_argument("sft: symbol out of range");
        Pattern n = p.normalized();
        for (auto& q : forbidden)
            if (q == n) return;  // canonical form makes dedup exact
        forbidden.push_back(std::move(n));
        radius = std::max(radius, forbidden.back().radius());
    }

    void add_template(ForbiddenTemplate t) {
        if (t.dim != dim) throw std::invalid_argument("sft: template dim mismatch");
        t.normalize();
        for (auto& q : templates)
            if (q == t) return;
        radius = std::max(radius, t.radius());
        templates.push_back(std::move(t));
    }

    size_t constraint_count() const { return forbidden.size() + templates.size(); }

    // Uniform view: exact patterns first, then templates.
    ForbiddenTemplate constraint_as_template(size_t idx) const {
        if (idx < forbidden.size())
            return ForbiddenTemplate::from_pattern(forbidden[idx], alphabet.size());
        return templates[idx - forbidden.size()];
    }
};

// Wang tiles: unit squares with colored edges, dimension fixed at 2.
struct WangTile {
    std::string name;
    int north = 0, east = 0, south = 0, west = 0;
};

struct WangTileset {
    Alphabet colors;
    std::vector<WangTile> tiles;

    int add_tile(const std::string& name, int n, int e, int s, int w) {
        for (auto& t : tiles)
            if (t.name == name) throw std::invalid_argument("wang: duplicate tile '" + name + "'");
        for (int c : {n, e, s, w})
            if (c < 0 || c >= colors.size()) throw std::invalid_argument("wang: bad color index");
        tiles.push_back({name, n, e, s, w});
        return static_cast<int>(tiles.size()) - 1;
    }

    int add_tile(const std::string& name, const std::string& n, const std::string& e,
                 const std::string& s, const std::string& w) {
        auto intern = [&](const std::string& c) {
            int i = colors.find(c);
            return i >= 0 ? i : colors.add(c);
        };
        return add_tile(name, intern(n), intern(e), intern(s), intern(w));
    }
};

// Filling of an n1 x ... x nd fundamental domain with wraparound; the finite
// stand-in for a fully periodic configuration. Cells are stored with the last
// coordinate fastest; lookups reduce each coordinate mod dims[i].
struct TorusConfig {
    std::vector<int> dims;
    std::vector<int> cells;

    TorusConfig() = default;
    TorusConfig(std::vector<int> d, std::vector<int> c) : dims(std::move(d)), cells(std::move(c)) {
        for (int n : dims)
            if (n <= 0) throw std::invalid_argument("torus: dims must be positive");
        if (static_cast<int64_t>(cells.size()) != cell_count(dims))
            throw std::invalid_argument("torus: cell count mismatch");
    }

    int dim() const { return static_cast<int>(dims.size()); }

    size_t index(const IVec& pos) const {
        size_t idx = 0;
        for (size_t i = 0; i < dims.size(); ++i)
            idx = idx * static_cast<size_t>(dims[i]) + static_cast<size_t>(mod_floor(pos[i], dims[i]));
        return idx;
    }

    int at(const IVec& pos) const { return cells[index(pos)]; }

    // Torus translated by v: result(z) = this(z + v).
    TorusConfig translated(const IVec& v) const {
        TorusConfig out;
        out.dims = dims;
        out.cells.resize(cells.size());
        size_t i = 0;
        for (BoxIter it(dims); !it.done(); it.next()) out.cells[i++] = at(add(*it, v));
        return out;
    }

    bool operator==(const TorusConfig& o) const { return dims == o.dims && cells == o.cells; }
    bool operator<(const TorusConfig& o) const {
        return cells != o.cells ? cells < o.cells : dims < o.dims;
    }
};

}  // namespace sft
