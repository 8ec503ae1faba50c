#pragma once

#include <boost/dynamic_bitset.hpp>
#include <limits>
#include <memory>
#include <map>
#include <stdexcept>

#include "sft/geometry.hpp"

namespace sft {

using SymbolSet = boost::dynamic_bitset<>;

// Finite pattern: a map from cell offsets to symbol indices. Supports are kept
// as given (not auto-translated) so occurrence queries see real coordinates.
struct Pattern {
    int dim = 0;
    std::map<IVec, int> cells;  // ordered map: deterministic iteration

    Pattern() = default;
    Pattern(int d, std::map<IVec, int> c) : dim(d), cells(std::move(c)) { check(); }

    void check() const {
        if (dim <= 0) throw std::invalid_argument("pattern: dimension must be positive");
        if (cells.empty()) throw std::invalid_argument("pattern: empty support");
        for (auto& [pos, sym] : cells) {
            if (static_cast<int>(pos.size()) != dim)
                throw std::invalid_argument("pattern: cell arity mismatch");
            if (sym < 0) throw std::invalid_argument("pattern: negative symbol index");
        }
    }

    // Translate so the coordinate-wise minimum of the support is the origin.
    Pattern normalized() const {
        IVec lo(dim, std::numeric_limits<int>::max());
        for (auto& [pos, _] : cells)
            for (int i = 0; i < dim; ++i) lo[i] = std::min(lo[i], pos[i]);
        Pattern out;
        out.dim = dim;
        for (auto& [pos, sym] : cells) out.cells.emplace(sub(pos, lo), sym);
        return out;
    }

    Pattern translated(const IVec& t) const {
        Pattern out;
        out.dim = dim;
        for (auto& [pos, sym] : cells) out.cells.emplace(add(pos, t), sym);
        return out;
    }

    // Smallest r with (normalized) support contained in [-r,r]^d.
    int radius() const {
        Pattern n = normalized();
        int r = 0;
        for (auto& [pos, _] : n.cells)
            for (int c : pos) r = std::max(r, c);
        return r;
    }

    bool operator==(const Pattern& o) const { return dim == o.dim && cells == o.cells; }
    bool operator<(const Pattern& o) const {
        return cells != o.cells ? cells < o.cells : dim < o.dim;
    }
};

// All positions v with v + support(small) inside support(big) and symbols equal.
inline std::vector<IVec> pattern_occurs(const Pattern& small, const Pattern& big) {
    if (small.dim != big.dim) throw std::invalid_argument("pattern_occurs: dimension mismatch");
    std::vector<IVec> hits;
    // candidate anchors: big position minus first small position
    const auto& [s0, sym0] = *small.cells.begin();
    for (auto& [bpos, bsym] : big.cells) {
        if (bsym != sym0) continue;
        IVec v = sub(bpos, s0);
        bool ok = true;
        for (auto& [spos, ssym] : small.cells) {
            auto it = big.cells.find(add(spos, v));
            if (it == big.cells.end() || it->second != ssym) {
                ok = false;
                break;
            }
        }
        if (ok) hits.push_back(std::move(v));
    }
    return hits;
}

// Shared immutable symbol sets: layered products reuse one mask across many
// constraints, so templates hold pointers rather than copies.
using SymbolSetPtr = std::shared_ptr<const SymbolSet>;

inline SymbolSetPtr make_symbol_set(SymbolSet s) {
    return std::make_shared<const SymbolSet>(std::move(s));
}

inline SymbolSetPtr singleton_set(int alphabet_size, int sym) {
    SymbolSet s(static_cast<size_t>(alphabet_size));
    s.set(static_cast<size_t>(sym));
    return make_symbol_set(std::move(s));
}

// Forbidden constraint with set-valued cells: matches when every cell's symbol
// lies in its set. An exact forbidden pattern is the singleton-set case; layer
// products lift their factors' patterns to these without enumerating tuples.
struct ForbiddenTemplate {
    int dim = 0;
    std::vector<std::pair<IVec, SymbolSetPtr>> cells;  // sorted by offset, min corner at origin

    static ForbiddenTemplate from_pattern(const Pattern& p, int alphabet_size) {
        ForbiddenTemplate t;
        t.dim = p.dim;
        Pattern n = p.normalized();
        for (auto& [pos, sym] : n.cells)
            t.cells.emplace_back(pos, singleton_set(alphabet_size, sym));
        return t;
    }

    void normalize() {
        if (cells.empty()) throw std::invalid_argument("template: empty support");
        IVec lo(dim, std::numeric_limits<int>::max());
        for (auto& [pos, _] : cells)
            for (int i = 0; i < dim; ++i) lo[i] = std::min(lo[i], pos[i]);
        for (auto& [pos, _] : cells) pos = sub(pos, lo);
        std::sort(cells.begin(), cells.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    int radius() const {
        int r = 0;
        for (auto& [pos, _] : cells)
            for (int c : pos) r = std::max(r, c);
        return r;
    }

    bool operator==(const ForbiddenTemplate& o) const {
        if (dim != o.dim || cells.size() != o.cells.size()) return false;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].first != o.cells[i].first) return false;
            if (cells[i].second != o.cells[i].second && *cells[i].second != *o.cells[i].second)
                return false;
        }
        return true;
    }
};

}  // namespace sft
