#include "sft/ops.hpp"

#include <algorithm>

namespace sft {

namespace {
// Past this many tiles the pairwise mismatch dominoes are stored as one
// set-valued template per tile instead of |T|^2 exact patterns.
constexpr int kWangExactLimit = 64;
}  // namespace

SftSpec wang_to_sft(const WangTileset& ts) {
    if (ts.tiles.empty()) throw std::invalid_argument("wang_to_sft: empty tileset");
    Alphabet names;
    for (auto& t : ts.tiles) names.add(t.name);
    SftSpec spec(2, names);

    const int n = static_cast<int>(ts.tiles.size());
    if (n <= kWangExactLimit) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (ts.tiles[i].east != ts.tiles[j].west)
                    spec.add_forbidden(Pattern(2, {{{0, 0}, i}, {{1, 0}, j}}));
                if (ts.tiles[i].north != ts.tiles[j].south)
                    spec.add_forbidden(Pattern(2, {{{0, 0}, i}, {{0, 1}, j}}));
            }
    } else {
        // mismatch masks depend only on the facing edge color; share them
        std::vector<SymbolSetPtr> bad_east(ts.colors.size()), bad_north(ts.colors.size());
        for (int c = 0; c < ts.colors.size(); ++c) {
            SymbolSet e(static_cast<size_t>(n)), v(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) {
                if (ts.tiles[j].west != c) e.set(static_cast<size_t>(j));
                if (ts.tiles[j].south != c) v.set(static_cast<size_t>(j));
            }
            bad_east[c] = make_symbol_set(std::move(e));
            bad_north[c] = make_symbol_set(std::move(v));
        }
        for (int i = 0; i < n; ++i) {
            auto self = singleton_set(n, i);
            if (bad_east[ts.tiles[i].east]->any()) {
                ForbiddenTemplate t;
                t.dim = 2;
                t.cells.emplace_back(IVec{0, 0}, self);
                t.cells.emplace_back(IVec{1, 0}, bad_east[ts.tiles[i].east]);
                spec.add_template(std::move(t));
            }
            if (bad_north[ts.tiles[i].north]->any()) {
                ForbiddenTemplate t;
                t.dim = 2;
                t.cells.emplace_back(IVec{0, 0}, self);
                t.cells.emplace_back(IVec{0, 1}, bad_north[ts.tiles[i].north]);
                spec.add_template(std::move(t));
            }
        }
    }

    WangAdjacency adj;
    adj.color_count = ts.colors.size();
    for (auto& t : ts.tiles) {
        adj.north.push_back(t.north);
        adj.east.push_back(t.east);
        adj.south.push_back(t.south);
        adj.west.push_back(t.west);
    }
    spec.wang = std::move(adj);
    spec.radius = std::max(spec.radius, 0);
    return spec;
}

std::vector<Violation> is_locally_valid(const TorusConfig& config, const SftSpec& sft) {
    if (config.dim() != sft.dim) throw std::invalid_argument("is_locally_valid: dim mismatch");
    for (int c : config.cells)
        if (c < 0 || c >= sft.alphabet.size())
            throw std::invalid_argument("is_locally_valid: symbol outside spec alphabet");

    std::vector<Violation> out;
    auto scan = [&](const auto& cells, size_t idx) {
        for (BoxIter it(config.dims); !it.done(); it.next()) {
            bool all = true;
            for (auto& [off, want] : cells) {
                int got = config.at(add(*it, off));
                bool in;
                if constexpr (std::is_same_v<std::decay_t<decltype(want)>, SymbolSetPtr>)
                    in = want->test(static_cast<size_t>(got));
                else
                    in = (got == want);
                if (!in) {
                    all = false;
                    break;
                }
            }
            if (all) out.push_back({*it, idx});
        }
    };
    size_t idx = 0;
    for (auto& p : sft.forbidden) scan(p.cells, idx++);
    for (auto& t : sft.templates) scan(t.cells, idx++);
    return out;
}

TorusConfig apply_block_code(const BlockCode& code, const TorusConfig& config) {
    if (code.window.empty()) throw std::invalid_argument("block code: empty window");
    TorusConfig out;
    out.dims = config.dims;
    out.cells.resize(config.cells.size());
    std::vector<int> key(code.window.size());
    size_t i = 0;
    for (BoxIter it(config.dims); !it.done(); it.next()) {
        for (size_t k = 0; k < code.window.size(); ++k) key[k] = config.at(add(*it, code.window[k]));
        auto hit = code.table.find(key);
        if (hit != code.table.end())
            out.cells[i++] = hit->second;
        else if (code.fallback)
            out.cells[i++] = *code.fallback;
        else
            throw std::runtime_error("block code: no table entry and no default");
    }
    return out;
}

SftSpec product(const LayerProduct& lp) {
    if (lp.layers.empty()) throw std::invalid_argument("product: no layers");
    if (lp.allowed.empty()) throw std::invalid_argument("product: empty allowed set");
    const int dim = lp.layers[0].dim;
    for (auto& l : lp.layers)
        if (l.dim != dim) throw std::invalid_argument("product: layer dim mismatch");

    Alphabet tuples;
    for (auto& tup : lp.allowed) {
        if (tup.size() != lp.layers.size())
            throw std::invalid_argument("product: tuple arity mismatch");
        std::string tok;
        for (size_t l = 0; l < tup.size(); ++l) {
            if (tup[l] < 0 || tup[l] >= lp.layers[l].alphabet.size())
                throw std::invalid_argument("product: tuple symbol out of range");
            if (l) tok += '|';
            tok += lp.layers[l].alphabet.token(tup[l]);
        }
        tuples.add(tok);
    }

    SftSpec spec(dim, tuples);
    const size_t nsym = static_cast<size_t>(spec.alphabet.size());

    for (size_t l = 0; l < lp.layers.size(); ++l) {
        // product symbols carrying each layer-l value; one shared mask per value
        std::vector<SymbolSet> raw(static_cast<size_t>(lp.layers[l].alphabet.size()),
                                   SymbolSet(nsym));
        for (size_t s = 0; s < lp.allowed.size(); ++s)
            raw[static_cast<size_t>(lp.allowed[s][l])].set(s);
        std::vector<SymbolSetPtr> carrier;
        carrier.reserve(raw.size());
        for (auto& r : raw) carrier.push_back(make_symbol_set(std::move(r)));

        for (size_t ci = 0; ci < lp.layers[l].constraint_count(); ++ci) {
            ForbiddenTemplate base = lp.layers[l].constraint_as_template(ci);
            ForbiddenTemplate lifted;
            lifted.dim = dim;
            for (auto& [pos, set] : base.cells) {
                size_t first = set->find_first();
                if (first != SymbolSet::npos && set->find_next(first) == SymbolSet::npos) {
                    lifted.cells.emplace_back(pos, carrier[first]);
                } else {
                    SymbolSet u(nsym);
                    for (size_t v = set->find_first(); v != SymbolSet::npos;
                         v = set->find_next(v))
                        u |= *carrier[v];
                    lifted.cells.emplace_back(pos, make_symbol_set(std::move(u)));
                }
            }
            spec.add_template(std::move(lifted));
        }

        LayerProjection proj;
        proj.target = lp.layers[l].alphabet;
        for (auto& tup : lp.allowed) proj.component.push_back(tup[l]);
        spec.projections.push_back(std::move(proj));
    }
    return spec;
}

TorusConfig project_layer(const SftSpec& prod, const TorusConfig& config, size_t layer) {
    if (layer >= prod.projections.size()) throw std::out_of_range("project_layer: no such layer");
    const auto& proj = prod.projections[layer];
    TorusConfig out;
    out.dims = config.dims;
    out.cells.reserve(config.cells.size());
    for (int c : config.cells) out.cells.push_back(proj.component.at(static_cast<size_t>(c)));
    return out;
}

SftSpec lift_dimension(const SftSpec& sft) {
    SftSpec out(sft.dim + 1, sft.alphabet);
    for (auto& p : sft.forbidden) {
        Pattern q;
        q.dim = sft.dim + 1;
        for (auto& [pos, sym] : p.cells) {
            IVec v = pos;
            v.push_back(0);
            q.cells.emplace(std::move(v), sym);
        }
        out.add_forbidden(q);
    }
    for (auto& t : sft.templates) {
        ForbiddenTemplate q;
        q.dim = sft.dim + 1;
        for (auto& [pos, set] : t.cells) {
            IVec v = pos;
            v.push_back(0);
            q.cells.emplace_back(std::move(v), set);
        }
        out.add_template(std::move(q));
    }

    // equality along the new axis
    const int n = sft.alphabet.size();
    IVec zero(sft.dim + 1, 0), up(sft.dim + 1, 0);
    up.back() = 1;
    if (n <= 64) {
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t)
                if (s != t) out.add_forbidden(Pattern(sft.dim + 1, {{zero, s}, {up, t}}));
    } else {
        for (int s = 0; s < n; ++s) {
            SymbolSet other(static_cast<size_t>(n));
            other.set();
            other.reset(static_cast<size_t>(s));
            ForbiddenTemplate t;
            t.dim = sft.dim + 1;
            t.cells.emplace_back(zero, singleton_set(n, s));
            t.cells.emplace_back(up, make_symbol_set(std::move(other)));
            out.add_template(std::move(t));
        }
    }
    return out;
}

namespace {

// no forbidden constraint fully matches inside the assigned cells of a 2x2 box
bool partial_block_ok(const SftSpec& sft, const std::map<IVec, int>& assigned) {
    for (size_t ci = 0; ci < sft.constraint_count(); ++ci) {
        ForbiddenTemplate t = sft.constraint_as_template(ci);
        for (int ax = -1; ax <= 1; ++ax)
            for (int ay = -1; ay <= 1; ++ay) {
                bool all = true;
                for (auto& [off, set] : t.cells) {
                    auto it = assigned.find(IVec{off[0] + ax, off[1] + ay});
                    if (it == assigned.end() || !set->test(static_cast<size_t>(it->second))) {
                        all = false;
                        break;
                    }
                }
                if (all) return false;
            }
    }
    return true;
}

}  // namespace

DeterminismReport check_deterministic(const SftSpec& sft, DetMode mode) {
    if (sft.dim != 2) throw std::invalid_argument("check_deterministic: dim must be 2");
    if (sft.radius > 1)
        throw std::invalid_argument("check_deterministic: radius > 1 unsupported");

    const int n = sft.alphabet.size();
    // a at (0,0); NW: b at (1,1), East: b at (0,1); candidate c at (1,0); d fills in.
    const IVec pa{0, 0}, pb = (mode == DetMode::NW) ? IVec{1, 1} : IVec{0, 1};
    const IVec pc{1, 0}, pd = (mode == DetMode::NW) ? IVec{0, 1} : IVec{1, 1};

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int first = -1;
            for (int c = 0; c < n; ++c) {
                std::map<IVec, int> cells{{pa, a}, {pb, b}, {pc, c}};
                if (!partial_block_ok(sft, cells)) continue;
                bool extends = false;
                for (int d = 0; d < n && !extends; ++d) {
                    cells[pd] = d;
                    extends = partial_block_ok(sft, cells);
                    cells.erase(pd);
                }
                if (!extends) continue;
                if (first < 0)
                    first = c;
                else
                    return {false, a, b, first, c};
            }
        }
    return {};
}

SftSpec linear_transform(const SftSpec& sft, const std::array<std::array<int, 2>, 2>& a) {
    if (sft.dim != 2) throw std::invalid_argument("linear_transform: dim must be 2");
    if (a[0][0] * a[1][1] - a[0][1] * a[1][0] == 0)
        throw std::invalid_argument("linear_transform: singular matrix");
    auto map = [&](const IVec& v) {
        return IVec{a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]};
    };
    SftSpec out(2, sft.alphabet);
    for (auto& p : sft.forbidden) {
        Pattern q;
        q.dim = 2;
        for (auto& [pos, sym] : p.cells) q.cells.emplace(map(pos), sym);
        out.add_forbidden(q);
    }
    for (auto& t : sft.templates) {
        ForbiddenTemplate q;
        q.dim = 2;
        for (auto& [pos, set] : t.cells) q.cells.emplace_back(map(pos), set);
        out.add_template(std::move(q));
    }
    return out;
}

SftSpec transpose_spec(const SftSpec& sft) { return linear_transform(sft, {{{0, 1}, {1, 0}}}); }

SftSpec mirror_x_spec(const SftSpec& sft) { return linear_transform(sft, {{{-1, 0}, {0, 1}}}); }

}  // namespace sft
