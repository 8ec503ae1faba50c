#include "sft/strip_graph.hpp"

#include <algorithm>
#include <ostream>

namespace sft {

StripGraph::StripGraph(const SftSpec& spec, int m, int n, const SearchBudget& budget) {
    if (spec.dim != 2) throw std::invalid_argument("strip graph: spec must be 2-dimensional");
    if (m == 0 && n == 0) throw std::invalid_argument("strip graph: (m,n) must be nonzero");
    if (m < std::abs(n)) throw std::invalid_argument("strip graph: requires m >= |n|");
    m_ = m;
    n_ = n;
    r_ = std::max(1, spec.radius);  // S_{m,n} geometry needs r > 0

    ymin_.resize(m_);
    for (int x = 0; x < m_; ++x) ymin_[x] = ceil_div(n_ * x, m_);
    cell_index_of_.assign(static_cast<size_t>(m_) * 4 * r_, -1);
    for (int x = 0; x < m_; ++x)
        for (int dy = 0; dy < 4 * r_; ++dy) {
            cell_index_of_[static_cast<size_t>(x) * 4 * r_ + dy] = static_cast<int>(cells_.size());
            cells_.push_back({x, ymin_[x] + dy});
        }

    Region region;
    region.dim = 2;
    region.cells = cells_;
    region.resolve = [this](const IVec& pos) { return resolve(pos); };
    const int pad = 3 * r_ + 2;
    for (int x = 0; x < m_; ++x)
        for (int y = ymin_[x] - pad; y < ymin_[x] + 4 * r_ + pad; ++y)
            region.anchors.push_back({x, y});

    CompiledCsp csp(spec, region);
    auto res = csp.enumerate_all(SearchOrder::Lexicographic, budget, 1);
    truncated_ = res.stats.budget_exhausted;
    vertices_ = std::move(res.assignments);

    // Gluing checks: placements of forbidden constraints that straddle the
    // seam between a strip and its (0,4r)-shift. Cells resolve either into
    // the lower strip (side 0) or the shifted one (side 1).
    struct SeamCell {
        int side;
        int cell;
        SymbolSetPtr set;
    };
    std::vector<std::vector<SeamCell>> seams;
    for (size_t ci = 0; ci < spec.constraint_count(); ++ci) {
        ForbiddenTemplate t = spec.constraint_as_template(ci);
        for (int ax = 0; ax < m_; ++ax)
            for (int ay = ymin_[ax] - pad; ay < ymin_[ax] + 8 * r_ + pad; ++ay) {
                std::vector<SeamCell> sc;
                bool fits = true, lower = false, upper = false;
                for (auto& [off, set] : t.cells) {
                    IVec p{ax + off[0], ay + off[1]};
                    int c0 = resolve(p);
                    if (c0 >= 0) {
                        sc.push_back({0, c0, set});
                        lower = true;
                        continue;
                    }
                    int c1 = resolve({p[0], p[1] - 4 * r_});
                    if (c1 >= 0) {
                        sc.push_back({1, c1, set});
                        upper = true;
                        continue;
                    }
                    fits = false;
                    break;
                }
                if (fits && lower && upper) seams.push_back(std::move(sc));
            }
    }

    // adjacency via per-seam match masks over vertices
    const size_t nv = vertices_.size();
    adj_.assign(nv, {});
    if (nv == 0) return;
    using VertexSet = boost::dynamic_bitset<>;
    std::vector<std::pair<VertexSet, VertexSet>> masks;
    masks.reserve(seams.size());
    for (auto& sc : seams) {
        VertexSet lo(nv), hi(nv);
        lo.set();
        hi.set();
        // a vertex matches a side if all that side's cells are in their sets
        for (size_t v = 0; v < nv; ++v)
            for (auto& c : sc) {
                if (!c.set->test(static_cast<size_t>(vertices_[v][c.cell]))) {
                    (c.side == 0 ? lo : hi).reset(v);
                }
            }
        if (lo.any() && hi.any()) masks.emplace_back(std::move(lo), std::move(hi));
    }
    for (size_t v = 0; v < nv; ++v) {
        VertexSet ok(nv);
        ok.set();
        for (auto& [lo, hi] : masks)
            if (lo.test(v)) ok -= hi;
        for (size_t w = ok.find_first(); w != VertexSet::npos; w = ok.find_next(w))
            adj_[v].push_back(static_cast<int>(w));
    }
}

int StripGraph::resolve(const IVec& pos) const {
    int q = floor_div(pos[0], m_);
    int x = pos[0] - q * m_;
    int dy = pos[1] - q * n_ - ymin_[x];
    if (dy < 0 || dy >= 4 * r_) return -1;
    return cell_index_of_[static_cast<size_t>(x) * 4 * r_ + dy];
}

int StripGraph::value_at(size_t i, const IVec& pos) const {
    int c = resolve(pos);
    if (c < 0) throw std::out_of_range("strip graph: position outside strip");
    return vertices_[i][c];
}

bool StripGraph::vertex_periodic(size_t i, const IVec& v) const {
    for (auto& cell : cells_) {
        int c = resolve(add(cell, v));
        if (c < 0) return false;
        if (vertices_[i][c] != vertices_[i][cell_index_of_[static_cast<size_t>(cell[0]) * 4 * r_ +
                                                           (cell[1] - ymin_[cell[0]])]])
            return false;
    }
    return true;
}

TorusConfig StripGraph::walk_torus(const std::vector<size_t>& walk) const {
    if (n_ != 0) throw std::logic_error("walk_torus: only for horizontal strips");
    if (walk.empty()) throw std::invalid_argument("walk_torus: empty walk");
    int height = 4 * r_ * static_cast<int>(walk.size());
    std::vector<int> dims{m_, height};
    std::vector<int> cells(static_cast<size_t>(m_) * height);
    TorusConfig out(dims, cells);
    for (size_t k = 0; k < walk.size(); ++k)
        for (int x = 0; x < m_; ++x)
            for (int dy = 0; dy < 4 * r_; ++dy)
                out.cells[out.index({x, static_cast<int>(k) * 4 * r_ + dy})] =
                    vertices_[walk[k]][cell_index_of_[static_cast<size_t>(x) * 4 * r_ + dy]];
    return out;
}

void StripGraph::write_dot(std::ostream& os, const Alphabet& alphabet) const {
    os << "digraph strip {\n";
    for (size_t v = 0; v < vertices_.size(); ++v) {
        os << "  v" << v << " [label=\"";
        for (size_t c = 0; c < cells_.size(); ++c) {
            if (c) os << ' ';
            os << alphabet.token(vertices_[v][c]);
        }
        os << "\"];\n";
    }
    for (size_t v = 0; v < adj_.size(); ++v)
        for (int w : adj_[v]) os << "  v" << v << " -> v" << w << ";\n";
    os << "}\n";
}

std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> idx(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> onstack(n, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int counter = 0;

    // iterative Tarjan
    struct Frame {
        int v;
        size_t edge;
    };
    for (int s = 0; s < n; ++s) {
        if (idx[s] >= 0) continue;
        std::vector<Frame> frames{{s, 0}};
        idx[s] = low[s] = counter++;
        stack.push_back(s);
        onstack[s] = true;
        while (!frames.empty()) {
            auto& [v, e] = frames.back();
            if (e < adj[v].size()) {
                int w = adj[v][e++];
                if (idx[w] < 0) {
                    idx[w] = low[w] = counter++;
                    stack.push_back(w);
                    onstack[w] = true;
                    frames.push_back({w, 0});
                } else if (onstack[w]) {
                    low[v] = std::min(low[v], idx[w]);
                }
            } else {
                if (low[v] == idx[v]) {
                    std::vector<int> scc;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        onstack[w] = false;
                        comp[w] = static_cast<int>(sccs.size());
                        scc.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(scc.begin(), scc.end());
                    sccs.push_back(std::move(scc));
                }
                int vv = v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[vv]);
            }
        }
    }
    return sccs;
}

}  // namespace sft
