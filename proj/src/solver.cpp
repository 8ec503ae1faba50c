#include "sft/solver.hpp"

#include <algorithm>
#include <chrono>
#include <thread>
#include <unordered_map>

namespace sft {

Region torus_region(const std::vector<int>& dims) {
    Region r;
    r.dim = static_cast<int>(dims.size());
    for (BoxIter it(dims); !it.done(); it.next()) r.cells.push_back(*it);
    r.anchors = r.cells;
    r.resolve = [dims](const IVec& pos) {
        int idx = 0;
        for (size_t i = 0; i < dims.size(); ++i)
            idx = idx * dims[i] + mod_floor(pos[i], dims[i]);
        return idx;
    };
    return r;
}

Region patch_region(int width, int height) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("patch: bad size");
    Region r;
    r.dim = 2;
    for (int x = 0; x < width; ++x)
        for (int y = 0; y < height; ++y) r.cells.push_back({x, y});
    r.anchors = r.cells;
    r.resolve = [width, height](const IVec& pos) {
        if (pos[0] < 0 || pos[0] >= width || pos[1] < 0 || pos[1] >= height) return -1;
        return pos[0] * height + pos[1];
    };
    return r;
}

CompiledCsp::CompiledCsp(const SftSpec& spec, const Region& region) {
    ncells_ = static_cast<int>(region.cells.size());
    nsym_ = spec.alphabet.size();
    base_domains_.assign(ncells_, SymbolSet(static_cast<size_t>(nsym_)));
    for (auto& d : base_domains_) d.set();

    wang_ = spec.wang.has_value() && region.dim == 2;
    if (wang_) {
        const auto& wa = *spec.wang;
        wang_color_.resize(nsym_);
        for (int s = 0; s < nsym_; ++s)
            wang_color_[s] = {wa.north[s], wa.east[s], wa.south[s], wa.west[s]};
        // dir 0: +x neighbor keyed by my east color; 1: -x / west; 2: +y / north; 3: -y / south
        wang_mask_.assign(4, std::vector<SymbolSet>(wa.color_count, SymbolSet(nsym_)));
        for (int t = 0; t < nsym_; ++t) {
            wang_mask_[0][wa.west[t]].set(t);
            wang_mask_[1][wa.east[t]].set(t);
            wang_mask_[2][wa.south[t]].set(t);
            wang_mask_[3][wa.north[t]].set(t);
        }
        wang_neighbor_.resize(ncells_);
        for (int c = 0; c < ncells_; ++c) {
            const IVec& p = region.cells[c];
            wang_neighbor_[c] = {region.resolve({p[0] + 1, p[1]}), region.resolve({p[0] - 1, p[1]}),
                                 region.resolve({p[0], p[1] + 1}), region.resolve({p[0], p[1] - 1})};
        }
    }

    cell_placements_.resize(ncells_);
    auto is_wang_domino = [&](const ForbiddenTemplate& t) {
        if (!wang_ || t.cells.size() != 2) return false;
        const IVec& a = t.cells[0].first;
        const IVec& b = t.cells[1].first;
        return a == IVec{0, 0} && (b == IVec{1, 0} || b == IVec{0, 1});
    };

    for (size_t ci = 0; ci < spec.constraint_count(); ++ci) {
        ForbiddenTemplate t = spec.constraint_as_template(ci);
        if (is_wang_domino(t)) continue;  // covered by edge masks
        for (const IVec& anchor : region.anchors) {
            // group by resolved cell; same-cell slots intersect
            std::unordered_map<int, SymbolSetPtr> by_cell;
            bool fits = true;
            for (auto& [off, set] : t.cells) {
                int cell = region.resolve(add(anchor, off));
                if (cell < 0) {
                    fits = false;
                    break;
                }
                auto it = by_cell.find(cell);
                if (it == by_cell.end()) {
                    by_cell.emplace(cell, set);
                } else {
                    SymbolSet merged = *it->second;
                    merged &= *set;
                    it->second = make_symbol_set(std::move(merged));
                }
            }
            if (!fits) continue;
            bool feasible = true;
            for (auto& [_, s] : by_cell)
                if (s->none()) {
                    feasible = false;
                    break;
                }
            if (!feasible) continue;  // aliasing made the match impossible

            if (by_cell.size() == 1) {
                auto& [cell, s] = *by_cell.begin();
                base_domains_[cell] -= *s;  // single-cell constraint: prune up front
                if (base_domains_[cell].none()) empty_ = true;
                continue;
            }
            Placement p;
            std::vector<std::pair<int, SymbolSetPtr>> sorted(by_cell.begin(), by_cell.end());
            std::sort(sorted.begin(), sorted.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            for (auto& [cell, s] : sorted) {
                p.cells.push_back(cell);
                p.sets.push_back(std::move(s));
            }
            // dedup placements (wraparound aliases anchors)
            bool dup = false;
            for (auto& q : placements_)
                if (q.cells == p.cells) {
                    bool same = true;
                    for (size_t i = 0; i < p.sets.size() && same; ++i)
                        same = (q.sets[i] == p.sets[i]) || (*q.sets[i] == *p.sets[i]);
                    if (same) {
                        dup = true;
                        break;
                    }
                }
            if (!dup) {
                int idx = static_cast<int>(placements_.size());
                for (size_t slot = 0; slot < p.cells.size(); ++slot)
                    cell_placements_[p.cells[slot]].emplace_back(idx, static_cast<int>(slot));
                placements_.push_back(std::move(p));
            }
        }
    }
}

namespace {

using Clock = std::chrono::steady_clock;

struct SearchState {
    const CompiledCsp* csp;
    const std::vector<CompiledCsp::Placement>* placements;
    const std::vector<std::vector<std::pair<int, int>>>* cell_placements;

    std::vector<SymbolSet> domains;
    std::vector<int> assigned;
    std::vector<std::pair<int, int>> pctr;  // per placement: (unassigned, mismatched)
    std::vector<int> saved_depth;
    std::vector<std::vector<std::pair<int, SymbolSet>>> trail;

    uint64_t nodes = 0;
    uint64_t max_nodes = UINT64_MAX;
    Clock::time_point start;
    double max_seconds = 1e18;
    bool exhausted = false;
    const std::atomic<bool>* cancel = nullptr;

    SymbolSet scratch;

    bool out_of_budget() {
        if (nodes >= max_nodes) return exhausted = true;
        if ((nodes & 0xfff) == 0) {
            if (cancel && cancel->load(std::memory_order_relaxed)) return true;
            std::chrono::duration<double> el = Clock::now() - start;
            if (el.count() > max_seconds) return exhausted = true;
        }
        return false;
    }
};

class Searcher {
public:
    Searcher(const CompiledCsp& csp, const std::vector<SymbolSet>& base,
             const std::vector<CompiledCsp::Placement>& placements,
             const std::vector<std::vector<std::pair<int, int>>>& cellp, bool wang,
             const std::vector<std::array<int, 4>>& wneigh,
             const std::vector<std::array<int, 4>>& wcolor,
             const std::vector<std::vector<SymbolSet>>& wmask, int ncells, int nsym)
        : placements_(placements),
          cellp_(cellp),
          wang_(wang),
          wneigh_(wneigh),
          wcolor_(wcolor),
          wmask_(wmask),
          ncells_(ncells),
          nsym_(nsym) {
        st_.domains = base;
        st_.assigned.assign(ncells, -1);
        st_.pctr.resize(placements.size());
        for (size_t i = 0; i < placements.size(); ++i)
            st_.pctr[i] = {static_cast<int>(placements[i].cells.size()), 0};
        st_.saved_depth.assign(ncells, -1);
        st_.trail.resize(ncells + 1);
        st_.scratch.resize(nsym);
        (void)csp;
    }

    SearchState st_;
    const std::vector<CompiledCsp::Placement>& placements_;
    const std::vector<std::vector<std::pair<int, int>>>& cellp_;
    bool wang_;
    const std::vector<std::array<int, 4>>& wneigh_;
    const std::vector<std::array<int, 4>>& wcolor_;
    const std::vector<std::vector<SymbolSet>>& wmask_;
    int ncells_, nsym_;
    bool lex_ = true;

    void save_domain(int cell, int depth) {
        if (st_.saved_depth[cell] == depth) return;
        st_.trail[depth].emplace_back(cell, st_.domains[cell]);
        st_.saved_depth[cell] = depth;
    }

    // returns false on conflict; counter updates always complete
    bool assign(int cell, int v, int depth) {
        st_.assigned[cell] = v;
        bool ok = true;
        for (auto [pi, slot] : cellp_[cell]) {
            auto& [un, mis] = st_.pctr[pi];
            const auto& P = placements_[pi];
            --un;
            if (!P.sets[slot]->test(static_cast<size_t>(v))) {
                ++mis;
                continue;
            }
            if (mis != 0) continue;
            if (un == 0) {
                ok = false;
            } else if (un == 1 && ok) {
                for (size_t s = 0; s < P.cells.size(); ++s) {
                    int other = P.cells[s];
                    if (st_.assigned[other] >= 0) continue;
                    st_.scratch = st_.domains[other];
                    st_.scratch &= *P.sets[s];
                    if (st_.scratch.any()) {
                        save_domain(other, depth);
                        st_.domains[other] -= *P.sets[s];
                        if (st_.domains[other].none()) ok = false;
                    }
                    break;
                }
            }
        }
        if (wang_ && ok) {
            for (int dir = 0; dir < 4; ++dir) {
                int u = wneigh_[cell][dir];
                if (u < 0) continue;
                int color = dir == 0   ? wcolor_[v][1]
                            : dir == 1 ? wcolor_[v][3]
                            : dir == 2 ? wcolor_[v][0]
                                       : wcolor_[v][2];
                const SymbolSet& mask = wmask_[dir][color];
                int uv = st_.assigned[u];
                if (uv >= 0) {
                    if (!mask.test(static_cast<size_t>(uv))) {
                        ok = false;
                        break;
                    }
                } else {
                    save_domain(u, depth);
                    st_.domains[u] &= mask;
                    if (st_.domains[u].none()) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        return ok;
    }

    void unassign(int cell, int v, int depth) {
        for (auto [pi, slot] : cellp_[cell]) {
            auto& [un, mis] = st_.pctr[pi];
            ++un;
            if (!placements_[pi].sets[slot]->test(static_cast<size_t>(v))) --mis;
        }
        st_.assigned[cell] = -1;
        for (auto& [c, saved] : st_.trail[depth]) {
            st_.domains[c] = saved;
            st_.saved_depth[c] = -1;
        }
        st_.trail[depth].clear();
    }

    int pick_cell() const {
        if (lex_) {
            for (int c = 0; c < ncells_; ++c)
                if (st_.assigned[c] < 0) return c;
            return -1;
        }
        int best = -1;
        size_t best_size = SIZE_MAX;
        for (int c = 0; c < ncells_; ++c) {
            if (st_.assigned[c] >= 0) continue;
            size_t s = st_.domains[c].count();
            if (s < best_size) {
                best_size = s;
                best = c;
            }
        }
        return best;
    }

    // dfs over remaining cells; emit() returns false to stop the whole search
    bool dfs(int depth, const std::function<bool(const std::vector<int>&)>& emit) {
        int cell = pick_cell();
        if (cell < 0) return emit(st_.assigned);
        const SymbolSet dom = st_.domains[cell];
        for (size_t v = dom.find_first(); v != SymbolSet::npos; v = dom.find_next(v)) {
            ++st_.nodes;
            if (st_.out_of_budget()) return false;
            bool ok = assign(cell, static_cast<int>(v), depth);
            if (ok && !dfs(depth + 1, emit)) {
                unassign(cell, static_cast<int>(v), depth);
                return false;
            }
            unassign(cell, static_cast<int>(v), depth);
        }
        return true;
    }
};

}  // namespace

SearchStats CompiledCsp::stream(SearchOrder order, const SearchBudget& budget,
                                const std::function<bool(const std::vector<int>&)>& cb) const {
    budget.check();
    SearchStats stats;
    auto t0 = Clock::now();
    if (!empty_) {
        Searcher s(*this, base_domains_, placements_, cell_placements_, wang_, wang_neighbor_,
                   wang_color_, wang_mask_, ncells_, nsym_);
        s.lex_ = (order == SearchOrder::Lexicographic);
        s.st_.max_nodes = budget.max_nodes;
        s.st_.max_seconds = budget.max_seconds;
        s.st_.start = t0;
        if (ncells_ == 0) {
            cb({});
        } else {
            s.dfs(0, cb);
        }
        stats.nodes = s.st_.nodes;
        stats.budget_exhausted = s.st_.exhausted;
    }
    stats.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return stats;
}

namespace {

struct ChunkResult {
    std::vector<std::vector<int>> found;
    uint64_t nodes = 0;
    bool exhausted = false;
    uint64_t kept = 0;
};

// Run one search per value of the root cell, each with an even share of the
// node budget. Chunk outcomes depend only on the chunking, not on threads.
template <typename PerChunk>
std::vector<ChunkResult> run_chunks(const CompiledCsp&, int root, const SymbolSet& rootdom,
                                    const SearchBudget& budget, int threads, PerChunk per_chunk,
                                    std::atomic<int>* best_hit) {
    std::vector<size_t> values;
    for (size_t v = rootdom.find_first(); v != SymbolSet::npos; v = rootdom.find_next(v))
        values.push_back(v);
    std::vector<ChunkResult> results(values.size());
    if (values.empty()) return results;

    const uint64_t per = budget.max_nodes / values.size();
    const uint64_t extra = budget.max_nodes % values.size();
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            if (best_hit && best_hit->load() < static_cast<int>(i)) continue;
            SearchBudget b = budget;
            b.max_nodes = std::max<uint64_t>(1, per + (i < extra ? 1 : 0));
            results[i] = per_chunk(root, static_cast<int>(values[i]), b, i);
        }
    };
    int t = std::max(1, std::min<int>(threads, static_cast<int>(values.size())));
    if (t == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < t; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return results;
}

}  // namespace

CompiledCsp::FirstHit CompiledCsp::find_first(
    const SearchBudget& budget, int threads,
    const std::function<bool(const std::vector<int>&)>& keep) const {
    budget.check();
    FirstHit out;
    auto t0 = Clock::now();
    if (empty_ || ncells_ == 0) {
        if (!empty_ && ncells_ == 0 && (!keep || keep({}))) out.assignment = std::vector<int>{};
        out.stats.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        return out;
    }
    const int root = 0;
    std::atomic<int> best_hit{INT32_MAX};
    auto per_chunk = [&](int rootCell, int rootVal, const SearchBudget& b, size_t idx) {
        ChunkResult r;
        Searcher s(*this, base_domains_, placements_, cell_placements_, wang_, wang_neighbor_,
                   wang_color_, wang_mask_, ncells_, nsym_);
        s.lex_ = false;
        s.st_.max_nodes = b.max_nodes;
        s.st_.max_seconds = b.max_seconds;
        s.st_.start = Clock::now();
        ++s.st_.nodes;
        if (s.assign(rootCell, rootVal, 0)) {
            s.dfs(1, [&](const std::vector<int>& a) {
                if (keep && !keep(a)) return true;  // keep searching this chunk
                r.found.push_back(a);
                return false;  // first hit in this chunk
            });
        }
        r.nodes = s.st_.nodes;
        r.exhausted = s.st_.exhausted;
        if (!r.found.empty()) {
            int expect = best_hit.load();
            while (static_cast<int>(idx) < expect &&
                   !best_hit.compare_exchange_weak(expect, static_cast<int>(idx))) {
            }
        }
        return r;
    };
    auto results =
        run_chunks(*this, root, base_domains_[root], budget, threads, per_chunk, &best_hit);

    uint64_t nodes = 0;
    for (size_t i = 0; i < results.size(); ++i) {
        nodes += results[i].nodes;
        if (results[i].exhausted) out.stats.budget_exhausted = true;
        if (!results[i].found.empty()) {
            out.assignment = results[i].found.front();
            break;
        }
    }
    out.stats.nodes = nodes;
    out.stats.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return out;
}

CompiledCsp::Enumeration CompiledCsp::enumerate_all(SearchOrder order, const SearchBudget& budget,
                                                    int threads,
                                                    std::optional<uint64_t> limit) const {
    budget.check();
    Enumeration out;
    auto t0 = Clock::now();
    if (empty_) {
        out.stats.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        return out;
    }
    if (ncells_ == 0) {
        out.assignments.push_back({});
        out.stats.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        return out;
    }
    const int root = 0;
    auto per_chunk = [&](int rootCell, int rootVal, const SearchBudget& b, size_t) {
        ChunkResult r;
        Searcher s(*this, base_domains_, placements_, cell_placements_, wang_, wang_neighbor_,
                   wang_color_, wang_mask_, ncells_, nsym_);
        s.lex_ = (order == SearchOrder::Lexicographic);
        s.st_.max_nodes = b.max_nodes;
        s.st_.max_seconds = b.max_seconds;
        s.st_.start = Clock::now();
        ++s.st_.nodes;
        if (s.assign(rootCell, rootVal, 0)) {
            s.dfs(1, [&](const std::vector<int>& a) {
                r.found.push_back(a);
                return true;
            });
        }
        r.nodes = s.st_.nodes;
        r.exhausted = s.st_.exhausted;
        return r;
    };
    auto results = run_chunks(*this, root, base_domains_[root], budget, threads, per_chunk, nullptr);
    for (auto& r : results) {
        out.stats.nodes += r.nodes;
        if (r.exhausted) out.stats.budget_exhausted = true;
        for (auto& a : r.found) out.assignments.push_back(std::move(a));
    }
    if (order == SearchOrder::Adaptive)
        std::sort(out.assignments.begin(), out.assignments.end());
    if (limit && out.assignments.size() > *limit) out.assignments.resize(*limit);
    out.stats.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return out;
}

CompiledCsp::CountResult CompiledCsp::count(
    const SearchBudget& budget, int threads,
    const std::function<bool(const std::vector<int>&)>& keep) const {
    budget.check();
    CountResult out;
    auto t0 = Clock::now();
    if (empty_) {
        out.stats.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        return out;
    }
    if (ncells_ == 0) {
        out.count = (!keep || keep({})) ? 1 : 0;
        out.stats.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        return out;
    }
    const int root = 0;
    auto per_chunk = [&](int rootCell, int rootVal, const SearchBudget& b, size_t) {
        ChunkResult r;
        Searcher s(*this, base_domains_, placements_, cell_placements_, wang_, wang_neighbor_,
                   wang_color_, wang_mask_, ncells_, nsym_);
        s.lex_ = false;
        s.st_.max_nodes = b.max_nodes;
        s.st_.max_seconds = b.max_seconds;
        s.st_.start = Clock::now();
        ++s.st_.nodes;
        if (s.assign(rootCell, rootVal, 0)) {
            s.dfs(1, [&](const std::vector<int>& a) {
                if (!keep || keep(a)) ++r.kept;
                return true;
            });
        }
        r.nodes = s.st_.nodes;
        r.exhausted = s.st_.exhausted;
        return r;
    };
    auto results = run_chunks(*this, root, base_domains_[root], budget, threads, per_chunk, nullptr);
    for (auto& r : results) {
        out.stats.nodes += r.nodes;
        out.count += r.kept;
        if (r.exhausted) out.stats.budget_exhausted = true;
    }
    out.stats.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return out;
}

}  // namespace sft
