#pragma once

#include <iosfwd>

#include "sft/solver.hpp"

namespace sft {

// Directed graph G_{m,n}(X) for a 2D spec: vertices are the (m,n)-periodic
// locally admissible patterns on the strip S_{m,n} = {0 <= -nx+my < 4mr},
// edges the admissible gluings of a strip with its (0,4r)-shift. Bi-infinite
// paths correspond to configurations having (m,n) as a period; stacking a
// closed walk yields a torus of width m (sheared by n) and height 4r*length.
class StripGraph {
public:
    StripGraph(const SftSpec& spec, int m, int n, const SearchBudget& budget);

    int m() const { return m_; }
    int n() const { return n_; }
    int r() const { return r_; }
    bool truncated() const { return truncated_; }  // vertex enumeration hit the budget

    size_t vertex_count() const { return vertices_.size(); }
    const std::vector<IVec>& cells() const { return cells_; }
    const std::vector<int>& vertex(size_t i) const { return vertices_[i]; }
    const std::vector<std::vector<int>>& adjacency() const { return adj_; }

    // value of vertex i at any strip position, reduced by (m,n)-periodicity
    int value_at(size_t i, const IVec& pos) const;

    // does translating by (a,b) fix the pattern? meaningful when (a,b) keeps
    // the strip invariant: multiples of (m,n)/d, or (k,0) when n == 0
    bool vertex_periodic(size_t i, const IVec& v) const;

    // torus of width m and height 4r*len from a closed walk (requires n == 0)
    TorusConfig walk_torus(const std::vector<size_t>& closed_walk) const;

    void write_dot(std::ostream& os, const Alphabet& alphabet) const;

private:
    int resolve(const IVec& pos) const;

    int m_, n_, r_;
    bool truncated_ = false;
    std::vector<IVec> cells_;
    std::vector<int> cell_index_of_;          // dense lookup over (x, y-ymin(x))
    std::vector<int> ymin_;                   // per column
    std::vector<std::vector<int>> vertices_;  // values per cell
    std::vector<std::vector<int>> adj_;
};

// Strongly connected components in reverse topological order (Tarjan).
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& adj);

}  // namespace sft
