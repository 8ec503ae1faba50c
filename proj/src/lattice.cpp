#include "sft/lattice.hpp"

#include <algorithm>
#include <cstdlib>

namespace sft {

namespace {

// Row-style HNF by integer elimination. Rows are modified in place.
std::vector<IVec> hermite_rows(std::vector<IVec> rows, int dim) {
    size_t r = 0;
    for (int c = 0; c < dim && r < rows.size(); ++c) {
        while (true) {
            size_t best = SIZE_MAX;
            for (size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 &&
                    (best == SIZE_MAX || std::abs(rows[i][c]) < std::abs(rows[best][c])))
                    best = i;
            if (best == SIZE_MAX) break;
            std::swap(rows[r], rows[best]);
            bool clean = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                int q = rows[i][c] / rows[r][c];
                for (int j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[r][c] != 0) {
            if (rows[r][c] < 0)
                for (int j = 0; j < dim; ++j) rows[r][j] = -rows[r][j];
            ++r;
        }
    }
    rows.resize(r);
    // reduce entries above each pivot into [0, pivot)
    for (size_t i = 0; i < rows.size(); ++i) {
        int c = 0;
        while (c < dim && rows[i][c] == 0) ++c;
        for (size_t j = 0; j < i; ++j) {
            int q = floor_div(rows[j][c], rows[i][c]);
            if (q != 0)
                for (int k = 0; k < dim; ++k) rows[j][k] -= q * rows[i][k];
        }
    }
    return rows;
}

}  // namespace

PeriodGroup PeriodGroup::from_generators(int dim, std::vector<IVec> gens) {
    for (auto& g : gens)
        if (static_cast<int>(g.size()) != dim)
            throw std::invalid_argument("period group: generator arity mismatch");
    PeriodGroup g;
    g.dim = dim;
    g.basis = hermite_rows(std::move(gens), dim);
    g.rank = static_cast<int>(g.basis.size());
    return g;
}

PeriodGroup PeriodGroup::scaled_full_lattice(int dim, int p) {
    std::vector<IVec> gens;
    for (int i = 0; i < dim; ++i) {
        IVec v(dim, 0);
        v[i] = p;
        gens.push_back(std::move(v));
    }
    return from_generators(dim, std::move(gens));
}

bool PeriodGroup::contains(const IVec& v) const {
    IVec x = v;
    for (auto& row : basis) {
        int c = 0;
        while (c < dim && row[c] == 0) ++c;
        if (c == dim) continue;
        if (x[c] % row[c] != 0) {
            // keep reducing; a nonzero remainder here can still be cleared only
            // by later rows with zero in column c, which cannot exist
            return false;
        }
        int q = x[c] / row[c];
        for (int j = 0; j < dim; ++j) x[j] -= q * row[j];
    }
    return is_zero(x);
}

bool PeriodGroup::is_scaled_full_lattice(int p) const {
    if (rank != dim) return false;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (basis[i][j] != (i == j ? p : 0)) return false;
    return true;
}

int64_t PeriodGroup::index() const {
    if (rank != dim) throw std::logic_error("period group: index of non-full-rank group");
    int64_t det = 1;
    for (int i = 0; i < dim; ++i) det *= basis[i][i];
    return det;
}

PeriodGroup stabilizer(const TorusConfig& config) {
    std::vector<IVec> gens;
    for (size_t i = 0; i < config.dims.size(); ++i) {
        IVec v(config.dims.size(), 0);
        v[static_cast<int>(i)] = config.dims[i];
        gens.push_back(std::move(v));
    }
    for (BoxIter it(config.dims); !it.done(); it.next()) {
        if (is_zero(*it)) continue;
        if (config.translated(*it) == config) gens.push_back(*it);
    }
    return PeriodGroup::from_generators(config.dim(), std::move(gens));
}

int least_axis_period(const TorusConfig& config, int axis) {
    int n = config.dims[axis];
    for (int k = 1; k <= n; ++k) {
        if (n % k != 0) continue;
        IVec v(config.dims.size(), 0);
        v[axis] = k;
        if (config.translated(v) == config) return k;
    }
    return n;
}

LatticeQuotient::LatticeQuotient(const PeriodGroup& group) : group_(group) {
    if (group.rank != group.dim)
        throw std::invalid_argument("lattice quotient: basis must have full rank");
    for (int i = 0; i < group.dim; ++i) {
        if (group.basis[i][i] <= 0)
            throw std::invalid_argument("lattice quotient: non-positive pivot");
        box_.push_back(group.basis[i][i]);
    }
}

IVec LatticeQuotient::canonical(IVec v) const {
    // basis rows are upper triangular; reduce coordinates left to right
    for (int i = 0; i < group_.dim; ++i) {
        int q = floor_div(v[i], group_.basis[i][i]);
        if (q != 0)
            for (int j = 0; j < group_.dim; ++j) v[j] -= q * group_.basis[i][j];
    }
    return v;
}

}  // namespace sft
