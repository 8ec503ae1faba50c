#pragma once

#include <cstdint>

#include "sft/spec.hpp"

namespace sft {

// Subgroup of Z^d in canonical form: rows of `basis` are the Hermite normal
// form of the generator matrix (row echelon, positive pivots, entries above a
// pivot reduced into [0, pivot)). Canonical form is unique per subgroup.
struct PeriodGroup {
    int dim = 0;
    std::vector<IVec> basis;  // HNF rows
    int rank = 0;

    bool operator==(const PeriodGroup& o) const { return dim == o.dim && basis == o.basis; }

    bool contains(const IVec& v) const;
    bool is_scaled_full_lattice(int p) const;  // == p Z^d
    int64_t index() const;                     // |Z^d / L| for rank-d groups

    static PeriodGroup from_generators(int dim, std::vector<IVec> gens);
    static PeriodGroup scaled_full_lattice(int dim, int p);
};

// Lattice of translation vectors fixing the torus config, as a subgroup of
// Z^d; always contains diag(dims). Computed by testing every translation in
// the fundamental domain.
PeriodGroup stabilizer(const TorusConfig& config);

// Least k > 0 with k*e_axis in the stabilizer; divides dims[axis].
int least_axis_period(const TorusConfig& config, int axis);

// Quotient Z^d / L for rank-d groups: canonical representatives live in the
// box given by the HNF pivots.
struct LatticeQuotient {
    explicit LatticeQuotient(const PeriodGroup& group);

    const std::vector<int>& box() const { return box_; }
    int64_t size() const { return cell_count(box_); }
    IVec canonical(IVec v) const;  // representative of v mod L

    const PeriodGroup& group() const { return group_; }

private:
    PeriodGroup group_;
    std::vector<int> box_;
};

}  // namespace sft
