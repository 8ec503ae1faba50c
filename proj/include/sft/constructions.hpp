#pragma once

#include "sft/ops.hpp"
#include "sft/spec.hpp"

namespace sft {

// Robinson's aperiodic tileset in Wang form: one cross and arm tiles with all
// rotations. Edges carry the arrow crossing them (direction and single/double
// weight); two tiles may touch iff outgoing arrows continue as incoming ones.
WangTileset robinson();

// Robinson plus the diagonal-arrow layer that makes the tileset
// NW-deterministic: every tile labels its NW and SE corners Hor/Ver by arm
// type (crosses exist in both), corner labels of diagonal neighbors must
// agree, and the labels ride the edges.
WangTileset kari_nw();

// East-deterministic aperiodic base: the NW-deterministic tileset with
// coordinates sheared so vertical adjacency becomes an up-left diagonal rule.
// Columns then determine their east neighbors.
SftSpec east_deterministic_base();

// Base spec plus a breaker symbol: breakers form full columns (no white above
// or below one) and never touch horizontally.
SftSpec breaker_layer(const SftSpec& base);
inline const char* kBreakerToken = "bk";

// Base-k increment transducer, least significant digit first; states are the
// pending carry.
struct Transducer {
    int k = 2;
    struct Edge {
        int state, in, next, out;
    };
    std::vector<Edge> edges;  // deterministic and total over (state, digit)
};
Transducer increment_transducer(int k);

// Counter layer C_k: digit/carry symbols plus the carry-over-breaker column
// symbol, and a marked-line sublayer. Rows between breaker columns hold a
// base-k number that increments upward; exactly the zero rows are marked.
SftSpec counter_layer(int k);

// Token helpers for the counter alphabet ("d<digit>c<carry>.<h|e>", "bk.<h|e>").
std::string counter_token(int digit, int carry, bool marked);
std::string counter_breaker_token(bool marked);

// Named layers with the cross-layer glue: desugars through product() plus
// the extra rules that couple cells of different layers.
struct LayerBundle {
    std::vector<std::pair<std::string, SftSpec>> layers;
    std::vector<std::vector<int>> allowed;
    std::vector<ForbiddenTemplate> extra;  // over the product alphabet

    SftSpec desugar() const;
};

// Y_k = A x C_k x T: periodic points are grids of p x k^(p-1) rectangles
// bounded by breaker columns and marked rows, with the aperiodic background
// copied across rectangles via East-determinism.
LayerBundle y_k(int k);

// Wang form of the Y_k product for file emission: corner values ride the
// edges so the sheared diagonal rules become pure edge matching. Semantics
// agree with y_k(k).desugar() up to the free corner components.
WangTileset y_k_wang(int k);

// Reflected n-ary code folding [0, n^d) onto the cube [0,n)^d; consecutive
// indices differ by one unit step.
struct GrayFold {
    int n = 2, d = 1;
    int64_t size() const;
    IVec index_to_coord(int64_t t) const;
    int64_t coord_to_index(const IVec& coords) const;
};
GrayFold gray_fold(int n, int d);

}  // namespace sft
