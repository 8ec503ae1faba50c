#pragma once

#include <array>
#include <map>
#include <optional>

#include "sft/spec.hpp"

namespace sft {

// Violation of a forbidden constraint at a torus position. `index` counts the
// spec's exact patterns first, then its templates.
struct Violation {
    IVec position;
    size_t index;
    bool operator==(const Violation& o) const { return position == o.position && index == o.index; }
};

// Sliding-window recoding x -> F(x), F(x)_z = table[(x_{z+v1},...,x_{z+vk})].
struct BlockCode {
    std::vector<IVec> window;
    std::map<std::vector<int>, int> table;
    std::optional<int> fallback;  // used on table miss when present
    Alphabet source, target;
};

// Several specs of equal dimension glued cell-wise; `allowed` lists the
// cross-layer symbol tuples permitted at a single cell (one entry per layer).
struct LayerProduct {
    std::vector<SftSpec> layers;
    std::vector<std::vector<int>> allowed;
};

struct DeterminismReport {
    bool deterministic = true;
    // first violating triple when not: context symbols and two completions
    int a = -1, b = -1, c1 = -1, c2 = -1;
};

enum class DetMode { NW, East };

SftSpec wang_to_sft(const WangTileset& tiles);

std::vector<Violation> is_locally_valid(const TorusConfig& config, const SftSpec& sft);

TorusConfig apply_block_code(const BlockCode& code, const TorusConfig& config);

SftSpec product(const LayerProduct& layers);

// Recover one layer of a product config via the spec's projection maps.
TorusConfig project_layer(const SftSpec& prod, const TorusConfig& config, size_t layer);

SftSpec lift_dimension(const SftSpec& sft);

DeterminismReport check_deterministic(const SftSpec& sft, DetMode mode);

// Spec with coordinates remapped by an invertible integer matrix: the result
// forbids A*pos-shaped copies of each pattern. Rows of `a` are matrix rows.
SftSpec linear_transform(const SftSpec& sft, const std::array<std::array<int, 2>, 2>& a);

SftSpec transpose_spec(const SftSpec& sft);
SftSpec mirror_x_spec(const SftSpec& sft);

}  // namespace sft
