#pragma once

#include "sft/solver.hpp"

namespace sft {

// Valid torus fillings in lexicographic cell order. The callback returns
// false to stop early; `budget_exhausted` flags a truncated stream.
SearchStats enumerate_torus(const SftSpec& sft, const std::vector<int>& dims,
                            const SearchBudget& budget,
                            const std::function<bool(const TorusConfig&)>& cb);

struct TorusList {
    std::vector<TorusConfig> configs;
    SearchStats stats;
};
TorusList collect_torus(const SftSpec& sft, const std::vector<int>& dims,
                        const SearchBudget& budget, int threads = 1);

// Rectangular patch with free boundary (no wraparound); used for the
// aperiodicity evidence where a tileset fills patches but no torus.
struct PatchResult {
    std::optional<std::vector<int>> cells;  // column-major, height fastest
    SearchStats stats;
};
PatchResult find_patch(const SftSpec& sft, int width, int height, const SearchBudget& budget,
                       int threads = 1);

}  // namespace sft
