#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>

#include "sft/ops.hpp"
#include "sft/spec.hpp"

namespace sft {

// Caps for exhaustive searches. All searches are budgeted; exhaustion is
// reported, never silently truncated.
struct SearchBudget {
    uint64_t max_nodes = 200'000'000;
    double max_seconds = 600.0;
    uint64_t max_vertical = 4096;  // cap on companion vertical period / walk length

    void check() const {
        if (max_nodes == 0 || max_seconds <= 0 || max_vertical == 0)
            throw std::invalid_argument("budget: all limits must be positive");
    }
};

struct SearchStats {
    uint64_t nodes = 0;
    double seconds = 0.0;
    bool budget_exhausted = false;
};

// Finite set of cells with a wrap rule. `resolve` maps an absolute coordinate
// to a cell index, or -1 when the coordinate is outside the region (free
// boundary). `anchors` are the positions where forbidden constraints are
// pinned; a constraint applies only if all its cells resolve.
struct Region {
    int dim = 0;
    std::vector<IVec> cells;
    std::function<int(const IVec&)> resolve;
    std::vector<IVec> anchors;
};

Region torus_region(const std::vector<int>& dims);
Region patch_region(int width, int height);  // 2D rectangle, no wraparound

enum class SearchOrder { Lexicographic, Adaptive };

class CompiledCsp {
public:
    CompiledCsp(const SftSpec& spec, const Region& region);

    int cell_total() const { return ncells_; }
    bool trivially_empty() const { return empty_; }

    // Single-threaded streaming search; assignments arrive in lexicographic
    // cell order when `order` is Lexicographic. Callback returns false to stop.
    SearchStats stream(SearchOrder order, const SearchBudget& budget,
                       const std::function<bool(const std::vector<int>&)>& cb) const;

    // Deterministic parallel search: the first cell's values are explored as
    // independent chunks with evenly split node budgets, so results and
    // reported stats do not depend on the thread count.
    struct FirstHit {
        std::optional<std::vector<int>> assignment;
        SearchStats stats;
    };
    FirstHit find_first(const SearchBudget& budget, int threads,
                        const std::function<bool(const std::vector<int>&)>& keep = nullptr) const;

    struct Enumeration {
        std::vector<std::vector<int>> assignments;
        SearchStats stats;
    };
    Enumeration enumerate_all(SearchOrder order, const SearchBudget& budget, int threads,
                              std::optional<uint64_t> limit = std::nullopt) const;

    // Count assignments satisfying `keep` (nullptr keeps everything).
    struct CountResult {
        uint64_t count = 0;
        SearchStats stats;
    };
    CountResult count(const SearchBudget& budget, int threads,
                      const std::function<bool(const std::vector<int>&)>& keep) const;

    struct Placement {  // compiled forbidden-constraint instance
        std::vector<int> cells;
        std::vector<SymbolSetPtr> sets;
    };

private:

    int ncells_ = 0;
    int nsym_ = 0;
    bool empty_ = false;  // a single-cell constraint wiped a domain out
    std::vector<SymbolSet> base_domains_;
    std::vector<Placement> placements_;
    std::vector<std::vector<std::pair<int, int>>> cell_placements_;  // cell -> (placement, slot)

    bool wang_ = false;
    std::vector<std::array<int, 4>> wang_neighbor_;       // cell -> e,w,n,s neighbor or -1
    std::vector<std::array<int, 4>> wang_color_;          // symbol -> n,e,s,w colors
    std::vector<std::vector<SymbolSet>> wang_mask_;       // dir -> color -> allowed neighbors
};

}  // namespace sft
