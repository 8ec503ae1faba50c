#include "sft/enumerate.hpp"

namespace sft {

SearchStats enumerate_torus(const SftSpec& sft, const std::vector<int>& dims,
                            const SearchBudget& budget,
                            const std::function<bool(const TorusConfig&)>& cb) {
    if (static_cast<int>(dims.size()) != sft.dim)
        throw std::invalid_argument("enumerate_torus: dims arity mismatch");
    for (int n : dims)
        if (n <= 0) throw std::invalid_argument("enumerate_torus: dims must be positive");
    CompiledCsp csp(sft, torus_region(dims));
    return csp.stream(SearchOrder::Lexicographic, budget,
                      [&](const std::vector<int>& cells) { return cb(TorusConfig(dims, cells)); });
}

TorusList collect_torus(const SftSpec& sft, const std::vector<int>& dims,
                        const SearchBudget& budget, int threads) {
    CompiledCsp csp(sft, torus_region(dims));
    auto res = csp.enumerate_all(SearchOrder::Lexicographic, budget, threads);
    TorusList out;
    out.stats = res.stats;
    out.configs.reserve(res.assignments.size());
    for (auto& a : res.assignments) out.configs.emplace_back(dims, a);
    return out;
}

PatchResult find_patch(const SftSpec& sft, int width, int height, const SearchBudget& budget,
                       int threads) {
    if (sft.dim != 2) throw std::invalid_argument("find_patch: dim must be 2");
    CompiledCsp csp(sft, patch_region(width, height));
    auto hit = csp.find_first(budget, threads);
    return {std::move(hit.assignment), hit.stats};
}

}  // namespace sft
