#pragma once

#include "sft/enumerate.hpp"
#include "sft/lattice.hpp"
#include "sft/strip_graph.hpp"

namespace sft {

struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Verdict { Yes, No, Unknown };

// Outcome of a budgeted period query. Yes always carries a witness that can
// be re-checked independently: a torus config, or a strip-graph walk with the
// strip parameters needed to rebuild it.
struct WitnessReport {
    Verdict verdict = Verdict::Unknown;
    std::optional<TorusConfig> witness;
    std::optional<PeriodGroup> lattice;  // quotient the witness lives on, when not a plain torus

    std::vector<size_t> walk;  // strip-graph witness (one_period / graph route)
    int walk_m = 0, walk_n = 0, walk_cycle_close = -1, walk_end_repeat = -1;

    uint64_t nodes = 0;
    double seconds = 0.0;
    std::string route;
};

std::string machine_line(const WitnessReport& r, bool include_timing = false);

// |alphabet|^(4*r*m) with r clamped to >= 1, saturating on overflow.
uint64_t vertical_companion_bound(const SftSpec& sft, int m);

// Is p a strong period: some valid p^d torus with stabilizer exactly p*Z^d.
WitnessReport strong_period_exists(const SftSpec& sft, int p, const SearchBudget& budget,
                                   int threads = 1);

enum class CountMode { Stabilizer, LexMin };

// Number of strong-period-p points normalized by p^d: stabilizer mode counts
// exact-stabilizer tori and divides; lex-min mode counts orbit representatives
// that are smallest among their translates. The two must agree.
int64_t count_strong(const SftSpec& sft, int p, const SearchBudget& budget, int threads = 1,
                     CountMode mode = CountMode::Stabilizer);

enum class HorizontalRoute { Auto, StripGraph, Direct };

// Is n the least horizontal period of some configuration. Strip-graph route:
// an SCC of G_{n,0} whose vertices witness non-periodicity for every proper
// divisor of n. Direct route: ladder over vertical companion periods up to
// the clamped bound.
WitnessReport horizontal_period(const SftSpec& sft, int n, const SearchBudget& budget,
                                int threads = 1, HorizontalRoute route = HorizontalRoute::Auto);

// Is (m,n) a 1-period: the four path conditions on G_{m,n} (cycle at the
// start, a deviating exit, a repeated vertex at the end, and a witness
// against every proper divisor of the vector). Orientations are normalized
// by transposing/reflecting the spec first.
WitnessReport one_period(const SftSpec& sft, int m, int n, const SearchBudget& budget,
                         int threads = 1);

// Exhaustive refutation over the fundamental domain of a rank-d lattice:
// No when every filling is refuted, Yes with a witness filling otherwise.
WitnessReport bounded_lattice_refute(const SftSpec& sft, const PeriodGroup& basis,
                                     const SearchBudget& budget, int threads = 1);

// Stream variant: forbidden patterns arrive one at a time (co-r.e. style);
// the stream is drained until refutation, exhaustion of the stream, or the
// budget cap on consumed patterns.
WitnessReport bounded_lattice_refute_stream(int dim, const Alphabet& alphabet,
                                            const std::function<std::optional<Pattern>()>& stream,
                                            const PeriodGroup& basis, const SearchBudget& budget);

}  // namespace sft
