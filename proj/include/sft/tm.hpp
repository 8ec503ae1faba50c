#pragma once

#include <iosfwd>
#include <set>

#include "sft/spec.hpp"

namespace sft {

// Nondeterministic Turing machine with bounded-run semantics. Delta is a set:
// duplicate declarations collapse, so run counts match tiling counts.
struct TmTransition {
    int next = 0;
    int write = 0;
    char move = 'S';  // 'L', 'R', 'S'
    auto operator<=>(const TmTransition&) const = default;
};

struct TmSpec {
    Alphabet states;
    Alphabet tape;
    int blank = 0;
    std::vector<int> input_symbols;  // subset of tape, excludes blank
    int initial = 0;
    std::vector<bool> halting;                              // per state
    std::map<std::pair<int, int>, std::set<TmTransition>> delta;  // (state, read) ->

    bool is_halting(int q) const { return halting[static_cast<size_t>(q)]; }
    bool deterministic() const {
        for (auto& [_, ts] : delta)
            if (ts.size() > 1) return false;
        return true;
    }
};

TmSpec parse_tm(std::istream& in);
void write_tm(std::ostream& os, const TmSpec& tm);

// One snapshot per time step; the first is the initial configuration.
struct TmSnapshot {
    std::vector<int> tape;  // width w
    int head = 0;
    int state = 0;
    int chosen = -1;  // index into the ordered transition set that produced this snapshot
};

struct RunWitness {
    std::vector<TmSnapshot> snapshots;
    bool accepted = false;
};

// All maximal runs of length <= t confined to w cells, depth-first in
// declaration order. Branches whose head would leave [0, w) die.
std::vector<RunWitness> run_bounded(const TmSpec& tm, const std::vector<int>& input, int t, int w);

// Convenience: parse an input word over the tape alphabet tokens.
std::vector<int> tm_word(const TmSpec& tm, const std::string& letters);

// Wang tiles simulating the machine: an accepting run of length <= t using
// w tape cells corresponds to exactly one valid (w+2) x t bordered rectangle
// whose first row encodes the input.
WangTileset compile_tm(const TmSpec& tm);

// Exact number of valid bordered rectangle tilings with the input on the
// first row. Expects the color conventions of compile_tm; counts 0 when the
// tileset lacks them.
int64_t count_rectangle_tilings(const WangTileset& tiles, int w, int t,
                                const std::vector<std::string>& input_tokens);

// a^p b^q for p >= 0, a^|p| c^q for p < 0; without q, a^n.
std::string encode_unary(int p, std::optional<int> q = std::nullopt);

}  // namespace sft
