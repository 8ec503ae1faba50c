// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 9 treats a budget-bound Unknown as a failure only when
// SFT_NIGHTLY=1; the regular run reports it as a pass with a note.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sft/constructions.hpp"
#include "sft/enumerate.hpp"
#include "sft/periods.hpp"
#include "sft/text_io.hpp"
#include "sft/tm.hpp"
#include "test_helpers.hpp"
#include "tm_corpus.hpp"

using namespace sft;
using namespace sft::testing;

namespace {

SearchBudget budget(uint64_t nodes, double seconds, uint64_t vertical = 4096) {
    SearchBudget b;
    b.max_nodes = nodes;
    b.max_seconds = seconds;
    b.max_vertical = vertical;
    return b;
}

// --- independent counting oracle: inclusion-exclusion over the subgroups
// between p*Z^2 and Z^2, counting configs whose stabilizer contains each ---
int64_t exact_count_oracle_2d(const SftSpec& spec, int p, const SearchBudget& b) {
    using Vec = std::pair<int, int>;
    auto normal = [&](Vec v) { return Vec{mod_floor(v.first, p), mod_floor(v.second, p)}; };
    // subgroups of (Z_p)^2 as explicit element sets
    std::set<std::set<Vec>> subgroups;
    std::vector<Vec> elems;
    for (int a = 0; a < p; ++a)
        for (int c = 0; c < p; ++c) elems.push_back({a, c});
    for (auto& g1 : elems)
        for (auto& g2 : elems) {
            std::set<Vec> span{{0, 0}};
            // close under addition of the two generators
            bool grew = true;
            while (grew) {
                grew = false;
                std::set<Vec> next = span;
                for (auto& v : span)
                    for (auto* g : {&g1, &g2}) {
                        Vec w = normal({v.first + g->first, v.second + g->second});
                        if (next.insert(w).second) grew = true;
                    }
                span.swap(next);
            }
            subgroups.insert(std::move(span));
        }
    // configs on the p-torus whose stabilizer contains a given subgroup
    auto fixed_count = [&](const std::set<Vec>& sub) {
        int64_t count = 0;
        collect_torus(spec, {p, p}, b);  // warm check that enumeration succeeds
        enumerate_torus(spec, {p, p}, b, [&](const TorusConfig& cfg) {
            bool fixed = true;
            for (auto& v : sub)
                if (cfg.translated({v.first, v.second}) != cfg) {
                    fixed = false;
                    break;
                }
            if (fixed) ++count;
            return true;
        });
        return count;
    };
    // exact(sub) = fixed(sub) - sum over strictly larger subgroups
    std::vector<std::set<Vec>> order(subgroups.begin(), subgroups.end());
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });
    std::map<std::set<Vec>, int64_t> exact;
    for (auto& sub : order) {
        int64_t value = fixed_count(sub);
        for (auto& larger : order) {
            if (larger.size() <= sub.size()) continue;
            if (std::includes(larger.begin(), larger.end(), sub.begin(), sub.end()))
                value -= exact.at(larger);
        }
        exact[sub] = value;
    }
    // the trivial subgroup corresponds to stabilizer exactly p*Z^2
    std::set<Vec> trivial{{0, 0}};
    return exact.at(trivial) / (static_cast<int64_t>(p) * p);
}

bool run_cli(const std::string& args, std::string& out) {
    const char* bin = std::getenv("SFTTOOL_BIN");
    if (!bin) return false;
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return false;
    char buf[4096];
    out.clear();
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    pclose(p);
    return true;
}

std::string slurp_or_empty(const std::string& path) {
    try {
        return read_file(path);
    } catch (...) {
        return "";
    }
}

// ---- criteria ----

bool criterion1(std::string& note) {
    for (int q : {2, 3}) {
        SftSpec shift = full_shift(1, q);
        for (int n = 1; n <= 8; ++n) {
            int64_t total = 0;
            for (int k = 1; k <= n; ++k)
                if (n % k == 0) total += k * count_strong(shift, k, budget(1u << 26, 30));
            int64_t want = 1;
            for (int i = 0; i < n; ++i) want *= q;
            if (total != want) {
                note = "necklace identity fails at q=" + std::to_string(q) +
                       " n=" + std::to_string(n);
                return false;
            }
        }
    }
    return true;
}

bool criterion2(std::string& note) {
    SftSpec shift = full_shift(2, 2);
    auto b = budget(1u << 26, 30);
    int64_t nb2 = count_strong(shift, 2, b);
    int64_t nb1 = count_strong(shift, 1, b);
    int64_t oracle2 = exact_count_oracle_2d(shift, 2, b);
    int64_t oracle1 = exact_count_oracle_2d(shift, 1, b);
    if (nb2 != 2 || nb1 != 2) {
        note = "expected Nb(2)=2 Nb(1)=2, got " + std::to_string(nb2) + "," + std::to_string(nb1);
        return false;
    }
    if (oracle2 != nb2 || oracle1 != nb1) {
        note = "inclusion-exclusion oracle disagrees";
        return false;
    }
    return true;
}

bool criterion3(std::string& note) {
    auto b = budget(1u << 27, 30);
    int cases = 0;
    for (uint32_t seed = 1; cases < 20; ++seed) {
        int dim = seed % 2 == 0 ? 2 : 1;
        int symbols = 2 + static_cast<int>(seed % 2);
        SftSpec spec = dim == 2 ? random_domino_spec(seed * 101, symbols, 3)
                                : full_shift(1, symbols);
        if (dim == 1 && seed % 3 == 0) spec.add_forbidden(Pattern(1, {{{0}, 0}, {{1}, 0}}));
        for (int p = 1; p <= 3; ++p) {
            int64_t a = count_strong(spec, p, b, 1, CountMode::Stabilizer);
            int64_t c = count_strong(spec, p, b, 1, CountMode::LexMin);
            if (a != c) {
                note = "modes disagree at seed=" + std::to_string(seed) + " p=" + std::to_string(p);
                return false;
            }
        }
        ++cases;
    }
    return true;
}

bool criterion4(std::string& note) {
    auto b = budget(1u << 27, 60, 64);
    for (uint32_t seed = 201; seed < 211; ++seed) {
        SftSpec spec = random_domino_spec(seed, 2, 4);
        for (int n = 1; n <= 3; ++n) {
            auto graph = horizontal_period(spec, n, b, 1, HorizontalRoute::StripGraph);
            auto brute = horizontal_period(spec, n, b, 1, HorizontalRoute::Direct);
            if (graph.verdict != brute.verdict) {
                note = "routes disagree at seed=" + std::to_string(seed) +
                       " n=" + std::to_string(n);
                return false;
            }
            if (graph.verdict == Verdict::Yes) {
                // the graph witness must re-validate independently
                if (!graph.witness ||
                    !is_locally_valid(*graph.witness, spec).empty() ||
                    least_axis_period(*graph.witness, 0) != n) {
                    note = "graph witness fails re-validation";
                    return false;
                }
            }
        }
    }
    return true;
}

bool criterion5(std::string& note) {
    auto b = budget(1ull << 33, 280);
    SftSpec rob = wang_to_sft(robinson());
    SftSpec kari = wang_to_sft(kari_nw());
    for (int n : {2, 3, 4}) {
        if (!collect_torus(rob, {n, n}, b).configs.empty()) {
            note = "robinson admits a " + std::to_string(n) + "x" + std::to_string(n) + " torus";
            return false;
        }
    }
    for (int n : {2, 3}) {
        if (!collect_torus(kari, {n, n}, b).configs.empty()) {
            note = "kari admits a " + std::to_string(n) + "x" + std::to_string(n) + " torus";
            return false;
        }
    }
    if (!check_deterministic(kari, DetMode::NW).deterministic) {
        note = "kari is not NW-deterministic";
        return false;
    }
    return true;
}

bool criterion6(std::string& note) {
    std::vector<std::pair<TmSpec, std::vector<std::string>>> corpus{
        {tm_immediate(), {}},  {tm_scan_right(), {"1"}}, {tm_branch2(), {"1"}},
        {tm_branch3(), {"1"}}, {tm_zigzag(), {"1"}},
    };
    for (auto& [tm, input] : corpus) {
        WangTileset tiles = compile_tm(tm);
        std::vector<int> word;
        for (auto& tok : input) word.push_back(tm.tape.index(tok));
        for (int w = std::max<int>(1, static_cast<int>(word.size())); w <= 4; ++w)
            for (int t = 1; t <= 6; ++t) {
                int64_t tilings = count_rectangle_tilings(tiles, w, t, input);
                int64_t runs = 0;
                for (auto& r : run_bounded(tm, word, t, w))
                    if (r.accepted) ++runs;
                if (tilings != runs) {
                    note = "mismatch at w=" + std::to_string(w) + " t=" + std::to_string(t) +
                           ": tilings=" + std::to_string(tilings) +
                           " runs=" + std::to_string(runs);
                    return false;
                }
            }
    }
    return true;
}

bool criterion7(std::string& note) {
    for (auto [n, d] :
         std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {4, 2}}) {
        GrayFold g = gray_fold(n, d);
        std::set<IVec> seen;
        IVec prev;
        for (int64_t t = 0; t < g.size(); ++t) {
            IVec c = g.index_to_coord(t);
            if (g.coord_to_index(c) != t || !seen.insert(c).second) {
                note = "fold not bijective at n=" + std::to_string(n);
                return false;
            }
            if (t > 0) {
                int diff = 0;
                for (int i = 0; i < d; ++i) diff += std::abs(c[i] - prev[i]);
                if (diff != 1) {
                    note = "adjacency fails at n=" + std::to_string(n) + " t=" + std::to_string(t);
                    return false;
                }
            }
            prev = c;
        }
    }
    return true;
}

bool criterion8(std::string& note) {
    auto b = budget(1u << 27, 100);
    for (auto [k, p] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        SftSpec counter = counter_layer(k);
        StripGraph g(counter, p, 0, b);
        if (g.truncated()) {
            note = "vertex enumeration truncated";
            return false;
        }
        const int bk0 = counter.alphabet.index(counter_breaker_token(false));
        const int bk1 = counter.alphabet.index(counter_breaker_token(true));
        int64_t want = 1;
        for (int i = 1; i < p; ++i) want *= k;
        int64_t best = -1;
        for (size_t v = 0; v < g.vertex_count(); ++v) {
            // exactly one breaker column
            std::set<int> bkcols;
            bool allbk = true;
            for (size_t ci = 0; ci < g.cells().size(); ++ci) {
                int val = g.vertex(v)[ci];
                if (val == bk0 || val == bk1) bkcols.insert(g.cells()[ci][0]);
            }
            (void)allbk;
            if (bkcols.size() != 1) continue;
            // shortest closed walk via BFS
            std::vector<int> prev(g.vertex_count(), -2);
            std::vector<size_t> queue{v};
            prev[v] = -1;
            std::vector<size_t> walk;
            for (size_t qi = 0; qi < queue.size() && walk.empty(); ++qi) {
                for (int w : g.adjacency()[queue[qi]]) {
                    if (static_cast<size_t>(w) == v) {
                        walk.push_back(queue[qi]);
                        while (walk.back() != v) walk.push_back(static_cast<size_t>(prev[walk.back()]));
                        std::reverse(walk.begin(), walk.end());
                        break;
                    }
                    if (prev[w] == -2) {
                        prev[w] = static_cast<int>(queue[qi]);
                        queue.push_back(static_cast<size_t>(w));
                    }
                }
            }
            if (walk.empty()) continue;
            TorusConfig torus = g.walk_torus(walk);
            if (!is_locally_valid(torus, counter).empty()) {
                note = "walk torus not locally valid";
                return false;
            }
            int64_t period = least_axis_period(torus, 1);
            if (best < 0 || period < best) best = period;
        }
        if (best != want) {
            note = "k=" + std::to_string(k) + " p=" + std::to_string(p) + ": period " +
                   std::to_string(best) + " != " + std::to_string(want);
            return false;
        }
    }
    return true;
}

bool criterion9(std::string& note) {
    const bool nightly = std::getenv("SFT_NIGHTLY") != nullptr;
    LayerBundle bundle = y_k(2);
    SftSpec spec = bundle.desugar();
    auto b = budget(1ull << 40, 570, 64);
    auto rep = horizontal_period(spec, 2, b, 1, HorizontalRoute::Direct);
    if (rep.verdict == Verdict::Yes) {
        if (!rep.witness || !is_locally_valid(*rep.witness, spec).empty() ||
            least_axis_period(*rep.witness, 0) != 2) {
            note = "witness fails re-validation";
            return false;
        }
        return true;
    }
    if (rep.verdict == Verdict::Unknown && !nightly) {
        note = "budget exhausted (tolerated outside nightly)";
        return true;
    }
    note = "no witness found";
    return false;
}

bool criterion10(std::string& note) {
    if (!std::getenv("SFTTOOL_BIN")) {
        note = "SFTTOOL_BIN not set";
        return false;
    }
    // a scratch spec file
    std::string dir = "acceptance_cli_tmp";
    std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());
    {
        std::ostringstream os;
        write_sft(os, checkerboard_spec());
        write_file(dir + "/check.sft", os.str());
    }
    struct Cmd {
        std::string args;
        std::string file;  // emitted file to compare, empty for stdout-only
    };
    std::vector<Cmd> cmds{
        {"construct robinson " + dir + "/rob.wang", dir + "/rob.wang"},
        {"construct counter:2 " + dir + "/c2.sft", dir + "/c2.sft"},
        {"periods strong " + dir + "/check.sft -p 2 --witness-out " + dir + "/w.torus",
         dir + "/w.torus"},
        {"count " + dir + "/check.sft -p 2", ""},
        {"stripgraph " + dir + "/check.sft -m 2 -n 0 -o " + dir + "/g.dot", dir + "/g.dot"},
    };
    for (auto& c : cmds) {
        std::string out1, out2, out4;
        if (!run_cli("--threads 1 " + c.args, out1)) {
            note = "cannot run CLI";
            return false;
        }
        std::string f1 = c.file.empty() ? "" : slurp_or_empty(c.file);
        if (!run_cli("--threads 1 " + c.args, out2)) return false;
        std::string f2 = c.file.empty() ? "" : slurp_or_empty(c.file);
        if (!run_cli("--threads 4 " + c.args, out4)) return false;
        std::string f4 = c.file.empty() ? "" : slurp_or_empty(c.file);
        if (out1 != out2 || out1 != out4 || f1 != f2 || f1 != f4) {
            note = "nondeterministic output for: " + c.args;
            return false;
        }
    }
    std::system(("rm -rf " + dir).c_str());
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<bool(std::string&)> run;
    };
    std::vector<Criterion> criteria{
        {1, "necklace identity", criterion1},
        {2, "2d counting with inclusion-exclusion oracle", criterion2},
        {3, "counting-mode agreement", criterion3},
        {4, "strip-graph vs brute-force horizontal periods", criterion4},
        {5, "robinson/kari torus-freeness and determinism", criterion5},
        {6, "machine/tiling counting bijection", criterion6},
        {7, "gray fold bijectivity and adjacency", criterion7},
        {8, "counter vertical cycle length", criterion8},
        {9, "y_k(2) horizontal-period-2 smoke witness", criterion9},
        {10, "CLI byte-determinism across runs and threads", criterion10},
    };
    int failures = 0;
    for (auto& c : criteria) {
        std::string note;
        bool ok = false;
        try {
            ok = c.run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("criterion %2d (%s): %s%s%s\n", c.id, c.name, ok ? "PASS" : "FAIL",
                    note.empty() ? "" : " — ", note.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
