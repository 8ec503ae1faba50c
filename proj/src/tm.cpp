#include "sft/tm.hpp"

#include <algorithm>
#include <sstream>

#include "sft/text_io.hpp"

namespace sft {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

}  // namespace

TmSpec parse_tm(std::istream& in) {
    std::string raw;
    int lineno = 0;
    TmSpec tm;
    bool have_states = false, have_tape = false, have_blank = false, have_initial = false;
    struct RawDelta {
        int line;
        std::vector<std::string> toks;
    };
    std::vector<RawDelta> deltas;
    std::vector<std::pair<int, std::string>> halting_names;
    std::vector<std::pair<int, std::string>> input_names;
    std::string blank_name, initial_name;
    int blank_line = 0, initial_line = 0;
    bool saw_header = false;

    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        size_t a = raw.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = raw.find_last_not_of(" \t\r");
        std::string s = raw.substr(a, b - a + 1);
        if (!saw_header) {
            if (s != "%tm") throw ParseError(lineno, "expected %tm header");
            saw_header = true;
            continue;
        }
        auto colon = s.find(':');
        if (colon == std::string::npos) throw ParseError(lineno, "expected directive");
        std::string key = s.substr(0, colon);
        auto toks = split_ws(s.substr(colon + 1));
        if (key == "states") {
            for (auto& t : toks) {
                try {
                    tm.states.add(t);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(lineno, e.what());
                }
            }
            have_states = true;
        } else if (key == "tape") {
            for (auto& t : toks) {
                try {
                    tm.tape.add(t);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(lineno, e.what());
                }
            }
            have_tape = true;
        } else if (key == "blank") {
            if (toks.size() != 1) throw ParseError(lineno, "blank: expects one symbol");
            blank_name = toks[0];
            blank_line = lineno;
            have_blank = true;
        } else if (key == "input") {
            for (auto& t : toks) input_names.emplace_back(lineno, t);
        } else if (key == "initial") {
            if (toks.size() != 1) throw ParseError(lineno, "initial: expects one state");
            initial_name = toks[0];
            initial_line = lineno;
            have_initial = true;
        } else if (key == "halting") {
            for (auto& t : toks) halting_names.emplace_back(lineno, t);
        } else if (key == "delta") {
            deltas.push_back({lineno, toks});
        } else {
            throw ParseError(lineno, "unknown directive '" + key + ":'");
        }
    }
    if (!saw_header) throw ParseError(lineno, "expected %tm header");
    if (!have_states) throw ParseError(lineno, "missing states:");
    if (!have_tape) throw ParseError(lineno, "missing tape:");
    if (!have_blank) throw ParseError(lineno, "missing blank:");
    if (!have_initial) throw ParseError(lineno, "missing initial:");

    if (tm.tape.find(blank_name) < 0) throw ParseError(blank_line, "blank symbol not in tape:");
    tm.blank = tm.tape.index(blank_name);
    if (tm.states.find(initial_name) < 0)
        throw ParseError(initial_line, "initial state not declared");
    tm.initial = tm.states.index(initial_name);
    tm.halting.assign(tm.states.size(), false);
    for (auto& [line, name] : halting_names) {
        if (tm.states.find(name) < 0) throw ParseError(line, "halting state '" + name + "' not declared");
        tm.halting[tm.states.index(name)] = true;
    }
    for (auto& [line, name] : input_names) {
        int s = tm.tape.find(name);
        if (s < 0) throw ParseError(line, "input symbol '" + name + "' not in tape:");
        if (s == tm.blank) throw ParseError(line, "input alphabet may not contain the blank");
        tm.input_symbols.push_back(s);
    }

    for (auto& d : deltas) {
        if (d.toks.size() != 6 || d.toks[2] != "->")
            throw ParseError(d.line, "delta: expects '<q> <sym> -> <q'> <sym'> <L|R|S>'");
        if (tm.states.find(d.toks[0]) < 0)
            throw ParseError(d.line, "unknown state '" + d.toks[0] + "'");
        if (tm.tape.find(d.toks[1]) < 0)
            throw ParseError(d.line, "unknown tape symbol '" + d.toks[1] + "'");
        if (tm.states.find(d.toks[3]) < 0)
            throw ParseError(d.line, "unknown state '" + d.toks[3] + "'");
        if (tm.tape.find(d.toks[4]) < 0)
            throw ParseError(d.line, "unknown tape symbol '" + d.toks[4] + "'");
        int q = tm.states.index(d.toks[0]);
        if (tm.halting[q]) throw ParseError(d.line, "delta from halting state '" + d.toks[0] + "'");
        if (d.toks[5] != "L" && d.toks[5] != "R" && d.toks[5] != "S")
            throw ParseError(d.line, "move must be L, R or S");
        TmTransition tr{tm.states.index(d.toks[3]), tm.tape.index(d.toks[4]), d.toks[5][0]};
        tm.delta[{q, tm.tape.index(d.toks[1])}].insert(tr);
    }
    return tm;
}

void write_tm(std::ostream& os, const TmSpec& tm) {
    os << "%tm\n";
    os << "states:";
    for (auto& s : tm.states.tokens()) os << ' ' << s;
    os << "\ntape:";
    for (auto& s : tm.tape.tokens()) os << ' ' << s;
    os << "\nblank: " << tm.tape.token(tm.blank) << "\ninput:";
    for (int s : tm.input_symbols) os << ' ' << tm.tape.token(s);
    os << "\ninitial: " << tm.states.token(tm.initial) << "\nhalting:";
    for (int q = 0; q < tm.states.size(); ++q)
        if (tm.halting[q]) os << ' ' << tm.states.token(q);
    os << "\n";
    for (auto& [key, ts] : tm.delta)
        for (auto& tr : ts)
            os << "delta: " << tm.states.token(key.first) << ' ' << tm.tape.token(key.second)
               << " -> " << tm.states.token(tr.next) << ' ' << tm.tape.token(tr.write) << ' '
               << tr.move << "\n";
}

std::vector<int> tm_word(const TmSpec& tm, const std::string& letters) {
    std::vector<int> out;
    for (char c : letters) out.push_back(tm.tape.index(std::string(1, c)));
    return out;
}

std::vector<RunWitness> run_bounded(const TmSpec& tm, const std::vector<int>& input, int t,
                                    int w) {
    if (t < 1 || w < 1) throw std::invalid_argument("run_bounded: t and w must be >= 1");
    if (static_cast<int>(input.size()) > w)
        throw std::invalid_argument("run_bounded: input longer than tape");

    std::vector<RunWitness> runs;
    TmSnapshot init;
    init.tape.assign(w, tm.blank);
    std::copy(input.begin(), input.end(), init.tape.begin());
    init.head = 0;
    init.state = tm.initial;

    std::vector<TmSnapshot> stack{init};
    // depth-first over transition choices, declaration order
    std::function<void()> go = [&]() {
        const TmSnapshot& cur = stack.back();
        if (tm.is_halting(cur.state)) {
            runs.push_back({stack, true});
            return;
        }
        if (static_cast<int>(stack.size()) == t) {
            runs.push_back({stack, false});  // cut by the time budget
            return;
        }
        auto it = tm.delta.find({cur.state, cur.tape[cur.head]});
        bool advanced = false;
        if (it != tm.delta.end()) {
            int choice = 0;
            for (const TmTransition& tr : it->second) {
                int nh = cur.head + (tr.move == 'L' ? -1 : tr.move == 'R' ? 1 : 0);
                if (nh >= 0 && nh < w) {
                    TmSnapshot next = cur;
                    next.tape[cur.head] = tr.write;
                    next.head = nh;
                    next.state = tr.next;
                    next.chosen = choice;
                    stack.push_back(std::move(next));
                    go();
                    stack.pop_back();
                    advanced = true;
                }
                ++choice;
            }
        }
        if (!advanced) runs.push_back({stack, false});  // dead configuration
    };
    go();
    return runs;
}

namespace {

// color naming scheme shared by compile_tm and count_rectangle_tilings
std::string tape_color(const TmSpec& tm, int b) { return "c." + tm.tape.token(b); }
std::string head_color(const TmSpec& tm, int q, int b) {
    return (tm.is_halting(q) ? "H." : "h.") + tm.states.token(q) + "." + tm.tape.token(b);
}

}  // namespace

WangTileset compile_tm(const TmSpec& tm) {
    WangTileset ts;
    const std::string blank = "-", wside = "Ws", wvert = "Wb", start = "S0";

    ts.add_tile("border.l", wvert, blank, wvert, wside);
    ts.add_tile("border.r", wvert, wside, wvert, blank);

    // input row: one head tile and plain tiles, over input symbols and blank
    std::vector<int> in_syms = tm.input_symbols;
    in_syms.push_back(tm.blank);
    for (int a : in_syms) {
        ts.add_tile("in." + tm.tape.token(a), tape_color(tm, a), blank, start, blank);
        ts.add_tile("inh." + tm.tape.token(a), head_color(tm, tm.initial, a), blank, start, blank);
    }

    for (int b = 0; b < tm.tape.size(); ++b)
        ts.add_tile("copy." + tm.tape.token(b), tape_color(tm, b), blank, tape_color(tm, b), blank);

    std::set<std::string> made;
    for (auto& [key, trs] : tm.delta) {
        auto [q, a] = key;
        for (const TmTransition& tr : trs) {
            std::string base = tm.states.token(q) + "." + tm.tape.token(a) + "." +
                               tm.states.token(tr.next) + "." + tm.tape.token(tr.write) + "." +
                               tr.move;
            if (tr.move == 'R') {
                std::string carry = "mR." + tm.states.token(tr.next);
                ts.add_tile("act." + base, tape_color(tm, tr.write), carry, head_color(tm, q, a),
                            blank);
                for (int b = 0; b < tm.tape.size(); ++b) {
                    std::string nm = "mergeR." + tm.states.token(tr.next) + "." + tm.tape.token(b);
                    if (made.insert(nm).second)
                        ts.add_tile(nm, head_color(tm, tr.next, b), blank, tape_color(tm, b),
                                    carry);
                }
            } else if (tr.move == 'L') {
                std::string carry = "mL." + tm.states.token(tr.next);
                ts.add_tile("act." + base, tape_color(tm, tr.write), blank, head_color(tm, q, a),
                            carry);
                for (int b = 0; b < tm.tape.size(); ++b) {
                    std::string nm = "mergeL." + tm.states.token(tr.next) + "." + tm.tape.token(b);
                    if (made.insert(nm).second)
                        ts.add_tile(nm, head_color(tm, tr.next, b), carry, tape_color(tm, b),
                                    blank);
                }
            } else {
                ts.add_tile("act." + base, head_color(tm, tr.next, tr.write), blank,
                            head_color(tm, q, a), blank);
            }
        }
    }

    for (int q = 0; q < tm.states.size(); ++q) {
        if (!tm.is_halting(q)) continue;
        for (int b = 0; b < tm.tape.size(); ++b)
            ts.add_tile("halt." + tm.states.token(q) + "." + tm.tape.token(b),
                        head_color(tm, q, b), blank, head_color(tm, q, b), blank);
    }
    return ts;
}

int64_t count_rectangle_tilings(const WangTileset& ts, int w, int t,
                                const std::vector<std::string>& input_tokens) {
    if (w < 1 || t < 1) throw std::invalid_argument("count_rectangle_tilings: w,t must be >= 1");
    if (static_cast<int>(input_tokens.size()) > w)
        throw std::invalid_argument("count_rectangle_tilings: input longer than tape");
    if (ts.tiles.empty()) return 0;

    const int wside = ts.colors.find("Ws");
    const int wvert = ts.colors.find("Wb");
    const int start = ts.colors.find("S0");
    if (wside < 0 || wvert < 0 || start < 0) return 0;  // not a machine tileset

    const int W = w + 2;
    const int n = static_cast<int>(ts.tiles.size());

    auto named = [&](const std::string& nm) {
        for (int i = 0; i < n; ++i)
            if (ts.tiles[i].name == nm) return i;
        return -1;
    };

    // input row pinning: head over the first cell, then the word, blanks after
    int blank_tile = -1;
    for (int i = 0; i < n; ++i) {
        const auto& nm = ts.tiles[i].name;
        if (nm.rfind("in.", 0) != 0) continue;
        bool is_input_token = false;
        for (auto& tok : input_tokens)
            if (nm == "in." + tok) is_input_token = true;
        if (!is_input_token) blank_tile = i;  // the in.<blank> tile
    }
    std::vector<int> pinned(W, -1);
    for (int x = 1; x <= w; ++x) {
        int tile;
        if (x - 1 < static_cast<int>(input_tokens.size())) {
            const std::string& tok = input_tokens[x - 1];
            tile = named(x == 1 ? "inh." + tok : "in." + tok);
        } else if (x == 1) {
            // empty input: head starts over a blank
            tile = -1;
            for (int i = 0; i < n; ++i)
                if (ts.tiles[i].name.rfind("inh.", 0) == 0) tile = i;
        } else {
            tile = blank_tile;
        }
        if (tile < 0) return 0;
        pinned[x] = tile;
    }

    auto color_kind = [&](int c) {  // 0 tape/other, 1 running head, 2 halting head
        const std::string& tok = ts.colors.token(c);
        if (tok.rfind("h.", 0) == 0) return 1;
        if (tok.rfind("H.", 0) == 0) return 2;
        return 0;
    };

    // row-major bottom-up backtracking; a completed grid must show exactly
    // one halting head on the top boundary
    std::vector<int> grid(static_cast<size_t>(W) * t, -1);
    int64_t count = 0;
    std::function<void(int)> place = [&](int idx) {
        if (idx == W * t) {
            int heads = 0;
            for (int x = 1; x < W - 1; ++x)
                if (color_kind(ts.tiles[grid[(t - 1) * W + x]].north) == 2) ++heads;
            if (heads == 1) ++count;
            return;
        }
        int x = idx % W, y = idx / W;
        for (int i = 0; i < n; ++i) {
            const WangTile& T = ts.tiles[i];
            if (pinned[x] >= 0 && y == 0 && i != pinned[x]) continue;
            if (x == 0) {
                if (T.west != wside) continue;
            } else if (ts.tiles[grid[idx - 1]].east != T.west) {
                continue;
            }
            if (x == W - 1 && T.east != wside) continue;
            if (y == 0) {
                int want = (x == 0 || x == W - 1) ? wvert : start;
                if (T.south != want) continue;
            } else if (ts.tiles[grid[idx - W]].north != T.south) {
                continue;
            }
            if (y == t - 1) {
                if (x == 0 || x == W - 1) {
                    if (T.north != wvert) continue;
                } else if (color_kind(T.north) == 1) {
                    continue;  // running head may not reach the top
                }
            }
            grid[idx] = i;
            place(idx + 1);
            grid[idx] = -1;
        }
    };
    place(0);
    return count;
}

std::string encode_unary(int p, std::optional<int> q) {
    if (!q) {
        if (p < 0) throw std::invalid_argument("encode_unary: un(n) needs n >= 0");
        return std::string(static_cast<size_t>(p), 'a');
    }
    if (*q < 0) throw std::invalid_argument("encode_unary: q must be >= 0");
    std::string out(static_cast<size_t>(std::abs(p)), 'a');
    out += std::string(static_cast<size_t>(*q), p >= 0 ? 'b' : 'c');
    return out;
}

}  // namespace sft
