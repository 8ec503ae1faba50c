#include "sft/constructions.hpp"

#include <algorithm>

namespace sft {

namespace {

// Edge tokens name the arrow crossing the edge: direction e/w (vertical
// edges) or u/d (horizontal edges) plus weight s/d (single/double shaft).
std::string h_arrow(char dir, char wt) { return std::string(1, dir) + wt; }

}  // namespace

WangTileset robinson() {
    WangTileset ts;
    for (const char* c : {"es", "ed", "ws", "wd", "us", "ud", "ds", "dd"}) ts.colors.add(c);

    // crosses: arrows out on all four edges, the doubled pair gives the
    // orientation (it points toward the center of the host square)
    ts.add_tile("cross.ne", "ud", "ed", "ds", "ws");
    ts.add_tile("cross.nw", "ud", "es", "ds", "wd");
    ts.add_tile("cross.se", "us", "ed", "dd", "ws");
    ts.add_tile("cross.sw", "us", "es", "dd", "wd");

    // vertical arms conduct a vertical arrow through and absorb the heads
    // arriving from both sides; the absorbed weight is equal on both sides
    for (char dir : {'u', 'd'})
        for (char wt : {'s', 'd'})
            for (char a : {'s', 'd'}) {
                std::string name = std::string("varm.") + dir + wt + "." + a;
                ts.add_tile(name, h_arrow(dir, wt), h_arrow('w', a), h_arrow(dir, wt),
                            h_arrow('e', a));
            }
    for (char dir : {'e', 'w'})
        for (char wt : {'s', 'd'})
            for (char a : {'s', 'd'}) {
                std::string name = std::string("harm.") + dir + wt + "." + a;
                ts.add_tile(name, h_arrow('d', a), h_arrow(dir, wt), h_arrow('u', a),
                            h_arrow(dir, wt));
            }
    return ts;
}

WangTileset kari_nw() {
    WangTileset rob = robinson();
    WangTileset ts;
    // vertical edge colors carry the label of their top endpoint, horizontal
    // ones the label of their right endpoint; matching then forces the NW
    // corner label of a tile to equal the SE label of its up-left neighbor
    auto col = [&](const std::string& base, char corner) {
        return base + "." + corner;
    };

    for (auto& t : rob.tiles) {
        const std::string n = rob.colors.token(t.north), e = rob.colors.token(t.east),
                          s = rob.colors.token(t.south), w = rob.colors.token(t.west);
        bool is_cross = t.name.rfind("cross", 0) == 0;
        bool is_harm = t.name.rfind("harm", 0) == 0;
        for (char ne : {'H', 'V'}) {
            if (is_cross) {
                for (char art : {'H', 'V'})  // the two diagonal tiles allowed on crosses
                    ts.add_tile(t.name + "." + art + ".c" + ne, col(n, ne), col(e, ne),
                                col(s, art), col(w, art));
            } else {
                char nw = is_harm ? 'H' : 'V';
                char se = is_harm ? 'V' : 'H';
                ts.add_tile(t.name + ".c" + ne, col(n, ne), col(e, ne), col(s, se), col(w, nw));
            }
        }
    }
    return ts;
}

SftSpec east_deterministic_base() {
    // shear (x,y) -> (x+y,y): NW-determinism of the base becomes
    // East-determinism; the vertical rule lands on the up-left diagonal
    SftSpec kari = wang_to_sft(kari_nw());
    SftSpec sheared = linear_transform(kari, {{{1, -1}, {0, 1}}});
    return sheared;
}

SftSpec breaker_layer(const SftSpec& base) {
    if (base.dim != 2) throw std::invalid_argument("breaker_layer: base must be 2-dimensional");
    if (base.alphabet.find(kBreakerToken) >= 0)
        throw std::invalid_argument("breaker_layer: base already has a breaker symbol");
    Alphabet alpha = base.alphabet;
    const int bk = alpha.add(kBreakerToken);
    SftSpec out(2, alpha);
    for (auto& p : base.forbidden) out.add_forbidden(p);
    for (auto& t : base.templates) {
        // widen the sets to the new alphabet size
        ForbiddenTemplate q;
        q.dim = 2;
        for (auto& [pos, set] : t.cells) {
            SymbolSet s = *set;
            s.resize(static_cast<size_t>(alpha.size()));
            q.cells.emplace_back(pos, make_symbol_set(std::move(s)));
        }
        out.add_template(std::move(q));
    }

    SymbolSet whites_raw(static_cast<size_t>(alpha.size()));
    whites_raw.set();
    whites_raw.reset(static_cast<size_t>(bk));
    auto whites = make_symbol_set(std::move(whites_raw));
    auto bks = singleton_set(alpha.size(), bk);

    ForbiddenTemplate above;  // white above a breaker
    above.dim = 2;
    above.cells.emplace_back(IVec{0, 0}, bks);
    above.cells.emplace_back(IVec{0, 1}, whites);
    out.add_template(std::move(above));
    ForbiddenTemplate below;  // white below a breaker
    below.dim = 2;
    below.cells.emplace_back(IVec{0, 0}, whites);
    below.cells.emplace_back(IVec{0, 1}, bks);
    out.add_template(std::move(below));
    out.add_forbidden(Pattern(2, {{{0, 0}, bk}, {{1, 0}, bk}}));
    return out;
}

Transducer increment_transducer(int k) {
    if (k < 2) throw std::invalid_argument("increment_transducer: k must be >= 2");
    Transducer t;
    t.k = k;
    for (int state : {0, 1})
        for (int in = 0; in < k; ++in) {
            int sum = in + state;
            t.edges.push_back({state, in, sum >= k ? 1 : 0, sum % k});
        }
    return t;
}

std::string counter_token(int digit, int carry, bool marked) {
    return "d" + std::to_string(digit) + "c" + std::to_string(carry) + (marked ? ".h" : ".e");
}

std::string counter_breaker_token(bool marked) { return marked ? "bk.h" : "bk.e"; }

SftSpec counter_layer(int k) {
    if (k < 2) throw std::invalid_argument("counter_layer: k must be >= 2");
    Alphabet alpha;
    for (int d = 0; d < k; ++d)
        for (int c = 0; c < 2; ++c)
            for (bool m : {false, true}) alpha.add(counter_token(d, c, m));
    for (bool m : {false, true}) alpha.add(counter_breaker_token(m));
    SftSpec spec(2, alpha);
    const int n = alpha.size();

    auto set_of = [&](auto&& pred) {
        SymbolSet s(static_cast<size_t>(n));
        for (int d = 0; d < k; ++d)
            for (int c = 0; c < 2; ++c)
                for (bool m : {false, true})
                    if (pred(d, c, m)) s.set(static_cast<size_t>(alpha.index(counter_token(d, c, m))));
        return s;
    };
    SymbolSet bk_raw(static_cast<size_t>(n));
    for (bool m : {false, true})
        bk_raw.set(static_cast<size_t>(alpha.index(counter_breaker_token(m))));
    auto bks = make_symbol_set(bk_raw);
    SymbolSet nonbk_raw = bk_raw;
    nonbk_raw.flip();
    auto nonbk = make_symbol_set(nonbk_raw);

    SymbolSet marked_raw = set_of([&](int, int, bool m) { return m; });
    for (bool m : {false, true})
        if (m) marked_raw.set(static_cast<size_t>(alpha.index(counter_breaker_token(m))));
    auto marked = make_symbol_set(marked_raw);
    SymbolSet unmarked_raw = marked_raw;
    unmarked_raw.flip();
    auto unmarked = make_symbol_set(unmarked_raw);

    auto add2 = [&](IVec a, SymbolSetPtr sa, IVec b, SymbolSetPtr sb) {
        ForbiddenTemplate t;
        t.dim = 2;
        t.cells.emplace_back(std::move(a), std::move(sa));
        t.cells.emplace_back(std::move(b), std::move(sb));
        spec.add_template(std::move(t));
    };

    // breaker symbols form columns and never touch horizontally
    add2({0, 0}, bks, {0, 1}, nonbk);
    add2({0, 0}, nonbk, {0, 1}, bks);
    add2({0, 0}, bks, {1, 0}, bks);
    // the marked-line sublayer is constant along rows
    add2({0, 0}, marked, {1, 0}, unmarked);
    add2({0, 0}, unmarked, {1, 0}, marked);

    // increment: the cell above holds digit+carry-in mod k, where the carry
    // comes from the upper-right neighbor (breaker columns always carry one)
    for (int db = 0; db < k; ++db) {
        auto below = make_symbol_set(set_of([&](int d, int, bool) { return d == db; }));
        for (int cin = 0; cin < 2; ++cin) {
            int da = (db + cin) % k;
            int ca = (db + cin) >= k ? 1 : 0;
            SymbolSet good = set_of([&](int d, int c, bool) { return d == da && c == ca; });
            good.flip();  // anything else above is wrong
            SymbolSet right = set_of([&](int, int c, bool) { return c == cin; });
            if (cin == 1) right |= *bks;
            ForbiddenTemplate t;
            t.dim = 2;
            t.cells.emplace_back(IVec{0, 0}, below);
            t.cells.emplace_back(IVec{0, 1}, make_symbol_set(std::move(good)));
            t.cells.emplace_back(IVec{1, 1}, make_symbol_set(std::move(right)));
            spec.add_template(std::move(t));
        }
    }

    // a row is marked iff the counter wrapped: visible right of a breaker as
    // digit 0 with a carry out
    auto viol = make_symbol_set(
        set_of([&](int d, int c, bool m) { return (d == 0 && c == 1) != m; }));
    add2({0, 0}, bks, {1, 0}, viol);
    return spec;
}

SftSpec LayerBundle::desugar() const {
    LayerProduct lp;
    for (auto& [_, spec] : layers) lp.layers.push_back(spec);
    lp.allowed = allowed;
    SftSpec spec = product(lp);
    for (auto& t : extra) spec.add_template(t);
    return spec;
}

LayerBundle y_k(int k) {
    LayerBundle b;
    SftSpec base = east_deterministic_base();
    SftSpec a_layer = breaker_layer(base);
    SftSpec c_layer = counter_layer(k);

    // sync layer: same alphabet as the base, constant along rows
    SftSpec t_layer(2, base.alphabet);
    const int nw = base.alphabet.size();
    for (int s = 0; s < nw; ++s) {
        SymbolSet other(static_cast<size_t>(nw));
        other.set();
        other.reset(static_cast<size_t>(s));
        ForbiddenTemplate t;
        t.dim = 2;
        t.cells.emplace_back(IVec{0, 0}, singleton_set(nw, s));
        t.cells.emplace_back(IVec{1, 0}, make_symbol_set(std::move(other)));
        t_layer.add_template(std::move(t));
    }

    const int bk = a_layer.alphabet.index(kBreakerToken);
    b.layers.emplace_back("A", a_layer);
    b.layers.emplace_back("C", c_layer);
    b.layers.emplace_back("T", t_layer);

    for (int w = 0; w < a_layer.alphabet.size(); ++w)
        for (int c = 0; c < c_layer.alphabet.size(); ++c) {
            bool wbk = (w == bk);
            bool cbk = c_layer.alphabet.token(c).rfind("bk", 0) == 0;
            if (wbk != cbk) continue;  // the carry-over-breaker symbol rides the breaker
            for (int t = 0; t < nw; ++t) b.allowed.push_back({w, c, t});
        }

    // first column right of a breaker: sync layer copies the white symbol
    const size_t nsym = b.allowed.size();
    SymbolSet at_bk(nsym), mismatch(nsym);
    for (size_t i = 0; i < nsym; ++i) {
        if (b.allowed[i][0] == bk) at_bk.set(i);
        if (b.allowed[i][0] != b.allowed[i][2]) mismatch.set(i);
    }
    ForbiddenTemplate link;
    link.dim = 2;
    link.cells.emplace_back(IVec{0, 0}, make_symbol_set(std::move(at_bk)));
    link.cells.emplace_back(IVec{1, 0}, make_symbol_set(std::move(mismatch)));
    b.extra.push_back(std::move(link));
    return b;
}

int64_t GrayFold::size() const {
    int64_t s = 1;
    for (int i = 0; i < d; ++i) s *= n;
    return s;
}

IVec GrayFold::index_to_coord(int64_t t) const {
    if (t < 0 || t >= size()) throw std::out_of_range("gray fold: index out of range");
    std::vector<int> digits(d);
    for (int i = 0; i < d; ++i) {
        digits[i] = static_cast<int>(t % n);
        t /= n;
    }
    IVec coords(d);
    int parity = 0;  // parity of the sum of the stronger-weighed coordinates
    for (int i = d - 1; i >= 0; --i) {
        coords[i] = parity % 2 == 0 ? digits[i] : (n - 1) - digits[i];
        parity += coords[i];
    }
    return coords;
}

int64_t GrayFold::coord_to_index(const IVec& coords) const {
    if (static_cast<int>(coords.size()) != d)
        throw std::invalid_argument("gray fold: coordinate arity mismatch");
    int64_t index = 0, weight = 1;
    for (int i = 0; i < d; ++i) {
        int suffix = 0;
        for (int j = i + 1; j < d; ++j) suffix += coords[j];
        int a = suffix % 2 == 0 ? coords[i] : (n - 1) - coords[i];
        index += weight * a;
        weight *= n;
    }
    return index;
}

GrayFold gray_fold(int n, int d) {
    if (n < 1 || d < 1) throw std::invalid_argument("gray_fold: n and d must be >= 1");
    return {n, d};
}

}  // namespace sft
