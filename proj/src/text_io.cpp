#include "sft/text_io.hpp"

#include <fstream>
#include <sstream>

namespace sft {

namespace {

struct Lines {
    explicit Lines(std::istream& in) : in_(in) {}

    // next significant line, comments and blanks skipped
    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            size_t a = raw.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            size_t b = raw.find_last_not_of(" \t\r");
            out = raw.substr(a, b - a + 1);
            return true;
        }
        return false;
    }

    int line() const { return line_; }

private:
    std::istream& in_;
    int line_ = 0;
};

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

int parse_int(const std::string& s, int line, const std::string& what) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ParseError(line, "bad " + what + " '" + s + "'");
    }
}

// "(c1,...,cd) = tok"
bool parse_cell_line(const std::string& s, int line, IVec& pos, std::string& tok) {
    if (s.empty() || s[0] != '(') return false;
    auto close = s.find(')');
    if (close == std::string::npos) throw ParseError(line, "unterminated coordinate tuple");
    std::string tuple = s.substr(1, close - 1);
    pos.clear();
    std::string part;
    std::istringstream ts(tuple);
    while (std::getline(ts, part, ',')) {
        size_t a = part.find_first_not_of(" \t");
        size_t b = part.find_last_not_of(" \t");
        if (a == std::string::npos) throw ParseError(line, "empty coordinate");
        pos.push_back(parse_int(part.substr(a, b - a + 1), line, "coordinate"));
    }
    auto eq = s.find('=', close);
    if (eq == std::string::npos) throw ParseError(line, "missing '=' in cell line");
    auto toks = split_ws(s.substr(eq + 1));
    if (toks.size() != 1) throw ParseError(line, "expected one symbol after '='");
    tok = toks[0];
    return true;
}

}  // namespace

SftSpec parse_sft(std::istream& in) {
    Lines lines(in);
    std::string s;
    if (!lines.next(s) || s != "%sft") throw ParseError(lines.line(), "expected %sft header");

    int dim = -1;
    Alphabet alphabet;
    bool have_alphabet = false;
    std::vector<std::pair<int, std::vector<std::pair<IVec, std::string>>>> raw_patterns;

    while (lines.next(s)) {
        IVec pos;
        std::string tok;
        if (parse_cell_line(s, lines.line(), pos, tok)) {
            if (raw_patterns.empty()) throw ParseError(lines.line(), "cell line before forbid:");
            raw_patterns.back().second.emplace_back(std::move(pos), std::move(tok));
            continue;
        }
        auto colon = s.find(':');
        if (colon == std::string::npos) throw ParseError(lines.line(), "expected directive");
        std::string key = s.substr(0, colon);
        std::string rest = s.substr(colon + 1);
        if (key == "dim") {
            auto toks = split_ws(rest);
            if (toks.size() != 1) throw ParseError(lines.line(), "dim: expects one integer");
            dim = parse_int(toks[0], lines.line(), "dimension");
            if (dim <= 0) throw ParseError(lines.line(), "dimension must be positive");
        } else if (key == "alphabet") {
            for (auto& t : split_ws(rest)) {
                try {
                    alphabet.add(t);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(lines.line(), e.what());
                }
            }
            have_alphabet = true;
        } else if (key == "forbid") {
            if (!split_ws(rest).empty()) throw ParseError(lines.line(), "forbid: takes no arguments");
            raw_patterns.emplace_back(lines.line(), std::vector<std::pair<IVec, std::string>>{});
        } else {
            throw ParseError(lines.line(), "unknown directive '" + key + ":'");
        }
    }

    if (dim <= 0) throw ParseError(lines.line(), "missing dim:");
    if (!have_alphabet || alphabet.empty()) throw ParseError(lines.line(), "missing alphabet:");

    SftSpec spec(dim, alphabet);
    for (auto& [line, cells] : raw_patterns) {
        if (cells.empty()) throw ParseError(line, "forbid: block has no cells");
        Pattern p;
        p.dim = dim;
        for (auto& [pos, tok] : cells) {
            if (static_cast<int>(pos.size()) != dim)
                throw ParseError(line, "cell arity does not match dim");
            int sym = spec.alphabet.find(tok);
            if (sym < 0) throw ParseError(line, "unknown symbol '" + tok + "'");
            if (!p.cells.emplace(pos, sym).second) throw ParseError(line, "duplicate cell");
        }
        spec.add_forbidden(p);
    }
    return spec;
}

WangTileset parse_wang(std::istream& in) {
    Lines lines(in);
    std::string s;
    if (!lines.next(s) || s != "%wang") throw ParseError(lines.line(), "expected %wang header");

    WangTileset ts;
    bool have_colors = false;
    while (lines.next(s)) {
        auto colon = s.find(':');
        if (colon == std::string::npos) throw ParseError(lines.line(), "expected directive");
        std::string key = s.substr(0, colon);
        std::string rest = s.substr(colon + 1);
        if (key == "colors") {
            for (auto& t : split_ws(rest)) {
                try {
                    ts.colors.add(t);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(lines.line(), e.what());
                }
            }
            have_colors = true;
        } else if (key == "tile") {
            auto toks = split_ws(rest);
            if (toks.size() != 5)
                throw ParseError(lines.line(), "tile: expects name and n= e= s= w=");
            int edge[4] = {-1, -1, -1, -1};  // n e s w
            const std::string keys = "nesw";
            for (int i = 1; i <= 4; ++i) {
                if (toks[i].size() < 3 || toks[i][1] != '=')
                    throw ParseError(lines.line(), "bad edge '" + toks[i] + "'");
                auto k = keys.find(toks[i][0]);
                if (k == std::string::npos)
                    throw ParseError(lines.line(), "bad edge key '" + toks[i] + "'");
                int c = ts.colors.find(toks[i].substr(2));
                if (c < 0) throw ParseError(lines.line(), "unknown color '" + toks[i].substr(2) + "'");
                edge[k] = c;
            }
            for (int e : edge)
                if (e < 0) throw ParseError(lines.line(), "tile missing an edge");
            try {
                ts.add_tile(toks[0], edge[0], edge[1], edge[2], edge[3]);
            } catch (const std::invalid_argument& e) {
                throw ParseError(lines.line(), e.what());
            }
        } else {
            throw ParseError(lines.line(), "unknown directive '" + key + ":'");
        }
    }
    if (!have_colors) throw ParseError(lines.line(), "missing colors:");
    if (ts.tiles.empty()) throw ParseError(lines.line(), "tileset has no tiles");
    return ts;
}

TorusConfig parse_torus(std::istream& in, const Alphabet& alphabet) {
    Lines lines(in);
    std::string s;
    if (!lines.next(s) || s != "%torus") throw ParseError(lines.line(), "expected %torus header");

    std::vector<int> dims;
    std::vector<int> cells;
    while (lines.next(s)) {
        auto colon = s.find(':');
        if (colon == std::string::npos) throw ParseError(lines.line(), "expected directive");
        std::string key = s.substr(0, colon);
        std::string rest = s.substr(colon + 1);
        if (key == "dims") {
            for (auto& t : split_ws(rest)) dims.push_back(parse_int(t, lines.line(), "dimension"));
        } else if (key == "cells") {
            for (auto& t : split_ws(rest)) {
                int sym = alphabet.find(t);
                if (sym < 0) throw ParseError(lines.line(), "unknown symbol '" + t + "'");
                cells.push_back(sym);
            }
        } else {
            throw ParseError(lines.line(), "unknown directive '" + key + ":'");
        }
    }
    if (dims.empty()) throw ParseError(lines.line(), "missing dims:");
    try {
        return TorusConfig(dims, cells);
    } catch (const std::invalid_argument& e) {
        throw ParseError(lines.line(), e.what());
    }
}

ParsedSpec parse_spec_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::string first;
    {
        Lines probe(f);
        if (!probe.next(first)) throw std::runtime_error(path + ": empty file");
    }
    f.clear();
    f.seekg(0);
    ParsedSpec out;
    if (first == "%wang") {
        out.spec = wang_to_sft(parse_wang(f));
        out.was_wang = true;
    } else {
        out.spec = parse_sft(f);
    }
    return out;
}

void write_sft(std::ostream& os, const SftSpec& spec) {
    if (!spec.templates.empty())
        throw std::invalid_argument(
            "write_sft: spec has set-valued constraints, not representable in %sft");
    os << "%sft\n";
    os << "dim: " << spec.dim << "\n";
    os << "alphabet:";
    for (auto& t : spec.alphabet.tokens()) os << ' ' << t;
    os << "\n";
    for (auto& p : spec.forbidden) {
        os << "forbid:\n";
        for (auto& [pos, sym] : p.cells) {
            os << '(';
            for (size_t i = 0; i < pos.size(); ++i) os << (i ? "," : "") << pos[i];
            os << ") = " << spec.alphabet.token(sym) << "\n";
        }
    }
}

void write_wang(std::ostream& os, const WangTileset& ts) {
    os << "%wang\n";
    os << "colors:";
    for (auto& c : ts.colors.tokens()) os << ' ' << c;
    os << "\n";
    for (auto& t : ts.tiles)
        os << "tile: " << t.name << " n=" << ts.colors.token(t.north) << " e="
           << ts.colors.token(t.east) << " s=" << ts.colors.token(t.south) << " w="
           << ts.colors.token(t.west) << "\n";
}

void write_torus(std::ostream& os, const TorusConfig& config, const Alphabet& alphabet) {
    os << "%torus\n";
    os << "dims:";
    for (int d : config.dims) os << ' ' << d;
    os << "\n";
    os << "cells:";
    for (int c : config.cells) os << ' ' << alphabet.token(c);
    os << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << content;
}

}  // namespace sft
