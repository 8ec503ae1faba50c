// Command-line front end: period queries, counting, tileset generators,
// renders, strip graphs, machine compilation and lattice refutation.
//
// Exit codes: 0 yes / success, 1 no, 2 unknown (budget), 64 usage, 65 parse.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sft/constructions.hpp"
#include "sft/enumerate.hpp"
#include "sft/periods.hpp"
#include "sft/render.hpp"
#include "sft/text_io.hpp"
#include "sft/tm.hpp"

using namespace sft;

namespace {

constexpr int kExitYes = 0, kExitNo = 1, kExitUnknown = 2, kExitUsage = 64, kExitParse = 65;

uint64_t env_u64(const char* name, uint64_t fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    return std::strtoull(v, nullptr, 10);
}

double env_f64(const char* name, double fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    return std::strtod(v, nullptr);
}

SearchBudget default_budget() {
    SearchBudget b;
    b.max_nodes = env_u64("SFTTOOL_MAX_NODES", b.max_nodes);
    b.max_seconds = env_f64("SFTTOOL_MAX_SECONDS", b.max_seconds);
    b.max_vertical = env_u64("SFTTOOL_MAX_VERTICAL", b.max_vertical);
    return b;
}

int verdict_code(Verdict v) {
    switch (v) {
        case Verdict::Yes: return kExitYes;
        case Verdict::No: return kExitNo;
        default: return kExitUnknown;
    }
}

void write_witness(const std::string& path, const WitnessReport& rep, const SftSpec& spec) {
    std::ostringstream os;
    if (rep.witness) {
        write_torus(os, *rep.witness, spec.alphabet);
    } else if (!rep.walk.empty()) {
        os << "%walk\n";
        os << "mn: " << rep.walk_m << ' ' << rep.walk_n << "\n";
        os << "close: " << rep.walk_cycle_close << "\n";
        os << "repeat: " << rep.walk_end_repeat << "\n";
        for (size_t v : rep.walk) os << "vertex: " << v << "\n";
    }
    write_file(path, os.str());
}

struct PeriodsArgs {
    std::string kind, spec_path, witness_out, verify_path;
    int p = 1, m = 0, n = 0;
    bool timing = false;
    int threads = 1;
};

int run_periods(const PeriodsArgs& a, const SearchBudget& budget) {
    SftSpec spec = parse_spec_file(a.spec_path).spec;

    if (!a.verify_path.empty()) {
        // re-validate a previously emitted witness, independently of search
        std::ifstream wf(a.verify_path);
        if (!wf) throw std::runtime_error("cannot open witness '" + a.verify_path + "'");
        std::string head;
        wf >> head;
        wf.seekg(0);
        if (head == "%torus") {
            TorusConfig cfg = parse_torus(wf, spec.alphabet);
            if (!is_locally_valid(cfg, spec).empty()) {
                std::cout << "witness invalid: forbidden pattern present\n";
                return kExitNo;
            }
            if (a.kind == "strong") {
                if (!stabilizer(cfg).is_scaled_full_lattice(a.p)) {
                    std::cout << "witness invalid: stabilizer is not p*Z^d\n";
                    return kExitNo;
                }
            } else if (a.kind == "horizontal") {
                if (least_axis_period(cfg, 0) != a.n) {
                    std::cout << "witness invalid: least horizontal period differs\n";
                    return kExitNo;
                }
            }
            std::cout << "witness ok\n";
            return kExitYes;
        }
        std::cout << "witness format not recognized\n";
        return kExitNo;
    }

    WitnessReport rep;
    if (a.kind == "strong") {
        rep = strong_period_exists(spec, a.p, budget, a.threads);
    } else if (a.kind == "horizontal") {
        rep = horizontal_period(spec, a.n, budget, a.threads);
    } else if (a.kind == "one") {
        rep = one_period(spec, a.m, a.n, budget, a.threads);
    } else {
        std::cerr << "unknown period kind '" << a.kind << "'\n";
        return kExitUsage;
    }
    std::cout << machine_line(rep, a.timing) << "\n";
    if (rep.verdict == Verdict::Yes && !a.witness_out.empty()) write_witness(a.witness_out, rep, spec);
    return verdict_code(rep.verdict);
}

PeriodGroup parse_basis(const std::string& text, int dim) {
    // rows separated by ';', coordinates by ','
    std::vector<IVec> rows;
    std::istringstream rs(text);
    std::string row;
    while (std::getline(rs, row, ';')) {
        IVec v;
        std::istringstream cs(row);
        std::string c;
        while (std::getline(cs, c, ',')) v.push_back(std::stoi(c));
        if (static_cast<int>(v.size()) != dim)
            throw std::runtime_error("basis row arity mismatch");
        rows.push_back(std::move(v));
    }
    return PeriodGroup::from_generators(dim, rows);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"subshift-of-finite-type period toolkit"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "solver worker threads");
    SearchBudget budget = default_budget();
    app.add_option("--max-nodes", budget.max_nodes, "search node budget");
    app.add_option("--max-seconds", budget.max_seconds, "search time budget");
    app.add_option("--max-vertical", budget.max_vertical, "vertical companion cap");
    bool timing = false;
    app.add_flag("--timing", timing, "include wall time in reports");

    PeriodsArgs pa;
    auto* periods = app.add_subcommand("periods", "decide strong/horizontal/one periods");
    periods->add_option("kind", pa.kind, "strong | horizontal | one")->required();
    periods->add_option("spec", pa.spec_path, "spec file (%sft or %wang)")->required();
    periods->add_option("-p,--period", pa.p, "strong period");
    periods->add_option("-m", pa.m, "vector first component");
    periods->add_option("-n", pa.n, "horizontal period / vector second component");
    periods->add_option("--witness-out", pa.witness_out, "write a witness file on yes");
    periods->add_option("--verify", pa.verify_path, "re-validate a witness file");

    std::string count_spec;
    int count_p = 1;
    std::string count_mode = "stabilizer";
    auto* count = app.add_subcommand("count", "count strong-period points, normalized");
    count->add_option("spec", count_spec)->required();
    count->add_option("-p,--period", count_p)->required();
    count->add_option("--mode", count_mode, "stabilizer | lexmin");

    std::string cons_name, cons_out;
    auto* construct = app.add_subcommand("construct", "emit a generator tileset/spec");
    construct->add_option("name", cons_name, "robinson|kari-nw|east|counter:k|yk:k")->required();
    construct->add_option("out", cons_out, "output path")->required();

    std::string render_spec, render_torus, render_out, render_format = "svg";
    auto* render = app.add_subcommand("render", "render a torus config");
    render->add_option("spec", render_spec)->required();
    render->add_option("torus", render_torus)->required();
    render->add_option("-o,--out", render_out)->required();
    render->add_option("--format", render_format, "svg | ppm");

    std::string sg_spec, sg_out;
    int sg_m = 1, sg_n = 0;
    auto* stripgraph = app.add_subcommand("stripgraph", "emit G_{m,n} as DOT");
    stripgraph->add_option("spec", sg_spec)->required();
    stripgraph->add_option("-m", sg_m)->required();
    stripgraph->add_option("-n", sg_n)->required();
    stripgraph->add_option("-o,--out", sg_out)->required();

    std::string tm_path, tm_out;
    auto* compile = app.add_subcommand("compile-tm", "compile a machine to Wang tiles");
    compile->add_option("tm", tm_path)->required();
    compile->add_option("-o,--out", tm_out)->required();

    std::string det_spec, det_mode = "nw";
    auto* checkdet = app.add_subcommand("check-det", "check NW/East determinism");
    checkdet->add_option("spec", det_spec)->required();
    checkdet->add_option("--mode", det_mode, "nw | east");

    std::string ref_spec, ref_basis, ref_witness;
    auto* refute = app.add_subcommand("refute-lattice", "exhaust a lattice fundamental domain");
    refute->add_option("spec", ref_spec)->required();
    refute->add_option("--basis", ref_basis, "rows 'a,b;c,d'")->required();
    refute->add_option("--witness-out", ref_witness);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        pa.timing = timing;
        pa.threads = threads;
        if (periods->parsed()) return run_periods(pa, budget);

        if (count->parsed()) {
            SftSpec spec = parse_spec_file(count_spec).spec;
            CountMode mode = count_mode == "lexmin" ? CountMode::LexMin : CountMode::Stabilizer;
            std::cout << count_strong(spec, count_p, budget, threads, mode) << "\n";
            return kExitYes;
        }

        if (construct->parsed()) {
            std::ostringstream os;
            if (cons_name == "robinson") {
                write_wang(os, robinson());
            } else if (cons_name == "kari-nw") {
                write_wang(os, kari_nw());
            } else if (cons_name == "east") {
                write_sft(os, east_deterministic_base());
            } else if (cons_name.rfind("counter:", 0) == 0) {
                write_sft(os, counter_layer(std::stoi(cons_name.substr(8))));
            } else if (cons_name.rfind("yk:", 0) == 0) {
                write_wang(os, y_k_wang(std::stoi(cons_name.substr(3))));
            } else {
                std::cerr << "unknown construction '" << cons_name << "'\n";
                return kExitUsage;
            }
            write_file(cons_out, os.str());
            return kExitYes;
        }

        if (render->parsed()) {
            SftSpec spec = parse_spec_file(render_spec).spec;
            std::ifstream tf(render_torus);
            if (!tf) throw std::runtime_error("cannot open '" + render_torus + "'");
            TorusConfig cfg = parse_torus(tf, spec.alphabet);
            std::ostringstream os;
            if (render_format == "svg")
                render_svg(os, cfg, spec.alphabet);
            else if (render_format == "ppm")
                render_ppm(os, cfg);
            else {
                std::cerr << "unknown format '" << render_format << "'\n";
                return kExitUsage;
            }
            write_file(render_out, os.str());
            return kExitYes;
        }

        if (stripgraph->parsed()) {
            SftSpec spec = parse_spec_file(sg_spec).spec;
            StripGraph g(spec, sg_m, sg_n, budget);
            if (g.truncated()) return kExitUnknown;
            std::ostringstream os;
            g.write_dot(os, spec.alphabet);
            write_file(sg_out, os.str());
            return kExitYes;
        }

        if (compile->parsed()) {
            std::ifstream f(tm_path);
            if (!f) throw std::runtime_error("cannot open '" + tm_path + "'");
            TmSpec tm = parse_tm(f);
            std::ostringstream os;
            write_wang(os, compile_tm(tm));
            write_file(tm_out, os.str());
            return kExitYes;
        }

        if (checkdet->parsed()) {
            SftSpec spec = parse_spec_file(det_spec).spec;
            auto rep = check_deterministic(spec, det_mode == "east" ? DetMode::East : DetMode::NW);
            if (rep.deterministic) {
                std::cout << "deterministic\n";
                return kExitYes;
            }
            std::cout << "counterexample: a=" << spec.alphabet.token(rep.a)
                      << " b=" << spec.alphabet.token(rep.b)
                      << " c1=" << spec.alphabet.token(rep.c1)
                      << " c2=" << spec.alphabet.token(rep.c2) << "\n";
            return kExitNo;
        }

        if (refute->parsed()) {
            SftSpec spec = parse_spec_file(ref_spec).spec;
            PeriodGroup basis = parse_basis(ref_basis, spec.dim);
            WitnessReport rep = bounded_lattice_refute(spec, basis, budget, threads);
            std::cout << machine_line(rep, timing) << "\n";
            if (rep.verdict == Verdict::Yes && !ref_witness.empty())
                write_witness(ref_witness, rep, spec);
            return verdict_code(rep.verdict);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const BudgetExhausted& e) {
        std::cerr << e.what() << "\n";
        return kExitUnknown;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
