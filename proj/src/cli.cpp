#include "latinkit/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "latinkit/bounds.hpp"
#include "latinkit/completion.hpp"
#include "latinkit/decomposition.hpp"
#include "latinkit/dimensions.hpp"
#include "latinkit/forcing.hpp"
#include "latinkit/teaching.hpp"

namespace latinkit::cli {

namespace {

using nlohmann::json;

std::string fmt_ld(long double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10Lg", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// grid or structured sidecar, detected by the first non-space byte
PartialLatinSquare load_partial(const std::string& path) {
    std::string text = read_file(path);
    for (char ch : text) {
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') continue;
        return ch == '{' ? read_structured(text) : parse_grid(text);
    }
    throw error("file is empty: " + path);
}

LatinSquare load_square(const std::string& path) { return LatinSquare::from_partial(load_partial(path)); }

json square_json(const PartialLatinSquare& p) { return json::parse(write_structured(p)); }

struct Common {
    std::string format = "table";  // table/grid = human, structured = JSON
    unsigned threads = 1;
    int max_n = 0;  // 0 = keep the per-command default guard
    bool structured() const { return format == "structured"; }
    int guard_or(int dflt, std::ostream& err) const {
        if (max_n == 0 || max_n <= dflt) return max_n == 0 ? dflt : max_n;
        err << "warning: raising the default guard (" << dflt << ") to " << max_n
            << "; searches may run long\n";
        return max_n;
    }
};

void add_common(CLI::App* cmd, Common& common) {
    cmd->add_option("--format", common.format, "output format: table, grid or structured")
        ->check(CLI::IsMember({"table", "grid", "structured"}))
        ->capture_default_str();
    cmd->add_option("--threads", common.threads, "search threads")->check(CLI::PositiveNumber);
    cmd->add_option("--max-n", common.max_n, "override the command's order guard");
}

void emit(std::ostream& out, const Common& common, const json& structured, const std::string& human) {
    if (common.structured())
        out << structured.dump() << "\n";
    else
        out << human << "\n";
}

long double parse_number_or_fraction(const std::string& text) {
    auto number = [&](const std::string& part) {
        std::size_t pos = 0;
        long double v = 0;
        try {
            v = std::stold(part, &pos);
        } catch (const std::invalid_argument&) {
            throw error("cannot parse number: " + text);
        } catch (const std::out_of_range&) {
            throw error("number out of range: " + text);
        }
        if (pos != part.size()) throw error("cannot parse number: " + text);
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) return number(text);
    long double den = number(text.substr(slash + 1));
    if (den == 0) throw error("zero denominator in " + text);
    return number(text.substr(0, slash)) / den;
}

std::uint64_t cap_of(std::uint64_t cap_opt) { return cap_opt == 0 ? xc::kNoCap : cap_opt; }

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Latin square teaching and critical set toolkit"};
    app.require_subcommand(1);

    // complete
    auto* c_complete = app.add_subcommand("complete", "enumerate or count completions of a partial square");
    Common oc_complete;
    std::string complete_input;
    std::uint64_t complete_cap = 0;
    bool complete_count_only = false;
    c_complete->add_option("--input", complete_input, "partial square file")->required();
    c_complete->add_option("--cap", complete_cap, "stop after this many completions (0 = all)");
    c_complete->add_flag("--count-only", complete_count_only, "print only the number of completions");
    add_common(c_complete, oc_complete);

    // verify-teaching / verify-critical / verify-strong
    struct VerifyOpts {
        Common common;
        std::string square, set;
    };
    VerifyOpts ov_teaching, ov_critical, ov_strong;
    auto add_verify = [&](const char* name, const char* desc, VerifyOpts& o) {
        auto* cmd = app.add_subcommand(name, desc);
        cmd->add_option("--square", o.square, "full square file")->required();
        cmd->add_option("--set", o.set, "entry set file (partial square)")->required();
        add_common(cmd, o.common);
        return cmd;
    };
    auto* c_vteach = add_verify("verify-teaching", "is the set a teaching set for the square?", ov_teaching);
    auto* c_vcrit = add_verify("verify-critical", "is the set a critical set for the square?", ov_critical);
    auto* c_vstrong =
        add_verify("verify-strong", "does forcing propagation recover the square from the set?", ov_strong);

    // min-teach
    auto* c_minteach = app.add_subcommand("min-teach", "minimum teaching set of a square");
    Common oc_minteach;
    std::string minteach_square;
    c_minteach->add_option("--square", minteach_square, "full square file")->required();
    add_common(c_minteach, oc_minteach);

    // scs
    auto* c_scs = app.add_subcommand("scs", "smallest critical set size over all squares of an order");
    Common oc_scs;
    int scs_n = 0;
    c_scs->add_option("--n", scs_n, "order")->required()->check(CLI::PositiveNumber);
    add_common(c_scs, oc_scs);

    // construct-quarter
    auto* c_quarter = app.add_subcommand("construct-quarter", "verified quarter-size critical set");
    Common oc_quarter;
    int quarter_n = 0;
    c_quarter->add_option("--n", quarter_n, "order (>= 2)")->required();
    add_common(c_quarter, oc_quarter);

    // vc / rtd / dims-report
    struct DimsOpts {
        Common common;
        int n = 0;
    };
    DimsOpts ov_vc, ov_rtd, ov_dims;
    auto add_dims = [&](const char* name, const char* desc, DimsOpts& o) {
        auto* cmd = app.add_subcommand(name, desc);
        cmd->add_option("--n", o.n, "order")->required()->check(CLI::PositiveNumber);
        add_common(cmd, o.common);
        return cmd;
    };
    auto* c_vc = add_dims("vc", "VC-dimension of the class of order-n squares", ov_vc);
    auto* c_rtd = add_dims("rtd", "recursive teaching dimension of the class", ov_rtd);
    auto* c_dims = add_dims("dims-report", "all dimension values of the class", ov_dims);

    // second-completion
    auto* c_second = app.add_subcommand("second-completion", "pipeline search for a different completion");
    Common oc_second;
    std::string second_partial, second_square, second_delta = "0.95";
    c_second->add_option("--partial", second_partial, "partial square file")->required();
    c_second->add_option("--square", second_square, "a known completion of the partial square")->required();
    c_second->add_option("--delta", second_delta, "heavy-line threshold in (0,1), number or fraction");
    add_common(c_second, oc_second);

    // decompose
    auto* c_decomp = app.add_subcommand("decompose", "triangle decomposition of a leave graph");
    Common oc_decomp;
    std::string decomp_partial, decomp_graph;
    bool decomp_count = false;
    std::uint64_t decomp_cap = 0;
    c_decomp->add_option("--partial", decomp_partial, "partial square file (its leave graph)");
    c_decomp->add_option("--graph", decomp_graph, "structured tripartite graph file");
    c_decomp->add_flag("--count", decomp_count, "count decompositions instead of printing one");
    c_decomp->add_option("--cap", decomp_cap, "saturation cap for --count (0 = exact)");
    add_common(c_decomp, oc_decomp);

    // hypothesis
    auto* c_hyp = app.add_subcommand("hypothesis", "minimum-degree decomposition hypothesis check");
    Common oc_hyp;
    std::string hyp_partial, hyp_graph, hyp_gamma = "0.01";
    c_hyp->add_option("--partial", hyp_partial, "partial square file (its leave graph)");
    c_hyp->add_option("--graph", hyp_graph, "structured tripartite graph file");
    c_hyp->add_option("--gamma", hyp_gamma, "slack above 101/52, number or fraction");
    add_common(c_hyp, oc_hyp);

    // bounds
    auto* c_bounds = app.add_subcommand("bounds", "bound table for an order");
    Common oc_bounds;
    std::uint64_t bounds_n = 0;
    c_bounds->add_option("--n", bounds_n, "order")->required();
    add_common(c_bounds, oc_bounds);

    // eps-search
    auto* c_eps = app.add_subcommand("eps-search", "epsilon-delta feasibility optimum");
    Common oc_eps;
    std::string eps_C;
    c_eps->add_option("--C", eps_C, "decomposition constant in (0,2), number or fraction")->required();
    add_common(c_eps, oc_eps);

    std::vector<char*> argv;
    std::string prog = "latinkit";
    argv.push_back(prog.data());
    std::vector<std::string> owned(args);
    for (std::string& a : owned) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 3;
    }

    if (c_complete->parsed()) {
        PartialLatinSquare p = load_partial(complete_input);
        std::uint64_t cap = cap_of(complete_cap);
        if (complete_count_only) {
            std::uint64_t n = completion::count_completions(p, cap, oc_complete.threads);
            emit(out, oc_complete, {{"command", "complete"}, {"count", n}}, std::to_string(n));
            return 0;
        }
        std::vector<LatinSquare> all = completion::completions(p, cap, oc_complete.threads);
        if (oc_complete.structured()) {
            json list = json::array();
            for (const LatinSquare& l : all) list.push_back(square_json(l.as_partial()));
            out << json{{"command", "complete"}, {"count", all.size()}, {"completions", list}}.dump()
                << "\n";
        } else {
            out << "completions: " << all.size() << "\n";
            for (const LatinSquare& l : all) out << render_grid(l.as_partial()) << "\n\n";
        }
        return 0;
    }

    if (c_vteach->parsed()) {
        LatinSquare square = load_square(ov_teaching.square);
        TripleSet set = to_triples(load_partial(ov_teaching.set));
        teaching::TeachingReport rep = teaching::analyze(set, square, ov_teaching.common.threads);
        json j{{"command", "verify-teaching"}, {"result", rep.is_teaching}};
        if (rep.witness_second_completion)
            j["witness"] = square_json(rep.witness_second_completion->as_partial());
        std::string human = std::string("teaching set: ") + (rep.is_teaching ? "yes" : "no");
        if (rep.witness_second_completion)
            human += "\nsecond completion:\n" + render_grid(rep.witness_second_completion->as_partial());
        emit(out, ov_teaching.common, j, human);
        return 0;
    }
    if (c_vcrit->parsed()) {
        LatinSquare square = load_square(ov_critical.square);
        TripleSet set = to_triples(load_partial(ov_critical.set));
        bool crit = teaching::is_critical_set(set, square, ov_critical.common.threads);
        emit(out, ov_critical.common, json{{"command", "verify-critical"}, {"result", crit}},
             std::string("critical set: ") + (crit ? "yes" : "no"));
        return 0;
    }
    if (c_vstrong->parsed()) {
        LatinSquare square = load_square(ov_strong.square);
        TripleSet set = to_triples(load_partial(ov_strong.set));
        bool strong = forcing::is_strong_teaching_set(set, square);
        emit(out, ov_strong.common, json{{"command", "verify-strong"}, {"result", strong}},
             std::string("strong teaching set: ") + (strong ? "yes" : "no"));
        return 0;
    }

    if (c_minteach->parsed()) {
        LatinSquare square = load_square(minteach_square);
        int guard = oc_minteach.guard_or(teaching::kMinTeachGuard, err);
        auto [size, set] = teaching::min_teaching_set(square, guard);
        emit(out, oc_minteach,
             json{{"command", "min-teach"}, {"size", size}, {"set", square_json(from_triples(set))}},
             "size: " + std::to_string(size) + "\n" + render_grid(from_triples(set)));
        return 0;
    }

    if (c_scs->parsed()) {
        int guard = oc_scs.guard_or(teaching::kMinTeachGuard, err);
        int value = teaching::scs(scs_n, guard, oc_scs.threads);
        emit(out, oc_scs, json{{"command", "scs"}, {"n", scs_n}, {"value", value}}, std::to_string(value));
        return 0;
    }

    if (c_quarter->parsed()) {
        int guard = oc_quarter.guard_or(teaching::kQuarterVerifyGuard, err);
        TripleSet set = teaching::quarter_critical_candidate(quarter_n, guard, oc_quarter.threads);
        emit(out, oc_quarter,
             json{{"command", "construct-quarter"},
                  {"n", quarter_n},
                  {"size", set.size()},
                  {"set", square_json(from_triples(set))}},
             "size: " + std::to_string(set.size()) + "\n" + render_grid(from_triples(set)));
        return 0;
    }

    // full dimension work is exponential beyond order 3
    auto dims_class = [&](const DimsOpts& o, const char* what) {
        int guard = o.common.guard_or(3, err);
        if (o.n > guard)
            throw guard_error(std::string(what) + " guarded at order " + std::to_string(guard) +
                              "; override with --max-n");
        return dims::latin_concept_class(o.n, std::max(guard, dims::kLatinClassGuard));
    };
    if (c_vc->parsed()) {
        int value = dims::vc_dimension(dims_class(ov_vc, "vc"));
        emit(out, ov_vc.common, json{{"command", "vc"}, {"n", ov_vc.n}, {"value", value}},
             std::to_string(value));
        return 0;
    }
    if (c_rtd->parsed()) {
        int value = dims::rtd(dims_class(ov_rtd, "rtd"));
        emit(out, ov_rtd.common, json{{"command", "rtd"}, {"n", ov_rtd.n}, {"value", value}},
             std::to_string(value));
        return 0;
    }
    if (c_dims->parsed()) {
        dims::ConceptClass cls = dims_class(ov_dims, "dims-report");
        dims::DimensionReport rep = dims::dimension_report(cls);
        json j{{"command", "dims-report"}, {"n", ov_dims.n},      {"concepts", cls.concepts.size()},
               {"universe", cls.universe_size}, {"vc", rep.vc},   {"td_min", rep.td_min},
               {"td_max", rep.td_max},          {"rtd", rep.rtd}, {"shattered_count", rep.shattered_count}};
        std::ostringstream human;
        human << "concepts: " << cls.concepts.size() << "\nuniverse: " << cls.universe_size
              << "\nvc: " << rep.vc << "\ntd_min: " << rep.td_min << "\ntd_max: " << rep.td_max
              << "\nrtd: " << rep.rtd << "\nshattered_count: " << rep.shattered_count;
        emit(out, ov_dims.common, j, human.str());
        return 0;
    }

    if (c_second->parsed()) {
        PartialLatinSquare p = load_partial(second_partial);
        LatinSquare l = load_square(second_square);
        long double delta = parse_number_or_fraction(second_delta);
        int guard = oc_second.guard_or(decomp::kDecomposeGuard, err);
        std::optional<LatinSquare> other = decomp::second_completion(p, l, delta, guard, oc_second.threads);
        json j{{"command", "second-completion"}, {"found", other.has_value()}};
        if (other) j["square"] = square_json(other->as_partial());
        emit(out, oc_second, j, other ? render_grid(other->as_partial()) : std::string("none"));
        return 0;
    }

    if (c_decomp->parsed()) {
        if (decomp_partial.empty() == decomp_graph.empty())
            throw error("pass exactly one of --partial or --graph");
        decomp::TripartiteGraph g = decomp_partial.empty()
                                        ? decomp::read_structured_graph(read_file(decomp_graph))
                                        : decomp::leave_graph(load_partial(decomp_partial));
        int guard = oc_decomp.guard_or(decomp::kDecomposeGuard, err);
        if (decomp_count) {
            std::uint64_t n = decomp::count_k3_decompositions(g, cap_of(decomp_cap), guard, oc_decomp.threads);
            emit(out, oc_decomp, json{{"command", "decompose"}, {"count", n}}, std::to_string(n));
            return 0;
        }
        std::optional<decomp::K3Decomposition> d = decomp::k3_decompose(g, guard, oc_decomp.threads);
        json j{{"command", "decompose"}, {"found", d.has_value()}};
        if (d) {
            json tris = json::array();
            std::ostringstream human;
            human << "triangles: " << d->triangles.size();
            for (const Triple& t : d->triangles) {
                tris.push_back({t.row, t.col, t.sym});
                human << "\n" << t.row << " " << t.col << " " << t.sym;
            }
            j["triangles"] = tris;
            emit(out, oc_decomp, j, human.str());
        } else {
            emit(out, oc_decomp, j, "none");
        }
        return 0;
    }

    if (c_hyp->parsed()) {
        if (hyp_partial.empty() == hyp_graph.empty())
            throw error("pass exactly one of --partial or --graph");
        decomp::TripartiteGraph g = hyp_partial.empty()
                                        ? decomp::read_structured_graph(read_file(hyp_graph))
                                        : decomp::leave_graph(load_partial(hyp_partial));
        decomp::HypothesisReport rep = decomp::degree_hypothesis(g, parse_number_or_fraction(hyp_gamma));
        json j{{"command", "hypothesis"},
               {"gamma", static_cast<double>(rep.gamma)},
               {"effective_part_sizes",
                {rep.effective_part_size[0], rep.effective_part_size[1], rep.effective_part_size[2]}},
               {"balanced_after_pruning", rep.balanced_after_pruning},
               {"min_degree", rep.min_degree},
               {"threshold", static_cast<double>(rep.threshold)},
               {"satisfied", rep.satisfied}};
        std::ostringstream human;
        human << "effective part sizes: " << rep.effective_part_size[0] << " "
              << rep.effective_part_size[1] << " " << rep.effective_part_size[2]
              << "\nbalanced after pruning: " << (rep.balanced_after_pruning ? "yes" : "no")
              << "\nmin degree: " << rep.min_degree << "\nthreshold: " << fmt_ld(rep.threshold)
              << "\nsatisfied: " << (rep.satisfied ? "yes" : "no");
        emit(out, oc_hyp, j, human.str());
        return 0;
    }

    if (c_bounds->parsed()) {
        bounds::BoundsTable t = bounds::bounds_table(bounds_n);
        json j{{"command", "bounds"},
               {"n", t.n},
               {"vc_rtd_lower", static_cast<double>(t.vc_rtd_lower)},
               {"td_upper", static_cast<double>(t.td_upper)},
               {"scs_lower", static_cast<double>(t.scs_lower)},
               {"quarter", t.quarter},
               {"regime_reached", t.regime_reached}};
        std::ostringstream human;
        human << "n: " << t.n << "\nvc/rtd lower bound: " << fmt_ld(t.vc_rtd_lower)
              << "\ntd upper bound: " << fmt_ld(t.td_upper)
              << "\nscs lower bound: " << fmt_ld(t.scs_lower) << "\nquarter value: " << t.quarter;
        if (t.have_rtd_vc_context) {
            j["rtd_from_vc_ln"] = static_cast<double>(t.rtd_from_vc_bound.ln);
            human << "\nrtd-from-vc context (ln): " << fmt_ld(t.rtd_from_vc_bound.ln);
        }
        human << "\nasymptotic regime reached: " << (t.regime_reached ? "yes" : "no");
        emit(out, oc_bounds, j, human.str());
        return 0;
    }

    if (c_eps->parsed()) {
        bounds::EpsilonDeltaReport rep = bounds::epsilon_search(parse_number_or_fraction(eps_C));
        json j{{"command", "eps-search"},
               {"C", static_cast<double>(rep.C)},
               {"epsilon", static_cast<double>(rep.epsilon)},
               {"delta", static_cast<double>(rep.delta)},
               {"mu", static_cast<double>(rep.mu)},
               {"slacks",
                {static_cast<double>(rep.slacks[0]), static_cast<double>(rep.slacks[1]),
                 static_cast<double>(rep.slacks[2]), static_cast<double>(rep.slacks[3])}}};
        std::ostringstream human;
        human << "C: " << fmt_ld(rep.C) << "\nepsilon: " << fmt_ld(rep.epsilon)
              << "\ndelta: " << fmt_ld(rep.delta) << "\nmu: " << fmt_ld(rep.mu) << "\nslacks: "
              << fmt_ld(rep.slacks[0]) << " " << fmt_ld(rep.slacks[1]) << " " << fmt_ld(rep.slacks[2])
              << " " << fmt_ld(rep.slacks[3]);
        emit(out, oc_eps, j, human.str());
        return 0;
    }

    err << "no subcommand given\n";
    return 3;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const guard_error& e) {
        err << "guard exceeded: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace latinkit::cli
