#include "cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "cli/family_io.hpp"
#include "focus/aec/coloring.hpp"
#include "focus/aec/solver.hpp"
#include "focus/analysis.hpp"
#include "focus/condition.hpp"
#include "focus/errors.hpp"
#include "focus/explicit_walk.hpp"
#include "focus/verify/forest.hpp"
#include "focus/verify/witness.hpp"

namespace focus::cli {

namespace {

struct Options {
    std::string input;
    std::string second_input;
    std::uint64_t seed = 0;
    double tol = kDefaultTolerance;
    std::uint64_t max_steps = 0;
    bool max_steps_given = false;
    std::uint64_t trials = 1000;
    double s = 1.0;
    std::string mode = "auto";
    std::string family = "powerset";
    std::string psi = "1";
    std::string strategy = "simple";
    std::string out_path;
    std::size_t t = 3;
    std::uint64_t samples = 0;
    std::size_t depth_cap = 64;
    std::size_t cap = verify::kDefaultEnumerationCap;
    std::string check = "witness";
    unsigned threads = 1;
    bool check_invariants = false;
};

std::vector<std::string> flaw_names(const ExplicitInstance& inst)
{
    std::vector<std::string> names;
    for (FlawId i = 0; i < inst.num_flaws(); ++i)
        names.push_back(inst.flaw_name(i));
    return names;
}

std::string join_names(const FlawSet& s, const std::vector<std::string>& names, const char* sep = ",")
{
    if (s.empty())
        return "-";
    std::string out;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k)
            out += sep;
        out += names[s[k]];
    }
    return out;
}

struct Families {
    SetFamily roots;
    std::vector<SetFamily> lists;
};

Families resolve_families(const ExplicitInstance& inst, const Digraph& r, const std::string& family)
{
    if (family == "powerset" || family == "ind") {
        const FamilyKind kind = family == "ind" ? FamilyKind::independent : FamilyKind::powerset;
        return {root_family(inst, r, kind), neighborhood_families(r, kind)};
    }
    if (family.rfind("file:", 0) == 0) {
        FamilySpec spec = load_family(family.substr(5), flaw_names(inst));
        Families out;
        out.lists = std::move(spec.lists);
        out.roots = spec.roots ? std::move(*spec.roots) : powerset(span(inst));
        return out;
    }
    throw std::invalid_argument("--family must be powerset, ind or file:<path>");
}

int cmd_check(const Options& o, std::ostream& out)
{
    const ExplicitInstance inst = load_instance(o.input);
    const auto names = flaw_names(inst);
    const std::vector<double> psi = parse_psi(o.psi, names);
    const Digraph r = causality_digraph(inst);
    const Families fam = resolve_families(inst, r, o.family);
    const ConditionReport report = analyze_condition(inst, psi, fam.lists, fam.roots);
    const auto violations = check_atomicity(inst);

    out << std::setprecision(12);
    out << "# flaw distortion charge regeneration_deviation causes zeta\n";
    for (FlawId i = 0; i < inst.num_flaws(); ++i)
        out << names[i] << ' ' << report.charges[i].distortion << ' ' << report.charges[i].charge << ' '
            << regeneration_deviation(inst, i) << ' ' << join_names(r.neighbors(i), names) << ' '
            << report.zeta[i] << '\n';
    out << "atomic " << (violations.empty() ? "yes" : "no") << '\n';
    for (const auto& v : violations) {
        out << "atomicity_violation " << names[v.flaw] << " target " << v.target << " sources";
        for (StateId s : v.sources)
            out << ' ' << s;
        out << '\n';
    }
    out << "span " << join_names(span(inst), names) << '\n';
    out << "delta " << report.delta << '\n';
    out << "t0 " << report.t0 << '\n';
    out << "satisfied " << (report.satisfied ? "yes" : "no") << '\n';
    return report.satisfied ? kOk : kFailed;
}

int cmd_simulate(const Options& o, std::ostream& out)
{
    const ExplicitInstance inst = load_instance(o.input);
    const auto names = flaw_names(inst);
    const std::vector<double> psi = parse_psi(o.psi, names);
    const Strategy strategy = parse_strategy(o.strategy);
    if (o.trials < 1)
        throw std::invalid_argument("--trials must be at least 1");
    if (o.s < 0.0)
        throw std::invalid_argument("--s must be nonnegative");
    const Digraph r = causality_digraph(inst);
    const Families fam = resolve_families(inst, r, o.family);
    const ConditionReport report = analyze_condition(inst, psi, fam.lists, fam.roots);

    out << std::setprecision(12);
    out << "delta " << report.delta << '\n';
    out << "t0 " << report.t0 << '\n';
    if (!report.satisfied) {
        out << "satisfied no\n";
        return kFailed;
    }
    const double raw = std::ceil((report.t0 + o.s) / report.delta);
    if (!(raw < 1e15))
        throw CapExceeded("step bound too large to simulate");
    const auto t_star = static_cast<std::uint64_t>(std::max(0.0, raw));

    const ExplicitWalkProblem problem(inst);
    const unsigned workers = std::max(1u, std::min<unsigned>(o.threads, static_cast<unsigned>(o.trials)));
    std::vector<std::uint64_t> exceeded(workers, 0);
    auto work = [&](unsigned w) {
        for (std::uint64_t i = w; i < o.trials; i += workers)
            if (run_walk(problem, strategy, derive_seed(o.seed, i), t_star).capped)
                ++exceeded[w];
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
        for (auto& th : pool)
            th.join();
    }
    std::uint64_t total = 0;
    for (auto e : exceeded)
        total += e;

    const double bound = std::pow(2.0, -o.s);
    const double sigma = std::sqrt(bound * (1.0 - bound) / static_cast<double>(o.trials));
    const double fraction = static_cast<double>(total) / static_cast<double>(o.trials);
    const bool pass = fraction <= bound + 3.0 * sigma;
    out << "strategy " << to_string(strategy) << '\n';
    out << "s " << o.s << '\n';
    out << "t_star " << t_star << '\n';
    out << "trials " << o.trials << '\n';
    out << "exceeded " << total << '\n';
    out << "fraction " << fraction << '\n';
    out << "bound " << bound << '\n';
    out << "sigma " << sigma << '\n';
    out << "pass " << (pass ? "yes" : "no") << '\n';
    return pass ? kOk : kFailed;
}

void render_nodes(std::string& out, const std::vector<verify::ForestNode>& nodes, const std::vector<std::string>& names)
{
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (k)
            out += ' ';
        out += names[nodes[k].label];
        if (!nodes[k].children.empty()) {
            out += '(';
            render_nodes(out, nodes[k].children, names);
            out += ')';
        }
    }
}

std::string render(const verify::LabeledForest& f, const std::vector<std::string>& names)
{
    if (f.roots.empty())
        return "{}";
    std::string out;
    render_nodes(out, f.roots, names);
    return out;
}

int cmd_forest(const Options& o, std::ostream& out)
{
    if (o.family.rfind("file:", 0) != 0)
        throw std::invalid_argument("forest needs --family file:<path>");
    const FamilySpec spec = load_family(o.family.substr(5));
    if (!spec.roots)
        throw ParseError(0, "family file has no 'roots' lines");
    const std::vector<double> psi = parse_psi(o.psi, spec.names);
    const SetFamily& roots = *spec.roots;

    std::vector<verify::LabeledForest> small;
    for (std::size_t k = 0; k <= o.t; ++k)
        for (auto& f : verify::enumerate_forests(k, roots, spec.lists, o.cap))
            small.push_back(std::move(f));

    out << std::setprecision(12);
    if (o.samples == 0) {
        out << "# vertices probability forest\n";
        double total = 0.0;
        for (const auto& f : small) {
            const double p = verify::forest_probability(f, psi, roots, spec.lists);
            total += p;
            out << f.vertex_count() << ' ' << p << ' ' << render(f, spec.names) << '\n';
        }
        out << "forests " << small.size() << '\n';
        out << "total " << total << '\n';
        const bool have_gamma =
            std::all_of(spec.gamma.begin(), spec.gamma.end(), [](const auto& g) { return g.has_value(); });
        bool all_hold = true;
        if (have_gamma) {
            std::vector<double> gamma;
            for (const auto& g : spec.gamma)
                gamma.push_back(*g);
            for (std::size_t k = 0; k <= o.t; ++k) {
                const auto sum = verify::enumerate_forest_weight_sum(k, gamma, psi, roots, spec.lists, o.cap);
                const bool holds = sum.holds(o.tol);
                all_hold = all_hold && holds;
                out << "weight_sum " << k << ' ' << sum.lhs << ' ' << sum.rhs << ' ' << (holds ? "PASS" : "FAIL")
                    << '\n';
            }
        }
        return all_hold ? kOk : kFailed;
    }

    Rng rng(o.seed);
    std::map<verify::LabeledForest, std::uint64_t> counts;
    std::uint64_t truncated = 0;
    for (std::uint64_t k = 0; k < o.samples; ++k) {
        auto f = verify::sample_forest(rng, psi, roots, spec.lists, o.depth_cap);
        if (f.truncated) {
            ++truncated;
            continue;
        }
        if (f.vertex_count() <= o.t)
            ++counts[f];
    }
    const double n = static_cast<double>(o.samples);
    std::size_t outside = 0;
    out << "# exact empirical sigma within_3sigma forest\n";
    for (const auto& f : small) {
        const double p = verify::forest_probability(f, psi, roots, spec.lists);
        const auto it = counts.find(f);
        const double freq = it == counts.end() ? 0.0 : static_cast<double>(it->second) / n;
        const double sigma = std::sqrt(p * (1.0 - p) / n);
        const bool within = std::abs(freq - p) <= 3.0 * sigma + 1e-12;
        outside += within ? 0 : 1;
        out << p << ' ' << freq << ' ' << sigma << ' ' << (within ? "yes" : "no") << ' ' << render(f, spec.names)
            << '\n';
    }
    out << "samples " << o.samples << '\n';
    out << "truncated " << truncated << '\n';
    out << "outside_3sigma " << outside << '\n';
    return kOk;
}

int cmd_exact(const Options& o, std::ostream& out)
{
    const ExplicitInstance inst = load_instance(o.input);
    const Strategy strategy = parse_strategy(o.strategy);
    const ExplicitWalkProblem problem(inst);
    out << std::setprecision(12);
    if (o.check == "distribution") {
        const auto dist = verify::witness_distribution(problem, strategy, o.t, o.cap);
        out << "# witness probability\n";
        for (const auto& [w, p] : dist.entries)
            out << (w.empty() ? std::string("-") : verify::format_sequence(inst, w)) << ' ' << p << '\n';
        out << "halt " << dist.halt_mass << '\n';
        out << "total " << dist.total() << '\n';
        return kOk;
    }
    verify::Report report;
    if (o.check == "witness")
        report = verify::verify_witness_bound(problem, strategy, o.t, o.tol);
    else if (o.check == "atomic")
        report = verify::verify_atomic_oracle(inst, o.tol);
    else if (o.check == "window")
        report = verify::verify_trajectory_window(problem, strategy, o.t, o.tol);
    else
        throw std::invalid_argument("--check must be distribution, witness, atomic or window");
    report.write(out);
    out << "assertions " << report.assertions.size() << '\n';
    out << "failures " << report.failures() << '\n';
    return report.passed() ? kOk : kFailed;
}

int cmd_harmonic(const Options& o, std::ostream& out)
{
    write_instance(out, harmonic_kernel(load_instance(o.input)));
    return kOk;
}

int cmd_aec(const Options& o, std::ostream& out, std::ostream& err)
{
    const aec::Graph graph = aec::load_graph(o.input);
    const aec::AecParams params = aec::palette_size(graph, aec::parse_palette_mode(o.mode));
    if (params.fallback)
        err << "warning: palette formula left no surplus; using " << params.q << " colors\n";
    aec::AecOptions options;
    options.seed = o.seed;
    if (o.max_steps_given)
        options.max_steps = o.max_steps;
    options.check_invariants = o.check_invariants;

    aec::AecResult result;
    try {
        result = aec::aec_color(graph, params, options);
    } catch (const aec::StepCapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kCapExceeded;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return kFailed;
    }
    if (const auto bad = aec::verify_acyclic_coloring(graph, result.colors)) {
        err << "error: output failed verification: " << aec::describe(*bad) << '\n';
        return kFailed;
    }
    out << std::setprecision(12);
    out << "c max_degree " << params.max_degree << '\n';
    out << "c degeneracy " << params.degeneracy << '\n';
    out << "c epsilon " << params.epsilon << '\n';
    out << "c colors " << params.q << '\n';
    out << "c surplus " << params.surplus << '\n';
    out << "c mode " << aec::to_string(params.mode) << '\n';
    out << "c steps " << result.steps << '\n';
    for (aec::EdgeId e = 0; e < graph.num_edges(); ++e)
        out << graph.edge(e).u + 1 << ' ' << graph.edge(e).v + 1 << ' ' << result.colors[e] << '\n';
    return kOk;
}

std::vector<aec::Color> load_coloring(const std::string& path, const aec::Graph& graph)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open '" + path + "'");
    std::vector<aec::Color> colors(graph.num_edges(), aec::kUncolored);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::istringstream fields(raw);
        std::string first;
        if (!(fields >> first) || first == "c" || first[0] == '#')
            continue;
        long u = 0;
        long v = 0;
        long c = 0;
        std::string extra;
        std::istringstream row(raw);
        if (!(row >> u >> v >> c) || (row >> extra))
            throw ParseError(lineno, "expected 'u v color'");
        if (u < 1 || v < 1 || u > graph.num_vertices() || v > graph.num_vertices())
            throw ParseError(lineno, "vertex out of range");
        if (c < 1)
            throw ParseError(lineno, "colors must be positive");
        const auto e = graph.edge_between(static_cast<aec::Vertex>(u - 1), static_cast<aec::Vertex>(v - 1));
        if (!e)
            throw ParseError(lineno, std::to_string(u) + " " + std::to_string(v) + " is not an edge");
        if (colors[*e] != aec::kUncolored)
            throw ParseError(lineno, "edge " + std::to_string(u) + " " + std::to_string(v) + " colored twice");
        colors[*e] = static_cast<aec::Color>(c);
    }
    for (aec::EdgeId e = 0; e < graph.num_edges(); ++e)
        if (colors[e] == aec::kUncolored)
            throw ParseError(0, "edge " + std::to_string(graph.edge(e).u + 1) + " " +
                                    std::to_string(graph.edge(e).v + 1) + " has no color");
    return colors;
}

int cmd_verify(const Options& o, std::ostream& out)
{
    const aec::Graph graph = aec::load_graph(o.input);
    const auto colors = load_coloring(o.second_input, graph);
    if (const auto bad = aec::verify_acyclic_coloring(graph, colors)) {
        out << "violation " << aec::describe(*bad) << '\n';
        return kFailed;
    }
    out << "ok\n";
    return kOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Focused stochastic local search: condition checks, exact verifiers, walks and "
                 "acyclic edge coloring"};
    app.require_subcommand(1);
    Options o;

    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out_path, "Write results to this file"); };
    auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "Random seed"); };
    auto add_psi_family = [&](CLI::App* sub) {
        sub->add_option("--psi", o.psi, "Positive scalar or file:<path> with 'NAME value' lines");
        sub->add_option("--family", o.family, "powerset, ind or file:<path>");
    };
    auto add_tol = [&](CLI::App* sub) {
        sub->add_option("--tol", o.tol, "Absolute tolerance")->check(CLI::PositiveNumber);
    };

    auto* check = app.add_subcommand("check", "Charges, causality and the convergence condition of an instance");
    check->add_option("instance", o.input)->required();
    add_psi_family(check);
    add_tol(check);
    add_out(check);

    auto* simulate = app.add_subcommand("simulate", "Empirical tail of the walk length against the bound");
    simulate->add_option("instance", o.input)->required();
    add_psi_family(simulate);
    simulate->add_option("--strategy", o.strategy, "simple or recursive");
    simulate->add_option("--trials", o.trials, "Number of walks");
    simulate->add_option("--s", o.s, "Tail exponent: bound is 2^-s");
    simulate->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
    add_seed(simulate);
    add_out(simulate);

    auto* forest = app.add_subcommand("forest", "Enumerate or sample labeled forests of the branching process");
    add_psi_family(forest);
    forest->add_option("--t", o.t, "Largest forest size listed");
    forest->add_option("--samples", o.samples, "Sample this many forests instead of enumerating");
    forest->add_option("--depth-cap", o.depth_cap, "Sampling depth cap");
    forest->add_option("--cap", o.cap, "Enumeration cap")->check(CLI::PositiveNumber);
    add_seed(forest);
    add_tol(forest);
    add_out(forest);

    auto* exact = app.add_subcommand("exact", "Exact witness-sequence distribution and the bounds it must obey");
    exact->add_option("instance", o.input)->required();
    exact->add_option("--check", o.check, "distribution, witness, atomic or window");
    exact->add_option("--t", o.t, "Witness length");
    exact->add_option("--strategy", o.strategy, "simple or recursive");
    exact->add_option("--cap", o.cap, "Enumeration cap")->check(CLI::PositiveNumber);
    add_tol(exact);
    add_out(exact);

    auto* harmonic = app.add_subcommand("harmonic", "Rewrite an instance with the harmonic kernel");
    harmonic->add_option("instance", o.input)->required();
    add_out(harmonic);

    auto* color = app.add_subcommand("aec", "Acyclic edge coloring of a graph");
    color->add_option("graph", o.input)->required();
    color->add_option("--mode", o.mode, "degenerate, general or auto")
        ->check(CLI::IsMember({"degenerate", "general", "auto"}));
    color->add_option("--max-steps", o.max_steps, "Step cap (default 100 |E| q)");
    color->add_flag("--check-invariants", o.check_invariants, "Re-check every intermediate coloring");
    add_seed(color);
    add_out(color);

    auto* verify = app.add_subcommand("verify", "Check that an edge coloring is proper and acyclic");
    verify->add_option("graph", o.input)->required();
    verify->add_option("coloring", o.second_input)->required();
    add_out(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParseError;
    }
    o.max_steps_given = color->count("--max-steps") > 0;

    std::ofstream file;
    std::ostream* sink = &out;
    if (!o.out_path.empty()) {
        file.open(o.out_path);
        if (!file) {
            err << "error: cannot write '" << o.out_path << "'\n";
            return kParseError;
        }
        sink = &file;
    }

    try {
        if (*check)
            return cmd_check(o, *sink);
        if (*simulate)
            return cmd_simulate(o, *sink);
        if (*forest)
            return cmd_forest(o, *sink);
        if (*exact)
            return cmd_exact(o, *sink);
        if (*harmonic)
            return cmd_harmonic(o, *sink);
        if (*color)
            return cmd_aec(o, *sink, err);
        if (*verify)
            return cmd_verify(o, *sink);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kCapExceeded;
    } catch (const PreconditionError& e) {
        err << "precondition: " << e.what() << '\n';
        return kFailed;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kParseError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"focus"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace focus::cli
