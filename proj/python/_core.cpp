#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "focus/aec/coloring.hpp"
#include "focus/aec/generators.hpp"
#include "focus/aec/params.hpp"
#include "focus/aec/solver.hpp"
#include "focus/analysis.hpp"
#include "focus/condition.hpp"
#include "focus/errors.hpp"
#include "focus/explicit_walk.hpp"
#include "focus/verify/forest.hpp"
#include "focus/verify/witness.hpp"

namespace py = pybind11;
using namespace focus;

namespace {

ExplicitInstance instance_from_text(const std::string& text)
{
    std::istringstream in(text);
    return parse_instance(in);
}

aec::Graph graph_from_text(const std::string& text)
{
    std::istringstream in(text);
    return aec::parse_graph(in);
}

std::vector<SetFamily> lists_for(const Digraph& r, const std::string& family)
{
    if (family == "powerset")
        return neighborhood_families(r, FamilyKind::powerset);
    if (family == "ind")
        return neighborhood_families(r, FamilyKind::independent);
    throw std::invalid_argument("family must be 'powerset' or 'ind'");
}

py::dict condition(const ExplicitInstance& inst, const std::vector<double>& psi, const std::string& family)
{
    const Digraph r = causality_digraph(inst);
    const FamilyKind kind = family == "ind" ? FamilyKind::independent : FamilyKind::powerset;
    const auto report = analyze_condition(inst, psi, lists_for(r, family), root_family(inst, r, kind));
    py::list distortion;
    py::list charge;
    for (const auto& c : report.charges) {
        distortion.append(c.distortion);
        charge.append(c.charge);
    }
    py::dict out;
    out["distortion"] = distortion;
    out["charge"] = charge;
    out["zeta"] = report.zeta;
    out["delta"] = report.delta;
    out["t0"] = report.t0;
    out["satisfied"] = report.satisfied;
    return out;
}

py::dict params_dict(const aec::AecParams& p)
{
    py::dict out;
    out["max_degree"] = p.max_degree;
    out["degeneracy"] = p.degeneracy;
    out["epsilon"] = p.epsilon;
    out["q"] = p.q;
    out["surplus"] = p.surplus;
    out["mode"] = std::string(aec::to_string(p.mode));
    out["fallback"] = p.fallback;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Focused stochastic local search and acyclic edge coloring";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);

    py::class_<ExplicitInstance>(m, "Instance")
        .def_static("parse", &instance_from_text, py::arg("text"))
        .def_static("load", &load_instance, py::arg("path"))
        .def_property_readonly("num_states", &ExplicitInstance::num_states)
        .def_property_readonly("num_flaws", &ExplicitInstance::num_flaws)
        .def("flaw_name", &ExplicitInstance::flaw_name, py::arg("i"))
        .def("flaw_members", [](const ExplicitInstance& i, FlawId f) {
            auto s = i.flaw_members(f);
            return std::vector<StateId>(s.begin(), s.end());
        })
        .def("mu", [](const ExplicitInstance& i) { return std::vector<double>(i.mu().begin(), i.mu().end()); })
        .def("theta",
             [](const ExplicitInstance& i) { return std::vector<double>(i.theta().begin(), i.theta().end()); })
        .def("present", &ExplicitInstance::present, py::arg("state"))
        .def("to_text", [](const ExplicitInstance& i) {
            std::ostringstream out;
            write_instance(out, i);
            return out.str();
        });

    m.def("causality_digraph", [](const ExplicitInstance& inst) {
        const Digraph r = causality_digraph(inst);
        std::vector<FlawSet> out;
        for (FlawId i = 0; i < r.size(); ++i)
            out.push_back(r.neighbors(i));
        return out;
    });
    m.def("flaw_charge", [](const ExplicitInstance& inst, FlawId i) {
        const auto c = flaw_charge(inst, i);
        return std::make_pair(c.distortion, c.charge);
    }, py::arg("instance"), py::arg("flaw"), "(distortion, charge) of one flaw");
    m.def("regeneration_deviation", &regeneration_deviation, py::arg("instance"), py::arg("flaw"));
    m.def("check_atomicity", [](const ExplicitInstance& inst) {
        std::vector<std::tuple<FlawId, StateId, std::vector<StateId>>> out;
        for (const auto& v : check_atomicity(inst))
            out.emplace_back(v.flaw, v.target, v.sources);
        return out;
    });
    m.def("harmonic_kernel", &harmonic_kernel, py::arg("instance"));
    m.def("span", &span, py::arg("instance"));
    m.def("analyze_condition", &condition, py::arg("instance"), py::arg("psi"), py::arg("family") = "powerset",
          "Charges, zeta, delta and T0 with powerset or independent-set families");

    m.def("run_walk", [](const ExplicitInstance& inst, const std::string& strategy, std::uint64_t seed,
                         std::uint64_t max_steps) {
        const auto traj = run_walk(ExplicitWalkProblem(inst), parse_strategy(strategy), seed, max_steps);
        std::vector<std::pair<FlawId, StateId>> steps;
        for (const auto& s : traj.steps)
            steps.emplace_back(s.flaw, s.state);
        py::dict out;
        out["start"] = traj.start;
        out["steps"] = steps;
        out["capped"] = traj.capped;
        return out;
    }, py::arg("instance"), py::arg("strategy") = "simple", py::arg("seed") = 0, py::arg("max_steps") = 1000);

    m.def("witness_distribution", [](const ExplicitInstance& inst, const std::string& strategy, std::size_t t) {
        const auto dist = verify::witness_distribution(ExplicitWalkProblem(inst), parse_strategy(strategy), t);
        py::dict entries;
        for (const auto& [w, p] : dist.entries)
            entries[py::tuple(py::cast(w))] = p;
        return py::make_tuple(entries, dist.halt_mass);
    }, py::arg("instance"), py::arg("strategy"), py::arg("t"), "({witness tuple: probability}, halt mass)");

    m.def("forest_weight_sum", [](std::size_t t, const std::vector<double>& gamma, const std::vector<double>& psi,
                                  const SetFamily& roots, const std::vector<SetFamily>& lists) {
        const auto s = verify::enumerate_forest_weight_sum(t, gamma, psi, roots, lists);
        return std::make_pair(s.lhs, s.rhs);
    });
    m.def("forest_probabilities", [](std::size_t t, const std::vector<double>& psi, const SetFamily& roots,
                                     const std::vector<SetFamily>& lists) {
        std::vector<std::pair<std::string, double>> out;
        for (const auto& f : verify::enumerate_forests(t, roots, lists))
            out.emplace_back(verify::to_string(f), verify::forest_probability(f, psi, roots, lists));
        return out;
    }, py::arg("t"), py::arg("psi"), py::arg("roots"), py::arg("lists"),
          "Every forest with exactly t vertices and its probability");

    py::class_<aec::Graph>(m, "Graph")
        .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
            std::vector<aec::Edge> es;
            for (const auto& [u, v] : edges)
                es.push_back({u, v});
            return aec::Graph(n, std::move(es));
        }), py::arg("n"), py::arg("edges"))
        .def_static("parse", &graph_from_text, py::arg("text"))
        .def_property_readonly("num_vertices", &aec::Graph::num_vertices)
        .def_property_readonly("num_edges", &aec::Graph::num_edges)
        .def_property_readonly("max_degree", &aec::Graph::max_degree)
        .def("edges", [](const aec::Graph& g) {
            std::vector<std::pair<int, int>> out;
            for (const auto& e : g.edges())
                out.emplace_back(e.u, e.v);
            return out;
        });

    m.def("degeneracy_order", [](const aec::Graph& g) {
        const auto d = aec::degeneracy_order(g);
        return std::make_pair(d.degeneracy, d.order);
    });
    m.def("palette_size", [](const aec::Graph& g, const std::string& mode) {
        return params_dict(aec::palette_size(g, aec::parse_palette_mode(mode)));
    }, py::arg("graph"), py::arg("mode") = "auto");
    m.def("aec_color", [](const aec::Graph& g, const std::string& mode, std::uint64_t seed,
                          std::optional<std::uint64_t> max_steps) {
        aec::AecOptions options;
        options.seed = seed;
        options.max_steps = max_steps;
        const auto result = aec::aec_color(g, aec::palette_size(g, aec::parse_palette_mode(mode)), options);
        return std::make_pair(result.colors, result.steps);
    }, py::arg("graph"), py::arg("mode") = "auto", py::arg("seed") = 0, py::arg("max_steps") = py::none(),
          "(colors per edge, steps taken)");
    m.def("verify_acyclic_coloring", [](const aec::Graph& g, const std::vector<int>& colors) -> std::optional<std::string> {
        if (const auto bad = aec::verify_acyclic_coloring(g, colors))
            return aec::describe(*bad);
        return std::nullopt;
    }, py::arg("graph"), py::arg("colors"), "None when proper and acyclic, otherwise a description");
    m.def("cycles_through_edge", [](const aec::Graph& g, int edge, int length) {
        return aec::cycles_through_edge(g, edge, length);
    });
    m.def("general_margin", [](int length) { return aec::general_margin(length); }, py::arg("cycle_length"));
    m.def("degenerate_coefficient", [] { return aec::degenerate_coefficient(); });
    m.def("random_planar_triangulation", &aec::random_planar_triangulation, py::arg("n"), py::arg("max_degree"),
          py::arg("seed"));
    m.def("random_series_parallel", &aec::random_series_parallel, py::arg("n"), py::arg("max_degree"),
          py::arg("seed"));
}
