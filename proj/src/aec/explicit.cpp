#include "focus/aec/explicit.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "focus/errors.hpp"

namespace focus::aec {

namespace {

void extend_omega(EdgeColoring& partial, EdgeId e, std::size_t cap, std::vector<std::vector<Color>>& out)
{
    if (e == partial.graph().num_edges()) {
        out.emplace_back(partial.colors().begin(), partial.colors().end());
        if (out.size() > cap)
            throw CapExceeded("more than " + std::to_string(cap) + " colorings in Omega");
        return;
    }
    for (Color c : four_available(partial, e)) {
        partial.assign(e, c);
        extend_omega(partial, e + 1, cap, out);
        partial.clear(e);
    }
}

void extend_outcomes(EdgeColoring& partial, const CycleFlaw& flaw, std::size_t k, double prob,
                     std::vector<std::pair<std::vector<Color>, double>>& out)
{
    if (k == flaw.length()) {
        out.emplace_back(std::vector<Color>(partial.colors().begin(), partial.colors().end()), prob);
        return;
    }
    const EdgeId e = flaw.edges[k];
    const auto avail = four_available(partial, e);
    for (Color c : avail) {
        partial.assign(e, c);
        extend_outcomes(partial, flaw, k + 1, prob / static_cast<double>(avail.size()), out);
        partial.clear(e);
    }
}

struct CycleSearch {
    const Graph& graph;
    std::size_t cap;
    std::size_t visited = 0;
    Vertex start = 0;
    std::vector<Vertex> path;
    std::vector<char> on_path;
    std::set<CycleFlaw> found;

    void extend(Vertex x)
    {
        if (++visited > cap)
            throw CapExceeded("cycle enumeration exceeded " + std::to_string(cap) + " nodes");
        for (const Incidence& inc : graph.incident(x)) {
            const Vertex y = inc.neighbor;
            if (y == start && path.size() >= 6 && path.size() % 2 == 0)
                found.insert(make_cycle(graph, path));
            if (y <= start || on_path[y])
                continue;
            on_path[y] = 1;
            path.push_back(y);
            extend(y);
            path.pop_back();
            on_path[y] = 0;
        }
    }
};

std::string cycle_name(const CycleFlaw& flaw)
{
    std::string out = "C:";
    for (std::size_t k = 0; k < flaw.length(); ++k) {
        if (k)
            out += '-';
        out += std::to_string(flaw.vertices[k] + 1);
    }
    return out;
}

} // namespace

std::vector<std::vector<Color>> enumerate_omega(const Graph& graph, int q, std::size_t cap)
{
    EdgeColoring partial(graph, q);
    std::vector<std::vector<Color>> out;
    extend_omega(partial, 0, cap, out);
    return out;
}

std::vector<std::pair<std::vector<Color>, double>> resample_outcomes(const EdgeColoring& coloring,
                                                                     const CycleFlaw& flaw)
{
    if (!is_bichromatic(coloring, flaw))
        throw std::invalid_argument("resample_outcomes needs a bichromatic cycle");
    EdgeColoring partial = coloring;
    for (std::size_t k = 2; k < flaw.length(); ++k)
        partial.clear(flaw.edges[k]);
    std::vector<std::pair<std::vector<Color>, double>> out;
    extend_outcomes(partial, flaw, 2, 1.0, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CycleFlaw> even_cycles(const Graph& graph, std::size_t cap)
{
    CycleSearch search{graph, cap, 0, 0, {}, {}, {}};
    search.on_path.assign(graph.num_vertices(), 0);
    for (Vertex s = 0; s < graph.num_vertices(); ++s) {
        search.start = s;
        search.path = {s};
        search.on_path[s] = 1;
        search.extend(s);
        search.on_path[s] = 0;
    }
    return {search.found.begin(), search.found.end()};
}

ExplicitInstance to_explicit_instance(const Graph& graph, int q, std::size_t cap)
{
    const auto omega = enumerate_omega(graph, q, cap);
    std::map<std::vector<Color>, StateId> index;
    for (std::size_t s = 0; s < omega.size(); ++s)
        index.emplace(omega[s], static_cast<StateId>(s));

    InstanceSpec spec;
    spec.num_states = static_cast<int>(omega.size());
    spec.weight.assign(omega.size(), 1.0);
    spec.theta.assign(omega.size(), 0.0);
    const EdgeColoring start = initial_coloring(graph, q);
    spec.theta[index.at(std::vector<Color>(start.colors().begin(), start.colors().end()))] = 1.0;

    for (const CycleFlaw& flaw : even_cycles(graph, cap)) {
        FlawSpec f{cycle_name(flaw), {}, 0};
        std::vector<ArcSpec> arcs;
        const FlawId id = static_cast<FlawId>(spec.flaws.size());
        for (std::size_t s = 0; s < omega.size(); ++s) {
            const EdgeColoring sigma = EdgeColoring::from_colors(graph, q, omega[s]);
            if (!is_bichromatic(sigma, flaw))
                continue;
            f.members.push_back(static_cast<StateId>(s));
            for (const auto& [colors, prob] : resample_outcomes(sigma, flaw))
                arcs.push_back({id, static_cast<StateId>(s), index.at(colors), prob, 0});
        }
        if (f.members.empty())
            continue;
        spec.flaws.push_back(std::move(f));
        spec.arcs.insert(spec.arcs.end(), arcs.begin(), arcs.end());
    }
    return ExplicitInstance(std::move(spec));
}

} // namespace focus::aec
