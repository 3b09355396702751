#include "focus/aec/cycles.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace focus::aec {

CycleFlaw make_cycle(const Graph& graph, std::span<const Vertex> vertices)
{
    const std::size_t n = vertices.size();
    if (n < 3)
        throw std::invalid_argument("a cycle needs at least three vertices");
    std::vector<Vertex> best;
    std::vector<Vertex> candidate(n);
    for (std::size_t start = 0; start < n; ++start) {
        for (int dir : {1, -1}) {
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t idx = dir == 1 ? (start + k) % n : (start + n - k) % n;
                candidate[k] = vertices[idx];
            }
            if (best.empty() || candidate < best)
                best = candidate;
        }
    }
    CycleFlaw out;
    out.vertices = std::move(best);
    out.edges.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto e = graph.edge_between(out.vertices[k], out.vertices[(k + 1) % n]);
        if (!e)
            throw std::invalid_argument("vertex sequence is not a cycle of the graph");
        out.edges.push_back(*e);
    }
    return out;
}

std::optional<std::vector<Vertex>> trace_bichromatic(const EdgeColoring& coloring, EdgeId edge, Color other)
{
    const Color first = coloring.color(edge);
    if (first == kUncolored || other == first || other < 1 || other > coloring.q())
        return std::nullopt;
    const Graph& g = coloring.graph();
    const auto [u, v] = g.edge(edge);
    std::vector<Vertex> seq{u, v};
    Vertex cur = v;
    Color want = other;
    for (;;) {
        const EdgeId next = coloring.edge_with_color(cur, want);
        if (next < 0)
            return std::nullopt;
        const Vertex w = g.other_end(next, cur);
        if (w == u)
            return seq;
        seq.push_back(w);
        cur = w;
        want = want == first ? other : first;
    }
}

namespace {

// Calls visit(vertices) for every bichromatic cycle of length >= 6 through a candidate edge.
template <typename Visit>
void scan_cycles(const EdgeColoring& coloring, std::optional<std::span<const EdgeId>> restrict_to, Visit&& visit)
{
    const Graph& g = coloring.graph();
    auto from_edge = [&](EdgeId e) {
        const auto [u, v] = g.edge(e);
        const Color a = coloring.color(e);
        if (a == kUncolored)
            return;
        for (const Incidence& inc : g.incident(u)) {
            const Color b = coloring.color(inc.edge);
            if (inc.edge == e || b == kUncolored || coloring.edge_with_color(v, b) < 0)
                continue;
            if (auto cycle = trace_bichromatic(coloring, e, b); cycle && cycle->size() >= 6)
                visit(*cycle);
        }
    };
    if (restrict_to) {
        for (EdgeId e : *restrict_to)
            from_edge(e);
    } else {
        for (EdgeId e = 0; e < g.num_edges(); ++e)
            from_edge(e);
    }
}

} // namespace

std::vector<CycleFlaw> find_flaws(const EdgeColoring& coloring, std::optional<std::span<const EdgeId>> restrict_to)
{
    std::set<CycleFlaw> found;
    scan_cycles(coloring, restrict_to,
                [&](const std::vector<Vertex>& cycle) { found.insert(make_cycle(coloring.graph(), cycle)); });
    return {found.begin(), found.end()};
}

std::optional<CycleFlaw> least_flaw(const EdgeColoring& coloring, std::optional<std::span<const EdgeId>> restrict_to)
{
    std::optional<CycleFlaw> best;
    scan_cycles(coloring, restrict_to, [&](const std::vector<Vertex>& cycle) {
        if (best && cycle.size() > best->length())
            return;
        CycleFlaw flaw = make_cycle(coloring.graph(), cycle);
        if (!best || flaw < *best)
            best = std::move(flaw);
    });
    return best;
}

bool is_bichromatic(const EdgeColoring& coloring, const CycleFlaw& flaw)
{
    const Color a = coloring.color(flaw.edges[0]);
    const Color b = coloring.color(flaw.edges[1]);
    if (a == kUncolored || b == kUncolored || a == b || flaw.length() % 2 != 0)
        return false;
    for (std::size_t k = 0; k < flaw.length(); ++k)
        if (coloring.color(flaw.edges[k]) != (k % 2 == 0 ? a : b))
            return false;
    return true;
}

} // namespace focus::aec
