#include "focus/aec/coloring.hpp"

#include <algorithm>
#include <stdexcept>

#include "focus/aec/cycles.hpp"

namespace focus::aec {

EdgeColoring::EdgeColoring(const Graph& graph, int q)
    : graph_(&graph), q_(q), uncolored_(graph.num_edges()), colors_(graph.num_edges(), kUncolored),
      table_(static_cast<std::size_t>(graph.num_vertices()) * (q + 1), -1)
{
    if (q < 1)
        throw std::invalid_argument("palette must have at least one color");
}

EdgeColoring EdgeColoring::from_colors(const Graph& graph, int q, std::span<const Color> colors)
{
    if (static_cast<int>(colors.size()) != graph.num_edges())
        throw std::invalid_argument("coloring has " + std::to_string(colors.size()) + " entries for " +
                                    std::to_string(graph.num_edges()) + " edges");
    EdgeColoring out(graph, q);
    for (EdgeId e = 0; e < graph.num_edges(); ++e)
        if (colors[e] != kUncolored)
            out.assign(e, colors[e]);
    return out;
}

void EdgeColoring::assign(EdgeId e, Color c)
{
    if (c < 1 || c > q_)
        throw std::invalid_argument("color " + std::to_string(c) + " outside palette 1.." + std::to_string(q_));
    const auto [u, v] = graph_->edge(e);
    if (colors_[e] == c)
        return;
    if (slot(u, c) != -1 || slot(v, c) != -1)
        throw std::invalid_argument("color " + std::to_string(c) + " already used next to edge " + std::to_string(e));
    clear(e);
    colors_[e] = c;
    slot(u, c) = e;
    slot(v, c) = e;
    --uncolored_;
}

void EdgeColoring::clear(EdgeId e)
{
    const Color c = colors_[e];
    if (c == kUncolored)
        return;
    const auto [u, v] = graph_->edge(e);
    slot(u, c) = -1;
    slot(v, c) = -1;
    colors_[e] = kUncolored;
    ++uncolored_;
}

std::vector<Color> four_available(const EdgeColoring& coloring, EdgeId edge)
{
    const Graph& g = coloring.graph();
    const auto [u, v] = g.edge(edge);
    std::vector<char> forbidden(coloring.q() + 1, 0);
    for (const Vertex end : {u, v})
        for (const Incidence& inc : g.incident(end))
            if (inc.edge != edge)
                forbidden[coloring.color(inc.edge)] = 1;
    // a color c closes u-v-w-x-u when vw and xu share a color and wx has color c
    for (const Incidence& inc : g.incident(v)) {
        const Color shared = coloring.color(inc.edge);
        if (inc.edge == edge || shared == kUncolored)
            continue;
        const EdgeId back = coloring.edge_with_color(u, shared);
        if (back < 0 || back == edge)
            continue;
        const Vertex w = inc.neighbor;
        const Vertex x = g.other_end(back, u);
        if (x == w)
            continue;
        if (const auto closing = g.edge_between(w, x))
            forbidden[coloring.color(*closing)] = 1;
    }
    forbidden[kUncolored] = 0;

    std::vector<Color> out;
    int excluded = 0;
    for (Color c = 1; c <= coloring.q(); ++c) {
        if (forbidden[c])
            ++excluded;
        else
            out.push_back(c);
    }
    if (excluded > 2 * std::max(0, g.max_degree() - 1))
        throw std::logic_error("edge " + std::to_string(edge) + " has " + std::to_string(excluded) +
                               " 4-forbidden colors, more than 2(Delta-1)");
    return out;
}

EdgeColoring initial_coloring(const Graph& graph, int q)
{
    if (q < 2 * (graph.max_degree() - 1) + 1)
        throw std::invalid_argument("palette of " + std::to_string(q) + " colors is below 2(Delta-1)+1");
    EdgeColoring out(graph, q);
    for (EdgeId e = 0; e < graph.num_edges(); ++e) {
        const auto avail = four_available(out, e);
        if (avail.empty())
            throw std::logic_error("no 4-available color for edge " + std::to_string(e));
        out.assign(e, avail.back());
    }
    return out;
}

std::string describe(const Violation& v)
{
    if (v.kind == Violation::Kind::improper)
        return "improper: two edges at vertex " + std::to_string(v.vertex + 1) + " share color " +
               std::to_string(v.first);
    std::string out = "bichromatic cycle";
    for (Vertex x : v.cycle)
        out += ' ' + std::to_string(x + 1);
    out += " with colors " + std::to_string(v.first) + " and " + std::to_string(v.second);
    return out;
}

std::optional<Violation> verify_acyclic_coloring(const Graph& graph, std::span<const Color> colors)
{
    if (static_cast<int>(colors.size()) != graph.num_edges())
        throw std::invalid_argument("coloring has " + std::to_string(colors.size()) + " entries for " +
                                    std::to_string(graph.num_edges()) + " edges");
    for (EdgeId e = 0; e < graph.num_edges(); ++e)
        if (colors[e] <= 0)
            throw std::invalid_argument("edge " + std::to_string(e) + " is uncolored");

    // per vertex: (color, edge) sorted by color
    std::vector<std::vector<std::pair<Color, EdgeId>>> at(graph.num_vertices());
    for (Vertex x = 0; x < graph.num_vertices(); ++x) {
        for (const Incidence& inc : graph.incident(x))
            at[x].emplace_back(colors[inc.edge], inc.edge);
        std::sort(at[x].begin(), at[x].end());
        for (std::size_t k = 1; k < at[x].size(); ++k)
            if (at[x][k].first == at[x][k - 1].first) {
                Violation out;
                out.kind = Violation::Kind::improper;
                out.vertex = x;
                out.first = out.second = at[x][k].first;
                return out;
            }
    }
    auto lookup = [&](Vertex x, Color c) -> EdgeId {
        const auto& list = at[x];
        const auto it = std::lower_bound(list.begin(), list.end(), std::make_pair(c, EdgeId{-1}));
        return it != list.end() && it->first == c ? it->second : -1;
    };

    for (EdgeId e = 0; e < graph.num_edges(); ++e) {
        const auto [u, v] = graph.edge(e);
        const Color a = colors[e];
        for (const auto& [b, f] : at[u]) {
            if (b == a || lookup(v, b) < 0)
                continue;
            std::vector<Vertex> cycle{u, v};
            Vertex cur = v;
            Color want = b;
            for (;;) {
                const EdgeId next = lookup(cur, want);
                if (next < 0)
                    break;
                const Vertex w = graph.other_end(next, cur);
                if (w == u) {
                    Violation out;
                    out.kind = Violation::Kind::bichromatic_cycle;
                    out.cycle = std::move(cycle);
                    out.first = std::min(a, b);
                    out.second = std::max(a, b);
                    return out;
                }
                cycle.push_back(w);
                cur = w;
                want = want == a ? b : a;
            }
        }
    }
    return std::nullopt;
}

bool in_omega(const EdgeColoring& coloring)
{
    if (!coloring.complete())
        return false;
    const Graph& g = coloring.graph();
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const auto [u, v] = g.edge(e);
        for (const Incidence& inc : g.incident(u)) {
            const Color b = coloring.color(inc.edge);
            if (inc.edge == e || coloring.edge_with_color(v, b) < 0)
                continue;
            const auto cycle = trace_bichromatic(coloring, e, b);
            if (cycle && cycle->size() == 4)
                return false;
        }
    }
    return true;
}

} // namespace focus::aec
