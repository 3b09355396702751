#include "focus/aec/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "focus/errors.hpp"

namespace focus::aec {

Graph::Graph(int num_vertices, std::vector<Edge> edges) : n_(num_vertices), edges_(std::move(edges))
{
    if (n_ < 0)
        throw std::invalid_argument("vertex count must be nonnegative");
    adj_.resize(n_);
    for (EdgeId e = 0; e < num_edges(); ++e) {
        const auto [u, v] = edges_[e];
        if (u < 0 || v < 0 || u >= n_ || v >= n_)
            throw std::invalid_argument("edge " + std::to_string(e) + " has an endpoint out of range");
        if (u == v)
            throw std::invalid_argument("edge " + std::to_string(e) + " is a loop");
        adj_[u].push_back({v, e});
        adj_[v].push_back({u, e});
    }
    for (Vertex v = 0; v < n_; ++v) {
        auto& list = adj_[v];
        std::sort(list.begin(), list.end(), [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
        for (std::size_t k = 1; k < list.size(); ++k)
            if (list[k].neighbor == list[k - 1].neighbor)
                throw std::invalid_argument("parallel edges between " + std::to_string(v) + " and " +
                                            std::to_string(list[k].neighbor));
        max_degree_ = std::max(max_degree_, static_cast<int>(list.size()));
    }
}

std::optional<EdgeId> Graph::edge_between(Vertex a, Vertex b) const
{
    const auto& list = adj_[a];
    const auto it = std::lower_bound(list.begin(), list.end(), b,
                                     [](const Incidence& inc, Vertex x) { return inc.neighbor < x; });
    if (it != list.end() && it->neighbor == b)
        return it->edge;
    return std::nullopt;
}

namespace {

long read_int(std::istringstream& fields, std::size_t line)
{
    std::string tok;
    if (!(fields >> tok))
        throw ParseError(line, "missing integer");
    long value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, "expected an integer, got '" + tok + "'");
    return value;
}

} // namespace

Graph parse_graph(std::istream& in)
{
    std::string raw;
    std::size_t lineno = 0;
    long n = -1;
    long m = -1;
    std::vector<Edge> edges;
    std::set<std::pair<int, int>> seen;
    while (std::getline(in, raw)) {
        ++lineno;
        std::istringstream fields(raw);
        std::string cmd;
        if (!(fields >> cmd) || cmd == "c")
            continue;
        if (cmd == "p") {
            std::string kind;
            if (n >= 0)
                throw ParseError(lineno, "duplicate 'p' line");
            if (!(fields >> kind) || kind != "edge")
                throw ParseError(lineno, "expected 'p edge N M'");
            n = read_int(fields, lineno);
            m = read_int(fields, lineno);
            if (n < 0 || m < 0)
                throw ParseError(lineno, "vertex and edge counts must be nonnegative");
        } else if (cmd == "e") {
            if (n < 0)
                throw ParseError(lineno, "'e' line before 'p edge' header");
            const long u = read_int(fields, lineno);
            const long v = read_int(fields, lineno);
            if (u < 1 || v < 1 || u > n || v > n)
                throw ParseError(lineno, "vertex out of range 1.." + std::to_string(n));
            if (u == v)
                throw ParseError(lineno, "loop at vertex " + std::to_string(u));
            if (!seen.emplace(std::min(u, v), std::max(u, v)).second)
                throw ParseError(lineno, "parallel edge " + std::to_string(u) + " " + std::to_string(v));
            edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)});
        } else {
            throw ParseError(lineno, "unknown line type '" + cmd + "'");
        }
        std::string extra;
        if (fields >> extra)
            throw ParseError(lineno, "trailing text '" + extra + "'");
    }
    if (n < 0)
        throw ParseError(lineno, "missing 'p edge N M' header");
    if (static_cast<long>(edges.size()) != m)
        throw ParseError(lineno, "header declares " + std::to_string(m) + " edges, found " +
                                     std::to_string(edges.size()));
    return Graph(static_cast<int>(n), std::move(edges));
}

Graph load_graph(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open '" + path + "'");
    return parse_graph(in);
}

void write_graph(std::ostream& out, const Graph& graph)
{
    out << "p edge " << graph.num_vertices() << ' ' << graph.num_edges() << '\n';
    for (const Edge& e : graph.edges())
        out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

Degeneracy degeneracy_order(const Graph& graph)
{
    const int n = graph.num_vertices();
    std::vector<int> deg(n);
    std::set<std::pair<int, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = graph.degree(v);
        queue.emplace(deg[v], v);
    }
    std::vector<char> removed(n, 0);
    Degeneracy out;
    out.order.reserve(n);
    while (!queue.empty()) {
        const auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        out.degeneracy = std::max(out.degeneracy, d);
        out.order.push_back(v);
        removed[v] = 1;
        for (const Incidence& inc : graph.incident(v)) {
            const Vertex w = inc.neighbor;
            if (removed[w])
                continue;
            queue.erase({deg[w], w});
            queue.emplace(--deg[w], w);
        }
    }
    return out;
}

namespace {

struct CycleCounter {
    const Graph& graph;
    Vertex target;
    int steps;
    std::uint64_t cap;
    std::uint64_t visited = 0;
    std::uint64_t found = 0;
    std::vector<char> on_path;

    void extend(Vertex x, int depth)
    {
        if (++visited > cap)
            throw CapExceeded("cycle search exceeded " + std::to_string(cap) + " nodes");
        for (const Incidence& inc : graph.incident(x)) {
            const Vertex y = inc.neighbor;
            if (y == target) {
                if (depth + 1 == steps)
                    ++found;
                continue;
            }
            if (on_path[y] || depth + 1 >= steps)
                continue;
            on_path[y] = 1;
            extend(y, depth + 1);
            on_path[y] = 0;
        }
    }
};

} // namespace

std::uint64_t cycles_through_edge(const Graph& graph, EdgeId edge, int length, std::uint64_t cap)
{
    if (edge < 0 || edge >= graph.num_edges())
        throw std::out_of_range("edge index out of range");
    if (length < 3)
        return 0;
    const auto [u, v] = graph.edge(edge);
    // count paths v -> u with length-1 edges avoiding u until the last step
    CycleCounter counter{graph, u, length - 1, cap, 0, 0, std::vector<char>(graph.num_vertices(), 0)};
    counter.on_path[v] = 1;
    counter.extend(v, 0);
    return counter.found;
}

double degenerate_cycle_bound(int n, int degeneracy, int max_degree)
{
    double binom = 1.0;
    for (int k = 1; k <= n; ++k)
        binom = binom * (n + k) / k;
    return 2.0 * binom * std::pow(static_cast<double>(degeneracy) * max_degree, n);
}

} // namespace focus::aec
