#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace focus::aec {

using Vertex = int;
using EdgeId = int;

struct Edge {
    Vertex u;
    Vertex v;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
    Vertex neighbor;
    EdgeId edge;
};

/// Simple undirected graph on vertices 0..n-1. Edges keep their input order and
/// orientation; incident lists are sorted by neighbor.
class Graph {
public:
    Graph() = default;
    /// Throws std::invalid_argument on loops, parallel edges or out-of-range endpoints.
    Graph(int num_vertices, std::vector<Edge> edges);

    int num_vertices() const noexcept { return n_; }
    int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const Incidence> incident(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const noexcept { return max_degree_; }
    std::optional<EdgeId> edge_between(Vertex a, Vertex b) const;
    Vertex other_end(EdgeId e, Vertex v) const { return edges_[e].u == v ? edges_[e].v : edges_[e].u; }

private:
    int n_ = 0;
    int max_degree_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> adj_;
};

/// Reads `p edge N M` followed by M lines `e U V` (1-based); `c` lines are comments.
/// Throws ParseError with the offending line.
Graph parse_graph(std::istream& in);
Graph load_graph(const std::string& path);
void write_graph(std::ostream& out, const Graph& graph);

struct Degeneracy {
    int degeneracy = 0;
    std::vector<Vertex> order; // removal order; orient each edge away from the earlier vertex
};

/// Repeatedly removes a vertex of minimum current degree (smallest index on ties).
Degeneracy degeneracy_order(const Graph& graph);

inline constexpr std::uint64_t kDefaultCycleSearchCap = 50'000'000;

/// Number of simple cycles of exactly `length` edges through `edge`, by DFS.
/// Throws CapExceeded after `cap` search nodes.
std::uint64_t cycles_through_edge(const Graph& graph, EdgeId edge, int length,
                                  std::uint64_t cap = kDefaultCycleSearchCap);

/// 2 * C(2n, n) * (d * Delta)^n: bound on cycles of length 2n+2 through an edge of
/// a d-degenerate graph of maximum degree Delta.
double degenerate_cycle_bound(int n, int degeneracy, int max_degree);

} // namespace focus::aec
