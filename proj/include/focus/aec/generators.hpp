#pragma once

#include <cstdint>

#include "focus/aec/graph.hpp"

namespace focus::aec {

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int leaves);

/// Random tree with maximum degree at most max_degree (>= 2).
Graph random_tree(int n, int max_degree, std::uint64_t seed);

/// Random 2-degenerate series-parallel graph: each new vertex attaches to both
/// ends of an existing edge (or to one vertex), respecting max_degree.
Graph random_series_parallel(int n, int max_degree, std::uint64_t seed);

/// Random planar triangulation grown by stacking vertices into faces, followed by
/// random edge flips; degrees stay at most max_degree (>= 6). Degeneracy <= 5.
Graph random_planar_triangulation(int n, int max_degree, std::uint64_t seed);

/// G(n, p) with edges that would exceed max_degree skipped.
Graph random_bounded_gnp(int n, double p, int max_degree, std::uint64_t seed);

} // namespace focus::aec
