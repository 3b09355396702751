#pragma once

#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "focus/aec/coloring.hpp"

namespace focus::aec {

/// A cycle in canonical form: the lexicographically smallest rotation or
/// reflection of its vertex sequence. edges[k] joins vertices[k] and
/// vertices[k+1 mod L]; the fixed adjacent pair is edges[0], edges[1].
struct CycleFlaw {
    std::vector<Vertex> vertices;
    std::vector<EdgeId> edges;

    std::size_t length() const noexcept { return vertices.size(); }
    EdgeId e1() const { return edges[0]; }
    EdgeId e2() const { return edges[1]; }

    friend bool operator==(const CycleFlaw& a, const CycleFlaw& b) { return a.vertices == b.vertices; }
    /// Flaw order: shorter first, then canonical vertex sequence.
    friend std::strong_ordering operator<=>(const CycleFlaw& a, const CycleFlaw& b)
    {
        if (auto c = a.vertices.size() <=> b.vertices.size(); c != 0)
            return c;
        return a.vertices <=> b.vertices;
    }
};

/// Builds the canonical flaw for a closed vertex sequence of `graph`.
CycleFlaw make_cycle(const Graph& graph, std::span<const Vertex> vertices);

/// The cycle through `edge` alternating between the edge's color and `other`, if
/// the 2-colored component containing `edge` is a cycle.
std::optional<std::vector<Vertex>> trace_bichromatic(const EdgeColoring& coloring, EdgeId edge, Color other);

/// All bichromatic cycles of length >= 6, sorted. With `restrict_to`, only those
/// using at least one listed edge.
std::vector<CycleFlaw> find_flaws(const EdgeColoring& coloring,
                                  std::optional<std::span<const EdgeId>> restrict_to = std::nullopt);

/// The least flaw of find_flaws, without building the whole list.
std::optional<CycleFlaw> least_flaw(const EdgeColoring& coloring,
                                    std::optional<std::span<const EdgeId>> restrict_to = std::nullopt);

bool is_bichromatic(const EdgeColoring& coloring, const CycleFlaw& flaw);

} // namespace focus::aec
