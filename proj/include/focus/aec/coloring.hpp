#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "focus/aec/graph.hpp"

namespace focus::aec {

using Color = int;
inline constexpr Color kUncolored = 0;

/// Edge colors in 1..q with 0 for uncolored, plus a per-vertex color table so
/// "which edge at v has color c" is O(1). Always proper: assign refuses a color
/// already used at either endpoint.
class EdgeColoring {
public:
    EdgeColoring(const Graph& graph, int q);
    /// Throws std::invalid_argument if colors are out of range or improper.
    static EdgeColoring from_colors(const Graph& graph, int q, std::span<const Color> colors);

    const Graph& graph() const noexcept { return *graph_; }
    int q() const noexcept { return q_; }
    Color color(EdgeId e) const { return colors_[e]; }
    std::span<const Color> colors() const noexcept { return colors_; }
    bool complete() const noexcept { return uncolored_ == 0; }

    /// Edge at v colored c, or -1.
    EdgeId edge_with_color(Vertex v, Color c) const { return table_[static_cast<std::size_t>(v) * (q_ + 1) + c]; }

    void assign(EdgeId e, Color c);
    void clear(EdgeId e);

    friend bool operator==(const EdgeColoring& a, const EdgeColoring& b) { return a.colors_ == b.colors_; }

private:
    EdgeId& slot(Vertex v, Color c) { return table_[static_cast<std::size_t>(v) * (q_ + 1) + c]; }

    const Graph* graph_;
    int q_;
    int uncolored_;
    std::vector<Color> colors_;
    std::vector<EdgeId> table_;
};

/// Colors that can go on `edge` without breaking properness or closing a
/// bichromatic 4-cycle; the edge's own color is ignored. Ascending. Throws
/// std::logic_error if more than 2(Delta-1) colors are excluded.
std::vector<Color> four_available(const EdgeColoring& coloring, EdgeId edge);

/// Colors edges in index order, each with the highest 4-available color.
/// Requires q >= 2(Delta-1) + 1.
EdgeColoring initial_coloring(const Graph& graph, int q);

struct Violation {
    enum class Kind { improper, bichromatic_cycle };
    Kind kind = Kind::improper;
    Vertex vertex = -1;          // improper: the shared vertex
    std::vector<Vertex> cycle;   // bichromatic_cycle: closed vertex sequence
    Color first = 0;
    Color second = 0;
};

std::string describe(const Violation& v);

/// First properness violation or bichromatic cycle of any length. Colors are
/// positive integers; throws std::invalid_argument if some edge is uncolored.
std::optional<Violation> verify_acyclic_coloring(const Graph& graph, std::span<const Color> colors);

/// Complete, proper and free of bichromatic 4-cycles.
bool in_omega(const EdgeColoring& coloring);

} // namespace focus::aec
