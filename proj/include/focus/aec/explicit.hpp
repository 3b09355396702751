#pragma once

#include <cstddef>
#include <vector>

#include "focus/aec/cycles.hpp"
#include "focus/instance.hpp"

namespace focus::aec {

inline constexpr std::size_t kDefaultExplicitStateCap = 200'000;

/// Enumerates every coloring in Omega (proper, no bichromatic 4-cycle) of a small
/// graph with q colors, in lexicographic order of the color vector.
std::vector<std::vector<Color>> enumerate_omega(const Graph& graph, int q,
                                                std::size_t cap = kDefaultExplicitStateCap);

/// Every outcome of resample_cycle on (coloring, flaw) with its probability.
std::vector<std::pair<std::vector<Color>, double>> resample_outcomes(const EdgeColoring& coloring,
                                                                     const CycleFlaw& flaw);

/// Even simple cycles of length >= 6 in the graph, canonical and sorted.
std::vector<CycleFlaw> even_cycles(const Graph& graph, std::size_t cap = kDefaultExplicitStateCap);

/// The AEC walk as an explicit instance: states are Omega, one flaw per even
/// cycle that can be bichromatic, arcs are the resampling outcomes, mu uniform
/// and theta the point mass on the initial coloring. Flaw names are "C:v0-v1-...".
ExplicitInstance to_explicit_instance(const Graph& graph, int q, std::size_t cap = kDefaultExplicitStateCap);

} // namespace focus::aec
