#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "focus/aec/cycles.hpp"
#include "focus/aec/params.hpp"
#include "focus/errors.hpp"
#include "focus/rng.hpp"

namespace focus::aec {

/// Uncolors every edge of the flaw except e1, e2 and recolors the rest in cycle
/// order starting next to e2, each uniformly from its current 4-available set.
void resample_cycle(EdgeColoring& coloring, const CycleFlaw& flaw, Rng& rng);

/// The unique coloring that resample_cycle could have started from: the colors
/// of e1 and e2 alternated around the cycle.
EdgeColoring reconstruct_previous(const EdgeColoring& after, const CycleFlaw& flaw);

/// The recursive walk over edge colorings. Flaws are bichromatic cycles of
/// length >= 6; two flaws are neighbors when they share an edge.
class AecProblem {
public:
    using State = EdgeColoring;
    using Flaw = CycleFlaw;

    AecProblem(const Graph& graph, int q, bool check_invariants = false);

    EdgeColoring sample_initial(Rng&) const { return initial_coloring(*graph_, q_); }
    std::optional<CycleFlaw> least_present(const EdgeColoring& s) const { return least_flaw(s); }
    std::optional<CycleFlaw> least_present_near(const EdgeColoring& s, const CycleFlaw& f) const
    {
        return least_flaw(s, std::span<const EdgeId>(f.edges));
    }
    void address(const CycleFlaw& f, EdgeColoring& s, Rng& rng) const;

private:
    const Graph* graph_;
    int q_;
    bool check_;
};

class StepCapExceeded : public CapExceeded {
public:
    explicit StepCapExceeded(std::uint64_t steps);
    std::uint64_t steps() const noexcept { return steps_; }

private:
    std::uint64_t steps_;
};

struct AecOptions {
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> max_steps; // default 100 |E| q
    bool check_invariants = false;          // re-check membership in Omega after every step
};

struct AecResult {
    std::vector<Color> colors;
    std::uint64_t steps = 0;
};

std::uint64_t default_step_cap(const Graph& graph, int q);

/// Acyclic edge coloring with params.q colors. Pure function of (graph, params,
/// seed). Throws StepCapExceeded, or std::logic_error if the result fails
/// verification.
AecResult aec_color(const Graph& graph, const AecParams& params, const AecOptions& options = {});

} // namespace focus::aec
