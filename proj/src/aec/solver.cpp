#include "focus/aec/solver.hpp"

#include <stdexcept>

#include "focus/walk.hpp"

namespace focus::aec {

void resample_cycle(EdgeColoring& coloring, const CycleFlaw& flaw, Rng& rng)
{
    if (!is_bichromatic(coloring, flaw))
        throw std::invalid_argument("resample_cycle needs a bichromatic cycle");
    for (std::size_t k = 2; k < flaw.length(); ++k)
        coloring.clear(flaw.edges[k]);
    for (std::size_t k = 2; k < flaw.length(); ++k) {
        const auto avail = four_available(coloring, flaw.edges[k]);
        if (avail.empty())
            throw std::logic_error("no 4-available color while resampling");
        coloring.assign(flaw.edges[k], avail[uniform_below(rng, avail.size())]);
    }
}

EdgeColoring reconstruct_previous(const EdgeColoring& after, const CycleFlaw& flaw)
{
    EdgeColoring before = after;
    const Color a = after.color(flaw.e1());
    const Color b = after.color(flaw.e2());
    for (std::size_t k = 2; k < flaw.length(); ++k)
        before.clear(flaw.edges[k]);
    for (std::size_t k = 2; k < flaw.length(); ++k)
        before.assign(flaw.edges[k], k % 2 == 0 ? a : b);
    return before;
}

AecProblem::AecProblem(const Graph& graph, int q, bool check_invariants)
    : graph_(&graph), q_(q), check_(check_invariants)
{
}

void AecProblem::address(const CycleFlaw& f, EdgeColoring& s, Rng& rng) const
{
    resample_cycle(s, f, rng);
    if (check_ && !in_omega(s))
        throw std::logic_error("resampling left the coloring outside Omega");
}

static_assert(WalkProblem<AecProblem>);

StepCapExceeded::StepCapExceeded(std::uint64_t steps)
    : CapExceeded("step cap exceeded after " + std::to_string(steps) + " steps"), steps_(steps)
{
}

std::uint64_t default_step_cap(const Graph& graph, int q)
{
    return 100 * static_cast<std::uint64_t>(graph.num_edges()) * static_cast<std::uint64_t>(q);
}

AecResult aec_color(const Graph& graph, const AecParams& params, const AecOptions& options)
{
    const AecProblem problem(graph, params.q, options.check_invariants);
    Rng rng(options.seed);
    EdgeColoring state = problem.sample_initial(rng);
    const std::uint64_t cap = options.max_steps.value_or(default_step_cap(graph, params.q));
    const WalkStats stats = walk_from(problem, state, Strategy::recursive, rng, cap);
    if (stats.capped)
        throw StepCapExceeded(stats.steps);
    if (const auto bad = verify_acyclic_coloring(graph, state.colors()))
        throw std::logic_error("solver produced an invalid coloring: " + describe(*bad));
    return {std::vector<Color>(state.colors().begin(), state.colors().end()), stats.steps};
}

} // namespace focus::aec
