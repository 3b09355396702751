#include "focus/explicit_walk.hpp"

#include <algorithm>
#include <stdexcept>

namespace focus {

std::string_view to_string(Strategy s) noexcept
{
    return s == Strategy::simple ? "simple" : "recursive";
}

Strategy parse_strategy(std::string_view name)
{
    if (name == "simple")
        return Strategy::simple;
    if (name == "recursive")
        return Strategy::recursive;
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

ExplicitWalkProblem::ExplicitWalkProblem(ExplicitInstance instance)
    : ExplicitWalkProblem(instance, causality_digraph(instance))
{
}

ExplicitWalkProblem::ExplicitWalkProblem(ExplicitInstance instance, Digraph dependency, std::vector<int> order_key)
    : instance_(std::move(instance)), dependency_(std::move(dependency)), order_key_(std::move(order_key))
{
    const int m = instance_.num_flaws();
    if (dependency_.size() != m)
        throw std::invalid_argument("dependency digraph must have one vertex per flaw");
    if (order_key_.empty()) {
        order_key_.resize(m);
        for (int i = 0; i < m; ++i)
            order_key_[i] = i;
    }
    if (static_cast<int>(order_key_.size()) != m)
        throw std::invalid_argument("order key must have one entry per flaw");
    auto sorted = order_key_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("order keys must be distinct");
}

StateId ExplicitWalkProblem::sample_initial(Rng& rng) const
{
    return static_cast<StateId>(sample_index(rng, instance_.theta()));
}

std::optional<FlawId> ExplicitWalkProblem::least_present(StateId s) const
{
    std::optional<FlawId> best;
    for (FlawId i = 0; i < instance_.num_flaws(); ++i)
        if (instance_.contains(i, s) && (!best || order_key_[i] < order_key_[*best]))
            best = i;
    return best;
}

std::optional<FlawId> ExplicitWalkProblem::least_present_near(StateId s, FlawId i) const
{
    std::optional<FlawId> best;
    for (FlawId j : dependency_.neighbors(i))
        if (instance_.contains(j, s) && (!best || order_key_[j] < order_key_[*best]))
            best = j;
    return best;
}

void ExplicitWalkProblem::address(FlawId i, StateId& s, Rng& rng) const
{
    const auto acts = instance_.actions(i, s);
    if (acts.empty())
        throw std::logic_error("addressed flaw '" + instance_.flaw_name(i) + "' which is absent from state " +
                               std::to_string(s));
    std::vector<double> weights;
    weights.reserve(acts.size());
    for (const Action& a : acts)
        weights.push_back(a.prob);
    s = acts[sample_index(rng, weights)].target;
}

FlawSequence Trajectory::witness() const
{
    FlawSequence out;
    out.reserve(steps.size());
    for (const auto& step : steps)
        out.push_back(step.flaw);
    return out;
}

Trajectory run_walk(const ExplicitWalkProblem& problem, Strategy strategy, std::uint64_t seed, std::uint64_t max_steps)
{
    Rng rng(seed);
    Trajectory traj;
    StateId state = problem.sample_initial(rng);
    traj.start = state;
    const auto stats = walk_from(problem, state, strategy, rng, max_steps,
                                 [&](FlawId f, StateId s) { traj.steps.push_back({f, s}); });
    traj.capped = stats.capped;
    return traj;
}

} // namespace focus
