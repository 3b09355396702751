#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "focus/rng.hpp"

namespace focus {

enum class Strategy { simple, recursive };

std::string_view to_string(Strategy s) noexcept;
/// Accepts "simple" and "recursive"; throws std::invalid_argument otherwise.
Strategy parse_strategy(std::string_view name);

/// What a focused walk needs from a problem. The flaw order pi is baked into the
/// two selectors: least_present returns I_pi(U(s)), least_present_near returns
/// I_pi(U(s) ∩ Gamma_R(f)). address may only be called with a flaw present in s.
template <typename P>
concept WalkProblem = requires(const P& p, typename P::State& s, const typename P::State& cs,
                               const typename P::Flaw& f, Rng& rng) {
    { p.sample_initial(rng) } -> std::convertible_to<typename P::State>;
    { p.least_present(cs) } -> std::same_as<std::optional<typename P::Flaw>>;
    { p.least_present_near(cs, f) } -> std::same_as<std::optional<typename P::Flaw>>;
    p.address(f, s, rng);
};

/// Pops the recursive walk's frames whose neighborhood holds no present flaw and
/// returns the flaw chosen by the new top frame, if any. Afterwards `pending` is
/// canonical for `state`: two histories reaching equal (state, pending) behave alike.
template <WalkProblem P>
std::optional<typename P::Flaw> settle_pending(const P& problem, const typename P::State& state,
                                               std::vector<typename P::Flaw>& pending)
{
    while (!pending.empty()) {
        if (auto f = problem.least_present_near(state, pending.back()))
            return f;
        pending.pop_back();
    }
    return std::nullopt;
}

/// Flaw to address next, or nullopt at a sink. `pending` is the frame stack of the
/// recursive walk (the simple strategy never pushes to it).
template <WalkProblem P>
std::optional<typename P::Flaw> next_flaw(const P& problem, const typename P::State& state, Strategy strategy,
                                          std::vector<typename P::Flaw>& pending)
{
    if (strategy == Strategy::recursive)
        if (auto f = settle_pending(problem, state, pending))
            return f;
    return problem.least_present(state);
}

struct WalkStats {
    std::uint64_t steps = 0;
    bool capped = false; // stopped at max_steps with a flaw still present
};

/// Runs from `state` until a sink or max_steps addresses. on_step(flaw, state) is
/// called after every address with the resulting state.
template <WalkProblem P, typename OnStep>
WalkStats walk_from(const P& problem, typename P::State& state, Strategy strategy, Rng& rng,
                    std::uint64_t max_steps, OnStep&& on_step)
{
    std::vector<typename P::Flaw> pending;
    WalkStats stats;
    for (;;) {
        auto flaw = next_flaw(problem, std::as_const(state), strategy, pending);
        if (!flaw)
            return stats;
        if (stats.steps == max_steps) {
            stats.capped = true;
            return stats;
        }
        problem.address(*flaw, state, rng);
        ++stats.steps;
        on_step(std::as_const(*flaw), std::as_const(state));
        if (strategy == Strategy::recursive)
            pending.push_back(std::move(*flaw));
    }
}

template <WalkProblem P>
WalkStats walk_from(const P& problem, typename P::State& state, Strategy strategy, Rng& rng, std::uint64_t max_steps)
{
    return walk_from(problem, state, strategy, rng, max_steps, [](const auto&, const auto&) {});
}

} // namespace focus
