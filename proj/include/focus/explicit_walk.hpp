#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "focus/analysis.hpp"
#include "focus/instance.hpp"
#include "focus/walk.hpp"

namespace focus {

/// Walk adapter over an explicit instance. Gamma_R defaults to the causality
/// digraph and pi to declaration order; I_pi(S) is the member with the smallest key.
class ExplicitWalkProblem {
public:
    using State = StateId;
    using Flaw = FlawId;

    explicit ExplicitWalkProblem(ExplicitInstance instance);
    /// order_key[i] is flaw i's position under pi; keys must be distinct. Empty means 0..m-1.
    ExplicitWalkProblem(ExplicitInstance instance, Digraph dependency, std::vector<int> order_key = {});

    StateId sample_initial(Rng& rng) const;
    FlawSet flaws_present(StateId s) const { return instance_.present(s); }
    const FlawSet& neighbors(FlawId i) const { return dependency_.neighbors(i); }
    int order_key(FlawId i) const { return order_key_[i]; }

    std::optional<FlawId> least_present(StateId s) const;
    std::optional<FlawId> least_present_near(StateId s, FlawId i) const;
    void address(FlawId i, StateId& s, Rng& rng) const;

    const ExplicitInstance& instance() const noexcept { return instance_; }
    const Digraph& dependency() const noexcept { return dependency_; }

private:
    ExplicitInstance instance_;
    Digraph dependency_;
    std::vector<int> order_key_;
};

static_assert(WalkProblem<ExplicitWalkProblem>);

using FlawSequence = std::vector<FlawId>;

struct TrajectoryStep {
    FlawId flaw;
    StateId state; // state after the step

    friend bool operator==(const TrajectoryStep&, const TrajectoryStep&) = default;
};

struct Trajectory {
    StateId start = 0;
    std::vector<TrajectoryStep> steps;
    bool capped = false;

    /// The flaws addressed, in order.
    FlawSequence witness() const;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

Trajectory run_walk(const ExplicitWalkProblem& problem, Strategy strategy, std::uint64_t seed, std::uint64_t max_steps);

} // namespace focus
