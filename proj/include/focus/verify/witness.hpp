#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "focus/explicit_walk.hpp"
#include "focus/verify/report.hpp"

namespace focus::verify {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Exact law of W_t: the first t flaws addressed, or halt when a sink came first.
struct WitnessDistribution {
    std::size_t length = 0;
    std::map<FlawSequence, double> entries;
    double halt_mass = 0.0;

    double total() const noexcept;
};

/// Forward dynamic program over (witness prefix, state, pending frames). Joint
/// entries with equal keys are merged since their futures coincide. Throws
/// CapExceeded when a layer holds more than `cap` joint entries.
WitnessDistribution witness_distribution(const ExplicitWalkProblem& problem, Strategy strategy, std::size_t t,
                                         std::size_t cap = kDefaultEnumerationCap);

/// Pr[W_t = W] <= xi * prod gamma_{w_k} for every W with positive probability,
/// xi = max theta/mu.
Report verify_witness_bound(const ExplicitWalkProblem& problem, Strategy strategy, std::size_t t,
                            double tol = kDefaultTolerance);

/// For an atomic instance whose kernel regenerates mu at every flaw: the action
/// sets carry mass mu(s)/mu(f_i), the kernel is harmonic, and the action sets of
/// each flaw cover the state space. Throws PreconditionError when the instance is
/// not atomic or does not regenerate.
Report verify_atomic_oracle(const ExplicitInstance& instance, double tol = kDefaultTolerance);

/// alpha * prod mu(f_{w_k}) <= Pr[W_t = W] <= beta * prod mu(f_{w_k}) with alpha, beta
/// the min and max of theta/mu. Same preconditions as verify_atomic_oracle.
Report verify_trajectory_window(const ExplicitWalkProblem& problem, Strategy strategy, std::size_t t,
                                double tol = kDefaultTolerance);

/// "f1,f2,..." using the instance's flaw names.
std::string format_sequence(const ExplicitInstance& instance, const FlawSequence& w);

} // namespace focus::verify
