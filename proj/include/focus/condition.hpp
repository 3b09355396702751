#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "focus/analysis.hpp"
#include "focus/instance.hpp"

namespace focus {

/// Largest set whose subsets we are willing to list explicitly.
inline constexpr std::size_t kMaxEnumeratedSetSize = 24;

/// All subsets of s, ordered by size then lexicographically. Throws CapExceeded
/// beyond kMaxEnumeratedSetSize elements.
SetFamily powerset(const FlawSet& s);

/// Ind(S): subsets of s independent in the undirected graph joining i, j (i != j)
/// when both i -> j and j -> i are arcs of r. Includes the empty set; same order
/// as powerset().
SetFamily independent_subsets(const Digraph& r, const FlawSet& s);

/// sum over S in family of prod_{j in S} psi_j.
double family_weight(const SetFamily& family, std::span<const double> psi);

struct ConditionValues {
    std::vector<double> zeta;
    double delta = 0.0; // 1 - max zeta
    bool satisfied() const noexcept { return delta > 0.0; }
};

/// zeta_i = (gamma_i / psi_i) * sum_{S in lists[i]} prod_{j in S} psi_j.
/// Throws std::invalid_argument on a missing or nonpositive psi entry and
/// std::out_of_range on a flaw index outside [0, m).
ConditionValues evaluate_condition(std::span<const double> gamma, std::span<const double> psi,
                                   const std::vector<SetFamily>& lists);

enum class FamilyKind { powerset, independent };

/// List(i) = 2^{Gamma_R(i)} or Ind(Gamma_R(i)) for every flaw of r.
std::vector<SetFamily> neighborhood_families(const Digraph& r, FamilyKind kind);

/// Roots = 2^{span} or Ind(span).
SetFamily root_family(const ExplicitInstance& instance, const Digraph& r, FamilyKind kind);

/// Condition for the simple walk: lists are all subsets of each neighborhood.
inline ConditionValues evaluate_powerset_condition(std::span<const double> gamma, std::span<const double> psi,
                                                   const Digraph& r)
{
    return evaluate_condition(gamma, psi, neighborhood_families(r, FamilyKind::powerset));
}

/// Condition for the recursive walk: lists are the independent subsets of each neighborhood.
inline ConditionValues evaluate_independent_condition(std::span<const double> gamma, std::span<const double> psi,
                                                      const Digraph& r)
{
    return evaluate_condition(gamma, psi, neighborhood_families(r, FamilyKind::independent));
}

/// max theta(s) / mu(s) and min theta(s) / mu(s).
double max_theta_ratio(const ExplicitInstance& instance);
double min_theta_ratio(const ExplicitInstance& instance);

/// T0 = log2(max theta/mu) + log2(sum_{S in roots} prod psi).
double compute_t0(const ExplicitInstance& instance, std::span<const double> psi, const SetFamily& roots);

struct ConditionReport {
    std::vector<FlawCharge> charges;
    std::vector<double> zeta;
    double delta = 0.0;
    double t0 = 0.0;
    bool satisfied = false;
};

ConditionReport analyze_condition(const ExplicitInstance& instance, std::span<const double> psi,
                                  const std::vector<SetFamily>& lists, const SetFamily& roots);

} // namespace focus
