#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "focus/instance.hpp"
#include "focus/rng.hpp"

namespace focus::verify {

struct ForestNode {
    FlawId label;
    std::vector<ForestNode> children;

    friend bool operator==(const ForestNode& a, const ForestNode& b);
    friend std::strong_ordering operator<=>(const ForestNode& a, const ForestNode& b);
};

/// Unordered rooted forest with flaw labels. Kept canonical (siblings sorted by
/// label, which is total since sibling labels are distinct), so equality of
/// unordered forests is plain member-wise equality.
struct LabeledForest {
    std::vector<ForestNode> roots;
    bool truncated = false; // sampler hit its depth cap

    std::size_t vertex_count() const noexcept;
    std::size_t depth() const noexcept; // 0 for the empty forest, 1 for roots only

    friend bool operator==(const LabeledForest& a, const LabeledForest& b);
    friend std::strong_ordering operator<=>(const LabeledForest& a, const LabeledForest& b);
};

/// Sorts siblings recursively.
void canonicalize(LabeledForest& forest);

/// "{}" for the empty forest; otherwise space-separated trees in the form
/// label or label(child child ...).
std::string to_string(const LabeledForest& forest);

/// Throws std::invalid_argument unless root labels are distinct and form a member
/// of `roots`, and every vertex's children have distinct labels forming a member
/// of lists[label].
void check_forest(const LabeledForest& forest, const SetFamily& roots, const std::vector<SetFamily>& lists);

/// Probability that the branching process emits exactly `forest`:
/// (sum_{S in Roots} Q(S))^{-1} * prod_v psi_v / sum_{S in List(v)} Q(S), Q(S) = prod psi.
double forest_probability(const LabeledForest& forest, std::span<const double> psi, const SetFamily& roots,
                          const std::vector<SetFamily>& lists);

inline constexpr std::size_t kDefaultForestVertexCap = 1'000'000;

/// One draw from the branching process. Each child set is drawn directly from
/// List(label) with probability proportional to Q(S). Vertices at depth
/// `depth_cap` (roots have depth 0) are not expanded; if one would have had
/// children the result is flagged truncated.
LabeledForest sample_forest(Rng& rng, std::span<const double> psi, const SetFamily& roots,
                            const std::vector<SetFamily>& lists, std::size_t depth_cap,
                            std::size_t vertex_cap = kDefaultForestVertexCap);

LabeledForest sample_forest(std::uint64_t seed, std::span<const double> psi, const SetFamily& roots,
                            const std::vector<SetFamily>& lists, std::size_t depth_cap);

inline constexpr std::size_t kDefaultForestCap = 1'000'000;

/// Every valid forest with exactly t vertices, in canonical order. Throws
/// CapExceeded past `cap` forests.
std::vector<LabeledForest> enumerate_forests(std::size_t t, const SetFamily& roots,
                                             const std::vector<SetFamily>& lists,
                                             std::size_t cap = kDefaultForestCap);

struct ForestWeightSum {
    double lhs = 0.0; // sum over t-vertex forests of prod gamma_label
    double rhs = 0.0; // (max zeta)^t * sum_{S in Roots} Q(S)
    bool holds(double tol = kDefaultTolerance) const noexcept { return lhs <= rhs + tol; }
};

ForestWeightSum enumerate_forest_weight_sum(std::size_t t, std::span<const double> gamma,
                                            std::span<const double> psi, const SetFamily& roots,
                                            const std::vector<SetFamily>& lists,
                                            std::size_t cap = kDefaultForestCap);

} // namespace focus::verify
