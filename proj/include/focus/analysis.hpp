#pragma once

#include <vector>

#include "focus/instance.hpp"

namespace focus {

/// Directed graph on flaw indices. Also used for the user-supplied supergraph R.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(int num_vertices) : out_(num_vertices) {}

    int size() const noexcept { return static_cast<int>(out_.size()); }
    void add_arc(FlawId from, FlawId to);
    bool has_arc(FlawId from, FlawId to) const;
    /// Gamma(i), ascending.
    const FlawSet& neighbors(FlawId i) const { return out_[i]; }

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    std::vector<FlawSet> out_;
};

/// i -> j iff some arc s -i-> t has f_j present in t and (i == j or f_j absent from s).
Digraph causality_digraph(const ExplicitInstance& instance);

/// nu_i: the distribution reached by drawing s from mu restricted to f_i and addressing f_i.
std::vector<double> flaw_pushforward(const ExplicitInstance& instance, FlawId i);

struct FlawCharge {
    double distortion; // d_i = max_t nu_i(t) / mu(t), at least 1
    double charge;     // gamma_i = d_i * mu(f_i)
};

/// Throws std::out_of_range for an unknown flaw index.
FlawCharge flaw_charge(const ExplicitInstance& instance, FlawId i);

/// max_t |nu_i(t) - mu(t)|. The kernel regenerates mu at f_i iff this is within tolerance.
double regeneration_deviation(const ExplicitInstance& instance, FlawId i);

inline bool regenerates(const ExplicitInstance& instance, FlawId i, double tol = kDefaultTolerance)
{
    return regeneration_deviation(instance, i) <= tol;
}

struct AtomicityViolation {
    FlawId flaw;
    StateId target;
    std::vector<StateId> sources;

    friend bool operator==(const AtomicityViolation&, const AtomicityViolation&) = default;
};

/// Every (i, t) reached by more than one source state of f_i. Empty iff atomic.
std::vector<AtomicityViolation> check_atomicity(const ExplicitInstance& instance);

/// Same action sets, with rho_i(s, t) = mu(t) / mu(A(i, s)).
ExplicitInstance harmonic_kernel(const ExplicitInstance& instance);

/// Union of U(s) over states with positive theta.
FlawSet span(const ExplicitInstance& instance);

} // namespace focus
