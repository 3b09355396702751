#include "focus/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace focus {

void Digraph::add_arc(FlawId from, FlawId to)
{
    auto& out = out_.at(from);
    const auto it = std::lower_bound(out.begin(), out.end(), to);
    if (it == out.end() || *it != to)
        out.insert(it, to);
}

bool Digraph::has_arc(FlawId from, FlawId to) const
{
    const auto& out = out_.at(from);
    return std::binary_search(out.begin(), out.end(), to);
}

Digraph causality_digraph(const ExplicitInstance& instance)
{
    const int m = instance.num_flaws();
    Digraph g(m);
    for (FlawId i = 0; i < m; ++i)
        for (StateId s : instance.flaw_members(i))
            for (const Action& a : instance.actions(i, s))
                for (FlawId j = 0; j < m; ++j)
                    if (instance.contains(j, a.target) && (i == j || !instance.contains(j, s)))
                        g.add_arc(i, j);
    return g;
}

namespace {

void check_flaw(const ExplicitInstance& instance, FlawId i)
{
    if (i < 0 || i >= instance.num_flaws())
        throw std::out_of_range("unknown flaw index " + std::to_string(i));
}

} // namespace

std::vector<double> flaw_pushforward(const ExplicitInstance& instance, FlawId i)
{
    check_flaw(instance, i);
    std::vector<double> nu(instance.num_states(), 0.0);
    const double mass = instance.flaw_measure(i);
    for (StateId s : instance.flaw_members(i))
        for (const Action& a : instance.actions(i, s))
            nu[a.target] += instance.mu(s) * a.prob / mass;
    return nu;
}

FlawCharge flaw_charge(const ExplicitInstance& instance, FlawId i)
{
    const auto nu = flaw_pushforward(instance, i);
    double d = 0.0;
    for (StateId t = 0; t < instance.num_states(); ++t)
        d = std::max(d, nu[t] / instance.mu(t));
    return {d, d * instance.flaw_measure(i)};
}

double regeneration_deviation(const ExplicitInstance& instance, FlawId i)
{
    const auto nu = flaw_pushforward(instance, i);
    double dev = 0.0;
    for (StateId t = 0; t < instance.num_states(); ++t)
        dev = std::max(dev, std::abs(nu[t] - instance.mu(t)));
    return dev;
}

std::vector<AtomicityViolation> check_atomicity(const ExplicitInstance& instance)
{
    std::vector<AtomicityViolation> out;
    for (FlawId i = 0; i < instance.num_flaws(); ++i) {
        std::map<StateId, std::vector<StateId>> sources;
        for (StateId s : instance.flaw_members(i))
            for (const Action& a : instance.actions(i, s))
                sources[a.target].push_back(s);
        for (auto& [t, from] : sources)
            if (from.size() > 1)
                out.push_back({i, t, std::move(from)});
    }
    return out;
}

ExplicitInstance harmonic_kernel(const ExplicitInstance& instance)
{
    InstanceSpec spec = instance.spec();
    spec.arcs.clear();
    for (FlawId i = 0; i < instance.num_flaws(); ++i) {
        for (StateId s : instance.flaw_members(i)) {
            const auto acts = instance.actions(i, s);
            double mass = 0.0;
            for (const Action& a : acts)
                mass += instance.mu(a.target);
            // the last probability absorbs rounding so each action set sums to exactly 1
            double assigned = 0.0;
            for (std::size_t k = 0; k < acts.size(); ++k) {
                const double p = k + 1 == acts.size() ? 1.0 - assigned : instance.mu(acts[k].target) / mass;
                assigned += p;
                spec.arcs.push_back({i, s, acts[k].target, p, 0});
            }
        }
    }
    return ExplicitInstance(std::move(spec));
}

FlawSet span(const ExplicitInstance& instance)
{
    FlawSet out;
    for (FlawId i = 0; i < instance.num_flaws(); ++i)
        for (StateId s : instance.flaw_members(i))
            if (instance.theta(s) > 0.0) {
                out.push_back(i);
                break;
            }
    return out;
}

} // namespace focus
