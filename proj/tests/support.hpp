#pragma once

// Test-only helpers: instance builders and brute-force oracles written directly
// from the definitions, independent of the library's own algorithms.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "focus/explicit_walk.hpp"
#include "focus/instance.hpp"
#include "focus/rng.hpp"

namespace focus::testing {

inline std::string data_path(const std::string& name)
{
    return std::string(FOCUS_TEST_DATA) + "/" + name;
}

inline ExplicitInstance instance_from(const std::string& text)
{
    std::istringstream in(text);
    return parse_instance(in);
}

struct Event {
    std::vector<int> vars;
    std::vector<int> values;
};

/// Independent bits with Pr[bit b = 1] = p1[b]; flaw k holds when its variables
/// take the listed values and is addressed by redrawing those variables from the
/// product measure. theta = mu unless a start state is given.
inline ExplicitInstance product_instance(const std::vector<double>& p1, const std::vector<Event>& events,
                                         int start_state = -1)
{
    const int bits = static_cast<int>(p1.size());
    const int n = 1 << bits;
    auto bit = [](int s, int b) { return (s >> b) & 1; };
    auto prob = [&](int s, const std::vector<int>& vars) {
        double p = 1.0;
        for (int b : vars)
            p *= bit(s, b) ? p1[b] : 1.0 - p1[b];
        return p;
    };
    std::vector<int> all(bits);
    for (int b = 0; b < bits; ++b)
        all[b] = b;

    InstanceSpec spec;
    spec.num_states = n;
    for (int s = 0; s < n; ++s) {
        spec.weight.push_back(prob(s, all));
        spec.theta.push_back(start_state < 0 ? prob(s, all) : (s == start_state ? 1.0 : 0.0));
    }
    for (std::size_t k = 0; k < events.size(); ++k) {
        const Event& ev = events[k];
        FlawSpec f{"E" + std::to_string(k), {}, 0};
        for (int s = 0; s < n; ++s) {
            bool holds = true;
            for (std::size_t j = 0; j < ev.vars.size(); ++j)
                holds = holds && bit(s, ev.vars[j]) == ev.values[j];
            if (holds)
                f.members.push_back(s);
        }
        for (int s : f.members) {
            for (int t = 0; t < n; ++t) {
                bool same_outside = true;
                for (int b = 0; b < bits; ++b)
                    if (std::find(ev.vars.begin(), ev.vars.end(), b) == ev.vars.end() && bit(s, b) != bit(t, b))
                        same_outside = false;
                if (same_outside)
                    spec.arcs.push_back({static_cast<FlawId>(k), s, t, prob(t, ev.vars), 0});
            }
        }
        spec.flaws.push_back(std::move(f));
    }
    return ExplicitInstance(std::move(spec));
}

/// Random instance with n states and m flaws. Action sets are random subsets;
/// probabilities random. Not atomic or regenerating in general.
inline ExplicitInstance random_instance(Rng& rng, int n, int m, bool uniform_theta = true)
{
    InstanceSpec spec;
    spec.num_states = n;
    for (int s = 0; s < n; ++s) {
        spec.weight.push_back(0.5 + uniform01(rng));
        spec.theta.push_back(uniform_theta ? 1.0 : (uniform01(rng) < 0.5 ? uniform01(rng) : 0.0));
    }
    if (!uniform_theta)
        spec.theta[uniform_below(rng, n)] = 1.0;
    for (int i = 0; i < m; ++i) {
        FlawSpec f{"f" + std::to_string(i), {}, 0};
        for (int s = 0; s < n; ++s)
            if (uniform01(rng) < 0.4)
                f.members.push_back(s);
        if (f.members.empty())
            f.members.push_back(static_cast<int>(uniform_below(rng, n)));
        for (int s : f.members) {
            std::vector<int> targets;
            for (int t = 0; t < n; ++t)
                if (uniform01(rng) < 0.35)
                    targets.push_back(t);
            if (targets.empty() || (targets.size() == 1 && targets[0] == s))
                targets.push_back((s + 1) % n);
            std::vector<double> w;
            double total = 0.0;
            for (std::size_t k = 0; k < targets.size(); ++k) {
                w.push_back(0.2 + uniform01(rng));
                total += w.back();
            }
            for (std::size_t k = 0; k < targets.size(); ++k)
                spec.arcs.push_back({i, s, targets[k], w[k] / total, 0});
        }
        spec.flaws.push_back(std::move(f));
    }
    return ExplicitInstance(std::move(spec));
}

/// Causality straight from the definition.
inline std::vector<std::set<FlawId>> oracle_causality(const ExplicitInstance& inst)
{
    std::vector<std::set<FlawId>> out(inst.num_flaws());
    for (FlawId i = 0; i < inst.num_flaws(); ++i)
        for (StateId s : inst.flaw_members(i))
            for (const Action& a : inst.actions(i, s))
                for (FlawId j = 0; j < inst.num_flaws(); ++j)
                    if (inst.contains(j, a.target) && (i == j || !inst.contains(j, s)))
                        out[i].insert(j);
    return out;
}

/// Distortion from nu_i(t) = sum_s mu(s) rho_i(s, t) / mu(f_i).
inline double oracle_distortion(const ExplicitInstance& inst, FlawId i)
{
    std::vector<double> nu(inst.num_states(), 0.0);
    double mass = 0.0;
    for (StateId s : inst.flaw_members(i))
        mass += inst.mu(s);
    for (StateId s : inst.flaw_members(i))
        for (const Action& a : inst.actions(i, s))
            nu[a.target] += inst.mu(s) * a.prob / mass;
    double d = 0.0;
    for (StateId t = 0; t < inst.num_states(); ++t)
        d = std::max(d, nu[t] / inst.mu(t));
    return d;
}

/// Exact witness law by expanding every trajectory of length t without merging
/// anything. Recursive walks keep their frames in `stack`.
class WitnessOracle {
public:
    WitnessOracle(const ExplicitInstance& inst, Strategy strategy)
        : inst_(inst), strategy_(strategy), gamma_(oracle_causality(inst))
    {
    }

    std::map<std::vector<FlawId>, double> run(std::size_t t, double& halt)
    {
        result_.clear();
        halt_ = 0.0;
        for (StateId s = 0; s < inst_.num_states(); ++s)
            if (inst_.theta(s) > 0.0)
                expand(s, {}, {}, inst_.theta(s), t);
        halt = halt_;
        return result_;
    }

private:
    std::optional<FlawId> choose(StateId s, std::vector<FlawId>& stack) const
    {
        if (strategy_ == Strategy::recursive) {
            while (!stack.empty()) {
                for (FlawId j = 0; j < inst_.num_flaws(); ++j)
                    if (inst_.contains(j, s) && gamma_[stack.back()].count(j))
                        return j;
                stack.pop_back();
            }
        }
        for (FlawId j = 0; j < inst_.num_flaws(); ++j)
            if (inst_.contains(j, s))
                return j;
        return std::nullopt;
    }

    void expand(StateId s, std::vector<FlawId> stack, std::vector<FlawId> prefix, double p, std::size_t left)
    {
        if (left == 0) {
            result_[prefix] += p;
            return;
        }
        const auto f = choose(s, stack);
        if (!f) {
            halt_ += p;
            return;
        }
        prefix.push_back(*f);
        if (strategy_ == Strategy::recursive)
            stack.push_back(*f);
        for (const Action& a : inst_.actions(*f, s))
            expand(a.target, stack, prefix, p * a.prob, left - 1);
    }

    const ExplicitInstance& inst_;
    Strategy strategy_;
    std::vector<std::set<FlawId>> gamma_;
    std::map<std::vector<FlawId>, double> result_;
    double halt_ = 0.0;
};

} // namespace focus::testing
