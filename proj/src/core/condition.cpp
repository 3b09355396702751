#include "focus/condition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "focus/errors.hpp"

namespace focus {

namespace {

void sort_family(SetFamily& family)
{
    std::sort(family.begin(), family.end(), [](const FlawSet& a, const FlawSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
}

void check_enumerable(const FlawSet& s)
{
    if (s.size() > kMaxEnumeratedSetSize)
        throw CapExceeded("refusing to enumerate subsets of a " + std::to_string(s.size()) + "-element set");
}

void extend_independent(const Digraph& r, const FlawSet& s, std::size_t next, FlawSet& current, SetFamily& out)
{
    out.push_back(current);
    for (std::size_t k = next; k < s.size(); ++k) {
        const FlawId cand = s[k];
        bool free = true;
        for (FlawId chosen : current)
            if (r.has_arc(cand, chosen) && r.has_arc(chosen, cand)) {
                free = false;
                break;
            }
        if (!free)
            continue;
        current.push_back(cand);
        extend_independent(r, s, k + 1, current, out);
        current.pop_back();
    }
}

} // namespace

SetFamily powerset(const FlawSet& s)
{
    check_enumerable(s);
    SetFamily out;
    const std::size_t n = s.size();
    out.reserve(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        FlawSet subset;
        for (std::size_t k = 0; k < n; ++k)
            if (mask >> k & 1)
                subset.push_back(s[k]);
        out.push_back(std::move(subset));
    }
    sort_family(out);
    return out;
}

SetFamily independent_subsets(const Digraph& r, const FlawSet& s)
{
    check_enumerable(s);
    FlawSet sorted = s;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    SetFamily out;
    FlawSet current;
    extend_independent(r, sorted, 0, current, out);
    sort_family(out);
    return out;
}

double family_weight(const SetFamily& family, std::span<const double> psi)
{
    double total = 0.0;
    for (const FlawSet& set : family) {
        double prod = 1.0;
        for (FlawId j : set) {
            if (j < 0 || static_cast<std::size_t>(j) >= psi.size())
                throw std::out_of_range("flaw index " + std::to_string(j) + " out of range in set family");
            prod *= psi[j];
        }
        total += prod;
    }
    return total;
}

ConditionValues evaluate_condition(std::span<const double> gamma, std::span<const double> psi,
                                   const std::vector<SetFamily>& lists)
{
    const std::size_t m = gamma.size();
    if (psi.size() != m)
        throw std::invalid_argument("expected " + std::to_string(m) + " psi values, got " + std::to_string(psi.size()));
    if (lists.size() != m)
        throw std::invalid_argument("expected one list family per flaw");
    for (std::size_t i = 0; i < m; ++i)
        if (!(psi[i] > 0.0) || !std::isfinite(psi[i]))
            throw std::invalid_argument("psi[" + std::to_string(i) + "] must be a positive finite number");

    ConditionValues out;
    out.zeta.resize(m);
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        out.zeta[i] = gamma[i] / psi[i] * family_weight(lists[i], psi);
        worst = std::max(worst, out.zeta[i]);
    }
    out.delta = 1.0 - worst;
    return out;
}

std::vector<SetFamily> neighborhood_families(const Digraph& r, FamilyKind kind)
{
    std::vector<SetFamily> out;
    out.reserve(r.size());
    for (FlawId i = 0; i < r.size(); ++i)
        out.push_back(kind == FamilyKind::powerset ? powerset(r.neighbors(i)) : independent_subsets(r, r.neighbors(i)));
    return out;
}

SetFamily root_family(const ExplicitInstance& instance, const Digraph& r, FamilyKind kind)
{
    const FlawSet sp = span(instance);
    return kind == FamilyKind::powerset ? powerset(sp) : independent_subsets(r, sp);
}

double max_theta_ratio(const ExplicitInstance& instance)
{
    double best = 0.0;
    for (StateId s = 0; s < instance.num_states(); ++s)
        best = std::max(best, instance.theta(s) / instance.mu(s));
    return best;
}

double min_theta_ratio(const ExplicitInstance& instance)
{
    double best = instance.theta(0) / instance.mu(0);
    for (StateId s = 1; s < instance.num_states(); ++s)
        best = std::min(best, instance.theta(s) / instance.mu(s));
    return best;
}

double compute_t0(const ExplicitInstance& instance, std::span<const double> psi, const SetFamily& roots)
{
    return std::log2(max_theta_ratio(instance)) + std::log2(family_weight(roots, psi));
}

ConditionReport analyze_condition(const ExplicitInstance& instance, std::span<const double> psi,
                                  const std::vector<SetFamily>& lists, const SetFamily& roots)
{
    ConditionReport report;
    std::vector<double> gamma;
    for (FlawId i = 0; i < instance.num_flaws(); ++i) {
        report.charges.push_back(flaw_charge(instance, i));
        gamma.push_back(report.charges.back().charge);
    }
    auto values = evaluate_condition(gamma, psi, lists);
    report.zeta = std::move(values.zeta);
    report.delta = values.delta;
    report.satisfied = values.satisfied();
    report.t0 = compute_t0(instance, psi, roots);
    return report;
}

} // namespace focus
