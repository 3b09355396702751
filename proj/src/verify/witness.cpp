#include "focus/verify/witness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <tuple>

#include "focus/analysis.hpp"
#include "focus/condition.hpp"
#include "focus/errors.hpp"

namespace focus::verify {

void Report::expect_le(std::string name, double lhs, double rhs, double tol)
{
    assertions.push_back({std::move(name), lhs, rhs, rhs - lhs, lhs <= rhs + tol});
}

void Report::expect_eq(std::string name, double lhs, double rhs, double tol)
{
    const double gap = std::abs(lhs - rhs);
    assertions.push_back({std::move(name), lhs, rhs, -gap, gap <= tol});
}

bool Report::passed() const noexcept
{
    return failures() == 0;
}

std::size_t Report::failures() const noexcept
{
    return static_cast<std::size_t>(
        std::count_if(assertions.begin(), assertions.end(), [](const Assertion& a) { return !a.pass; }));
}

double Report::worst_slack() const noexcept
{
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& a : assertions)
        worst = std::min(worst, a.slack);
    return worst;
}

void Report::write(std::ostream& out) const
{
    const auto flags = out.flags();
    const auto precision = out.precision(12);
    for (const auto& a : assertions)
        out << a.name << ' ' << a.lhs << ' ' << a.rhs << ' ' << a.slack << ' ' << (a.pass ? "PASS" : "FAIL") << '\n';
    out.precision(precision);
    out.flags(flags);
}

double WitnessDistribution::total() const noexcept
{
    double sum = halt_mass;
    for (const auto& [w, p] : entries)
        sum += p;
    return sum;
}

namespace {

struct JointKey {
    FlawSequence witness;
    StateId state;
    std::vector<FlawId> pending;

    friend auto operator<=>(const JointKey&, const JointKey&) = default;
};

} // namespace

WitnessDistribution witness_distribution(const ExplicitWalkProblem& problem, Strategy strategy, std::size_t t,
                                         std::size_t cap)
{
    const ExplicitInstance& inst = problem.instance();
    WitnessDistribution dist;
    dist.length = t;

    std::map<JointKey, double> layer;
    for (StateId s = 0; s < inst.num_states(); ++s)
        if (inst.theta(s) > 0.0)
            layer[{{}, s, {}}] += inst.theta(s);

    for (std::size_t step = 0; step < t; ++step) {
        std::map<JointKey, double> next;
        for (const auto& [key, prob] : layer) {
            std::vector<FlawId> pending = key.pending;
            const auto flaw = next_flaw(problem, key.state, strategy, pending);
            if (!flaw) {
                dist.halt_mass += prob;
                continue;
            }
            FlawSequence witness = key.witness;
            witness.push_back(*flaw);
            if (strategy == Strategy::recursive)
                pending.push_back(*flaw);
            for (const Action& a : inst.actions(*flaw, key.state)) {
                std::vector<FlawId> settled = pending;
                if (strategy == Strategy::recursive)
                    settle_pending(problem, a.target, settled);
                next[{witness, a.target, std::move(settled)}] += prob * a.prob;
            }
            if (next.size() > cap)
                throw CapExceeded("witness distribution exceeded " + std::to_string(cap) + " joint entries at step " +
                                  std::to_string(step + 1));
        }
        layer = std::move(next);
    }
    for (const auto& [key, prob] : layer)
        dist.entries[key.witness] += prob;
    return dist;
}

std::string format_sequence(const ExplicitInstance& instance, const FlawSequence& w)
{
    std::string out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k)
            out += ',';
        out += instance.flaw_name(w[k]);
    }
    return out.empty() ? "-" : out;
}

Report verify_witness_bound(const ExplicitWalkProblem& problem, Strategy strategy, std::size_t t, double tol)
{
    const ExplicitInstance& inst = problem.instance();
    std::vector<double> gamma;
    for (FlawId i = 0; i < inst.num_flaws(); ++i)
        gamma.push_back(flaw_charge(inst, i).charge);
    const double xi = max_theta_ratio(inst);

    const auto dist = witness_distribution(problem, strategy, t);
    Report report;
    for (const auto& [w, p] : dist.entries) {
        double bound = xi;
        for (FlawId f : w)
            bound *= gamma[f];
        report.expect_le("witness_bound[" + format_sequence(inst, w) + "]", p, bound, tol);
    }
    return report;
}

namespace {

void require_atomic_oracle(const ExplicitInstance& instance, double tol)
{
    if (const auto v = check_atomicity(instance); !v.empty())
        throw PreconditionError("action digraph is not atomic: flaw '" + instance.flaw_name(v.front().flaw) +
                                "' reaches state " + std::to_string(v.front().target) + " from " +
                                std::to_string(v.front().sources.size()) + " sources");
    for (FlawId i = 0; i < instance.num_flaws(); ++i)
        if (!regenerates(instance, i, tol))
            throw PreconditionError("kernel does not regenerate mu at flaw '" + instance.flaw_name(i) + "'");
}

} // namespace

Report verify_atomic_oracle(const ExplicitInstance& instance, double tol)
{
    require_atomic_oracle(instance, tol);
    Report report;
    for (FlawId i = 0; i < instance.num_flaws(); ++i) {
        const std::string& name = instance.flaw_name(i);
        std::vector<char> covered(instance.num_states(), 0);
        for (StateId s : instance.flaw_members(i)) {
            const auto acts = instance.actions(i, s);
            double mass = 0.0;
            for (const Action& a : acts) {
                mass += instance.mu(a.target);
                covered[a.target] = 1;
            }
            const std::string at = name + "@" + std::to_string(s);
            report.expect_eq("action_mass[" + at + "]", mass, instance.mu(s) / instance.flaw_measure(i), tol);
            for (const Action& a : acts)
                report.expect_eq("harmonic[" + at + "->" + std::to_string(a.target) + "]", a.prob,
                                 instance.mu(a.target) / mass, tol);
        }
        const auto reached = std::count(covered.begin(), covered.end(), 1);
        report.expect_eq("coverage[" + name + "]", static_cast<double>(reached),
                         static_cast<double>(instance.num_states()), 0.0);
    }
    return report;
}

Report verify_trajectory_window(const ExplicitWalkProblem& problem, Strategy strategy, std::size_t t, double tol)
{
    const ExplicitInstance& inst = problem.instance();
    require_atomic_oracle(inst, tol);
    const double alpha = min_theta_ratio(inst);
    const double beta = max_theta_ratio(inst);

    const auto dist = witness_distribution(problem, strategy, t);
    Report report;
    for (const auto& [w, p] : dist.entries) {
        if (!(p > 0.0))
            continue;
        double prod = 1.0;
        for (FlawId f : w)
            prod *= inst.flaw_measure(f);
        const std::string tag = "[" + format_sequence(inst, w) + "]";
        report.expect_le("window_lower" + tag, alpha * prod, p, tol);
        report.expect_le("window_upper" + tag, p, beta * prod, tol);
    }
    return report;
}

} // namespace focus::verify
