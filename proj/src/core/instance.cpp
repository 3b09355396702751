#include "focus/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "focus/errors.hpp"

namespace focus {

ExplicitInstance::ExplicitInstance(InstanceSpec spec) : spec_(std::move(spec))
{
    const int n = spec_.num_states;
    if (n <= 0)
        throw ValidationError(0, "instance must declare at least one state");
    spec_.weight.resize(n, 1.0);
    spec_.theta.resize(n, 0.0);

    double wsum = 0.0;
    double tsum = 0.0;
    for (int s = 0; s < n; ++s) {
        if (!(spec_.weight[s] > 0.0) || !std::isfinite(spec_.weight[s]))
            throw ValidationError(0, "weight of state " + std::to_string(s) + " must be positive");
        if (!(spec_.theta[s] >= 0.0) || !std::isfinite(spec_.theta[s]))
            throw ValidationError(0, "theta of state " + std::to_string(s) + " must be nonnegative");
        wsum += spec_.weight[s];
        tsum += spec_.theta[s];
    }
    if (!(tsum > 0.0))
        throw ValidationError(0, "theta weights must have a positive total");
    mu_.resize(n);
    theta_.resize(n);
    for (int s = 0; s < n; ++s) {
        mu_[s] = spec_.weight[s] / wsum;
        theta_[s] = spec_.theta[s] / tsum;
    }

    const int m = num_flaws();
    members_.resize(m);
    membership_.assign(m, std::vector<char>(n, 0));
    flaw_measure_.assign(m, 0.0);
    actions_.assign(m, std::vector<std::vector<Action>>(n));

    std::unordered_map<std::string, FlawId> names;
    for (FlawId i = 0; i < m; ++i) {
        const FlawSpec& f = spec_.flaws[i];
        if (f.name.empty())
            throw ValidationError(f.line, "flaw name must be nonempty");
        if (!names.emplace(f.name, i).second)
            throw ValidationError(f.line, "duplicate flaw name '" + f.name + "'");
        if (f.members.empty())
            throw ValidationError(f.line, "flaw '" + f.name + "' has no states");
        for (StateId s : f.members) {
            if (s < 0 || s >= n)
                throw ValidationError(f.line, "flaw '" + f.name + "' names state " + std::to_string(s) + " out of range");
            if (membership_[i][s])
                throw ValidationError(f.line, "flaw '" + f.name + "' lists state " + std::to_string(s) + " twice");
            membership_[i][s] = 1;
        }
        members_[i] = f.members;
        std::sort(members_[i].begin(), members_[i].end());
        for (StateId s : members_[i])
            flaw_measure_[i] += mu_[s];
    }

    // first line seen for each (flaw, source) group, for error reporting
    std::map<std::pair<FlawId, StateId>, std::size_t> group_line;
    for (const ArcSpec& a : spec_.arcs) {
        if (a.flaw < 0 || a.flaw >= m)
            throw ValidationError(a.line, "arc refers to unknown flaw " + std::to_string(a.flaw));
        const std::string& fname = spec_.flaws[a.flaw].name;
        if (a.from < 0 || a.from >= n || a.to < 0 || a.to >= n)
            throw ValidationError(a.line, "arc endpoint out of range");
        if (!membership_[a.flaw][a.from])
            throw ValidationError(a.line, "arc for flaw '" + fname + "' leaves state " + std::to_string(a.from) +
                                              ", which is not in the flaw");
        if (!(a.prob > 0.0) || a.prob > 1.0 + kDefaultTolerance)
            throw ValidationError(a.line, "arc probability must lie in (0, 1]");
        auto& acts = actions_[a.flaw][a.from];
        for (const Action& existing : acts)
            if (existing.target == a.to)
                throw ValidationError(a.line, "duplicate arc for flaw '" + fname + "' " + std::to_string(a.from) +
                                                  " -> " + std::to_string(a.to));
        acts.push_back({a.to, a.prob});
        group_line.emplace(std::make_pair(a.flaw, a.from), a.line);
    }

    for (FlawId i = 0; i < m; ++i) {
        for (StateId s : members_[i]) {
            auto& acts = actions_[i][s];
            const auto it = group_line.find({i, s});
            const std::size_t line = it == group_line.end() ? spec_.flaws[i].line : it->second;
            const std::string where = "flaw '" + spec_.flaws[i].name + "' at state " + std::to_string(s);
            if (acts.empty())
                throw ValidationError(line, where + " has no actions");
            if (acts.size() == 1 && acts.front().target == s)
                throw ValidationError(line, where + " has the single action {" + std::to_string(s) + "}");
            double total = 0.0;
            for (const Action& act : acts)
                total += act.prob;
            if (std::abs(total - 1.0) > kDefaultTolerance) {
                std::ostringstream msg;
                msg << where << ": action probabilities sum to " << std::setprecision(12) << total;
                throw ValidationError(line, msg.str());
            }
            std::sort(acts.begin(), acts.end(),
                      [](const Action& x, const Action& y) { return x.target < y.target; });
        }
    }
}

std::optional<FlawId> ExplicitInstance::find_flaw(std::string_view name) const
{
    for (FlawId i = 0; i < num_flaws(); ++i)
        if (spec_.flaws[i].name == name)
            return i;
    return std::nullopt;
}

FlawSet ExplicitInstance::present(StateId s) const
{
    FlawSet out;
    for (FlawId i = 0; i < num_flaws(); ++i)
        if (membership_[i][s])
            out.push_back(i);
    return out;
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

long parse_int(std::string_view tok, std::size_t line)
{
    long value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
    return value;
}

double parse_real(std::string_view tok, std::size_t line)
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(value))
        throw ParseError(line, "expected a decimal number, got '" + std::string(tok) + "'");
    return value;
}

} // namespace

ExplicitInstance parse_instance(std::istream& in)
{
    InstanceSpec spec;
    std::unordered_map<std::string, FlawId> names;
    bool have_states = false;
    bool have_theta = false;
    std::string raw;
    std::size_t lineno = 0;

    auto state_arg = [&](std::string_view tok) {
        const long s = parse_int(tok, lineno);
        if (s < 0 || s >= spec.num_states)
            throw ParseError(lineno, "state index " + std::string(tok) + " out of range");
        return static_cast<StateId>(s);
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const auto tok = split_tokens(line);
        if (tok.empty())
            continue;
        const std::string_view cmd = tok[0];

        if (cmd == "states") {
            if (tok.size() != 2)
                throw ParseError(lineno, "usage: states N");
            if (have_states)
                throw ParseError(lineno, "duplicate 'states' line");
            const long n = parse_int(tok[1], lineno);
            if (n <= 0)
                throw ParseError(lineno, "state count must be positive");
            spec.num_states = static_cast<int>(n);
            spec.weight.assign(n, 1.0);
            spec.theta.assign(n, 0.0);
            have_states = true;
            continue;
        }
        if (!have_states)
            throw ParseError(lineno, "'" + std::string(cmd) + "' before 'states'");

        if (cmd == "weight" || cmd == "theta") {
            if (tok.size() != 3)
                throw ParseError(lineno, "usage: " + std::string(cmd) + " i w");
            const StateId s = state_arg(tok[1]);
            const double w = parse_real(tok[2], lineno);
            if (cmd == "weight") {
                if (!(w > 0.0))
                    throw ParseError(lineno, "weight must be positive");
                spec.weight[s] = w;
            } else {
                if (w < 0.0)
                    throw ParseError(lineno, "theta must be nonnegative");
                spec.theta[s] = w;
                have_theta = true;
            }
        } else if (cmd == "flaw") {
            if (tok.size() < 3)
                throw ParseError(lineno, "usage: flaw NAME i1 i2 ...");
            FlawSpec f{std::string(tok[1]), {}, lineno};
            if (names.count(f.name))
                throw ParseError(lineno, "duplicate flaw name '" + f.name + "'");
            for (std::size_t k = 2; k < tok.size(); ++k)
                f.members.push_back(state_arg(tok[k]));
            names.emplace(f.name, static_cast<FlawId>(spec.flaws.size()));
            spec.flaws.push_back(std::move(f));
        } else if (cmd == "arc") {
            if (tok.size() != 5)
                throw ParseError(lineno, "usage: arc NAME from to p");
            const auto it = names.find(std::string(tok[1]));
            if (it == names.end())
                throw ParseError(lineno, "arc names undeclared flaw '" + std::string(tok[1]) + "'");
            spec.arcs.push_back({it->second, state_arg(tok[2]), state_arg(tok[3]), parse_real(tok[4], lineno), lineno});
        } else {
            throw ParseError(lineno, "unknown directive '" + std::string(cmd) + "'");
        }
    }
    if (!have_states)
        throw ParseError(lineno, "missing 'states' line");
    if (!have_theta)
        throw ParseError(lineno, "at least one 'theta' line is required");
    return ExplicitInstance(std::move(spec));
}

ExplicitInstance load_instance(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open '" + path + "'");
    return parse_instance(in);
}

void write_instance(std::ostream& out, const ExplicitInstance& instance)
{
    const InstanceSpec& spec = instance.spec();
    const auto old_precision = out.precision(17);
    out << "states " << spec.num_states << '\n';
    for (int s = 0; s < spec.num_states; ++s)
        if (spec.weight[s] != 1.0)
            out << "weight " << s << ' ' << spec.weight[s] << '\n';
    for (int s = 0; s < spec.num_states; ++s)
        if (spec.theta[s] != 0.0)
            out << "theta " << s << ' ' << spec.theta[s] << '\n';
    for (FlawId i = 0; i < instance.num_flaws(); ++i) {
        out << "flaw " << instance.flaw_name(i);
        for (StateId s : instance.flaw_members(i))
            out << ' ' << s;
        out << '\n';
    }
    for (FlawId i = 0; i < instance.num_flaws(); ++i)
        for (StateId s : instance.flaw_members(i))
            for (const Action& a : instance.actions(i, s))
                out << "arc " << instance.flaw_name(i) << ' ' << s << ' ' << a.target << ' ' << a.prob << '\n';
    out.precision(old_precision);
}

} // namespace focus
