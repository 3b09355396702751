#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace focus {

using StateId = int;
using FlawId = int;

/// Sorted, duplicate-free set of flaw indices.
using FlawSet = std::vector<FlawId>;
/// A family of flaw sets (Roots, List(i), Ind(S), ...).
using SetFamily = std::vector<FlawSet>;

/// Tolerance shared by probability-sum validation and every regeneration or charge comparison.
inline constexpr double kDefaultTolerance = 1e-9;

struct Action {
    StateId target;
    double prob;

    friend bool operator==(const Action&, const Action&) = default;
};

struct FlawSpec {
    std::string name;
    std::vector<StateId> members;
    std::size_t line = 0;
};

struct ArcSpec {
    FlawId flaw;
    StateId from;
    StateId to;
    double prob;
    std::size_t line = 0;
};

/// Plain description of an explicit instance. Weights are unnormalized; `weight`
/// defaults to 1 and `theta` to 0 for states not listed.
struct InstanceSpec {
    int num_states = 0;
    std::vector<double> weight;
    std::vector<double> theta;
    std::vector<FlawSpec> flaws;
    std::vector<ArcSpec> arcs;
};

/// A fully enumerated state space with flaws, actions and transition kernel, a
/// progress measure mu and a start distribution theta. Immutable once built.
class ExplicitInstance {
public:
    /// Validates and normalizes. Throws ValidationError naming the offending line
    /// when the spec came from a file.
    explicit ExplicitInstance(InstanceSpec spec);

    int num_states() const noexcept { return spec_.num_states; }
    int num_flaws() const noexcept { return static_cast<int>(spec_.flaws.size()); }

    double mu(StateId s) const { return mu_[s]; }
    double theta(StateId s) const { return theta_[s]; }
    std::span<const double> mu() const noexcept { return mu_; }
    std::span<const double> theta() const noexcept { return theta_; }

    const std::string& flaw_name(FlawId i) const { return spec_.flaws[i].name; }
    std::optional<FlawId> find_flaw(std::string_view name) const;

    std::span<const StateId> flaw_members(FlawId i) const { return members_[i]; }
    bool contains(FlawId i, StateId s) const { return membership_[i][s] != 0; }
    /// mu(f_i).
    double flaw_measure(FlawId i) const { return flaw_measure_[i]; }

    /// A(i, s) with rho_i(s, .), sorted by target. Empty when s is not in f_i.
    std::span<const Action> actions(FlawId i, StateId s) const { return actions_[i][s]; }

    /// U(s): indices of the flaws present in s, ascending.
    FlawSet present(StateId s) const;

    const InstanceSpec& spec() const noexcept { return spec_; }

private:
    InstanceSpec spec_;
    std::vector<double> mu_;
    std::vector<double> theta_;
    std::vector<std::vector<StateId>> members_;
    std::vector<std::vector<char>> membership_;
    std::vector<double> flaw_measure_;
    std::vector<std::vector<std::vector<Action>>> actions_;
};

/// Reads the line-oriented instance format:
///   states N | weight i w | theta i w | flaw NAME i1 i2 ... | arc NAME from to p
/// with '#' comments and 0-based state indices.
ExplicitInstance parse_instance(std::istream& in);
ExplicitInstance load_instance(const std::string& path);

/// Writes an instance in the format read by parse_instance; probabilities are
/// printed with round-trip precision.
void write_instance(std::ostream& out, const ExplicitInstance& instance);

} // namespace focus
