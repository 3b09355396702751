#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace focus::verify {

/// One checked claim. For an inequality lhs <= rhs the slack is rhs - lhs; for an
/// equality it is -|lhs - rhs|. pass already accounts for the tolerance.
struct Assertion {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool pass = false;
};

struct Report {
    std::vector<Assertion> assertions;

    void expect_le(std::string name, double lhs, double rhs, double tol);
    void expect_eq(std::string name, double lhs, double rhs, double tol);

    bool passed() const noexcept;
    /// Smallest slack over all assertions; +inf when empty.
    double worst_slack() const noexcept;
    std::size_t failures() const noexcept;

    /// One line per assertion: name lhs rhs slack PASS|FAIL.
    void write(std::ostream& out) const;
};

} // namespace focus::verify
