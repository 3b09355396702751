#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "focus/instance.hpp"

namespace focus::cli {

/// Roots and List families over named flaws, read from text:
///   flaws A B C      declares the names (required when no instance supplies them)
///   roots A B        adds {A, B} to Roots; a bare `roots` adds the empty set
///   list A B C       adds {B, C} to List(A); `list A` alone adds the empty set
///   gamma A 0.25     optional charge for A
/// Flaws with no `list` line get List = {empty set}.
struct FamilySpec {
    std::vector<std::string> names;
    std::optional<SetFamily> roots;
    std::vector<SetFamily> lists;
    std::vector<std::optional<double>> gamma;
};

/// `names` comes from an instance when there is one; then a `flaws` line is
/// optional but must agree with it. Throws ParseError with the line number.
FamilySpec parse_family(std::istream& in, const std::vector<std::string>& names = {});
FamilySpec load_family(const std::string& path, const std::vector<std::string>& names = {});

/// Either a positive scalar applied to every flaw or `file:<path>` with lines `NAME value`.
std::vector<double> parse_psi(const std::string& spec, const std::vector<std::string>& names);

} // namespace focus::cli
