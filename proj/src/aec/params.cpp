#include "focus/aec/params.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace focus::aec {

std::string_view to_string(PaletteMode m) noexcept
{
    switch (m) {
    case PaletteMode::degenerate:
        return "degenerate";
    case PaletteMode::general:
        return "general";
    case PaletteMode::automatic:
        return "auto";
    }
    return "?";
}

PaletteMode parse_palette_mode(std::string_view name)
{
    if (name == "degenerate")
        return PaletteMode::degenerate;
    if (name == "general")
        return PaletteMode::general;
    if (name == "auto")
        return PaletteMode::automatic;
    throw std::invalid_argument("unknown palette mode '" + std::string(name) + "'");
}

namespace {

std::int64_t ceil_sqrt(std::int64_t x)
{
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
    while (r * r > x)
        --r;
    while (r * r < x)
        ++r;
    return r;
}

AecParams resolved(int delta, int d, PaletteMode mode)
{
    AecParams p;
    p.max_degree = delta;
    p.degeneracy = d;
    p.mode = mode;
    p.epsilon = delta > 0 ? 4.0 * std::sqrt(static_cast<double>(d) / delta) : 0.0;
    if (delta < 2) {
        p.q = delta + 1;
    } else if (mode == PaletteMode::degenerate) {
        // ceil((2 + 4 sqrt(d/D)) D) = 2D + ceil(sqrt(16 d D))
        p.q = static_cast<int>(2 * std::int64_t{delta} + ceil_sqrt(16 * std::int64_t{d} * delta));
    } else {
        // ceil(4.182 (D - 1)) in integer arithmetic
        p.q = static_cast<int>((4182 * std::int64_t{delta - 1} + 999) / 1000);
    }
    p.surplus = p.q - 2 * (delta - 1);
    if (p.surplus < 1) {
        p.q = 2 * delta + 1;
        p.surplus = p.q - 2 * (delta - 1);
        p.fallback = true;
    }
    return p;
}

} // namespace

AecParams palette_for(int max_degree, int degeneracy, PaletteMode mode)
{
    if (max_degree < 0 || degeneracy < 0 || degeneracy > max_degree)
        throw std::invalid_argument("need 0 <= degeneracy <= max degree");
    if (mode != PaletteMode::automatic)
        return resolved(max_degree, degeneracy, mode);
    const AecParams deg = resolved(max_degree, degeneracy, PaletteMode::degenerate);
    const AecParams gen = resolved(max_degree, degeneracy, PaletteMode::general);
    return gen.q < deg.q ? gen : deg;
}

AecParams palette_size(const Graph& graph, PaletteMode mode)
{
    return palette_for(graph.max_degree(), degeneracy_order(graph).degeneracy, mode);
}

double general_margin(int cycle_length, double kappa, double lambda)
{
    const double growth = 1.0 + std::pow(lambda, 4) / (1.0 - lambda * lambda);
    return std::pow(1.0 / (lambda * kappa), cycle_length - 2) * std::pow(growth, cycle_length);
}

double degenerate_coefficient(double alpha, double lambda)
{
    if (!(lambda > 0.0 && lambda < 0.25))
        throw std::domain_error("degenerate analysis needs 0 < lambda < 1/4");
    const double beta = alpha * (1.0 / std::sqrt(1.0 - 4.0 * lambda) - 1.0 - 2.0 * lambda);
    return (1.0 + beta) / std::sqrt(lambda);
}

double condition_margin(const AecParams& params, int cycle_length, PaletteMode mode)
{
    if (cycle_length < 6 || cycle_length % 2 != 0)
        throw std::invalid_argument("cycle length must be even and at least 6");
    switch (mode) {
    case PaletteMode::general:
        return general_margin(cycle_length);
    case PaletteMode::degenerate:
        if (params.surplus < 1)
            throw std::invalid_argument("surplus must be positive");
        return degenerate_coefficient() *
               std::sqrt(static_cast<double>(params.degeneracy) * params.max_degree) / params.surplus;
    case PaletteMode::automatic:
        break;
    }
    throw std::invalid_argument("condition_margin needs a concrete mode");
}

} // namespace focus::aec
