#pragma once

#include <string_view>

#include "focus/aec/graph.hpp"

namespace focus::aec {

enum class PaletteMode { degenerate, general, automatic };

std::string_view to_string(PaletteMode m) noexcept;
/// Accepts "degenerate", "general" and "auto".
PaletteMode parse_palette_mode(std::string_view name);

struct AecParams {
    int max_degree = 0;
    int degeneracy = 0;
    double epsilon = 0.0; // 4 sqrt(d / Delta)
    int q = 1;
    int surplus = 0; // Q = q - 2(Delta - 1)
    PaletteMode mode = PaletteMode::general; // never automatic once resolved
    bool fallback = false; // formula gave Q < 1; q was raised to 2 Delta + 1
};

/// Palette for the given structure. degenerate: q = ceil((2 + eps) Delta) with
/// eps = 4 sqrt(d / Delta), computed in exact integer arithmetic; general:
/// q = ceil(4.182 (Delta - 1)); automatic picks the smaller (degenerate on ties).
/// Graphs with Delta < 2 get q = Delta + 1.
AecParams palette_for(int max_degree, int degeneracy, PaletteMode mode);
AecParams palette_size(const Graph& graph, PaletteMode mode);

inline constexpr double kGeneralKappa = 2.182;
inline constexpr double kGeneralLambda = 0.569;
inline constexpr double kDegenerateAlpha = 2.76;
inline constexpr double kDegenerateLambda = 0.086;

/// (1/(lambda kappa))^(L-2) * (1 + lambda^4/(1-lambda^2))^L.
double general_margin(int cycle_length, double kappa = kGeneralKappa, double lambda = kGeneralLambda);

/// (1 + beta) / sqrt(lambda) with beta = alpha (1/sqrt(1 - 4 lambda) - 1 - 2 lambda).
/// Throws std::domain_error unless 0 < lambda < 1/4.
double degenerate_coefficient(double alpha = kDegenerateAlpha, double lambda = kDegenerateLambda);

/// Below 1 certifies the convergence condition. general: general_margin(L);
/// degenerate: degenerate_coefficient() * sqrt(d Delta) / Q.
double condition_margin(const AecParams& params, int cycle_length, PaletteMode mode);

} // namespace focus::aec
