#pragma once

// Sixth-order flux-difference approximations of u_xx: the central FD6 flux
// and the WENO-LSZ, MWENO and CWENO nonlinear reconstructions built on the
// six-point stencil {x_{i-2}, ..., x_{i+3}} around the half point x_{i+1/2}.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rdweno/grid.hpp"

namespace rdweno {

/// Values (u_{i-2}, u_{i-1}, u_i, u_{i+1}, u_{i+2}, u_{i+3}) feeding the flux at x_{i+1/2}.
using StencilWindow = std::array<double, 6>;

enum class SchemeKind { FD6, WenoLsz, Mweno, Cweno };

inline constexpr std::array<SchemeKind, 4> kAllSchemes{SchemeKind::FD6, SchemeKind::WenoLsz, SchemeKind::Mweno,
                                                       SchemeKind::Cweno};

[[nodiscard]] std::string_view to_string(SchemeKind kind) noexcept;

/// Accepts the names printed by to_string ("FD6", "WENO-LSZ", "MWENO", "CWENO"), case-insensitive,
/// plus the aliases "FD" and "LSZ".
[[nodiscard]] SchemeKind scheme_from_string(std::string_view name);

/// Regularizer used when none is given: 1e-6 (WENO-LSZ), 1e-30 (MWENO), 1e-40 (CWENO).
/// FD6 never reads its epsilon.
[[nodiscard]] double default_epsilon(SchemeKind kind) noexcept;

struct SchemeSpec {
    SchemeKind kind = SchemeKind::FD6;
    double epsilon = 1e-6;

    [[nodiscard]] static SchemeSpec with_default_epsilon(SchemeKind kind) { return {kind, default_epsilon(kind)}; }
    void validate() const;

    bool operator==(const SchemeSpec&) const = default;
};

/// Thrown when the LSZ mapped weights sum to zero and cannot be normalized.
class DegenerateWeights : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact rational coefficient; converted to the nearest double once.
struct Rational {
    std::int64_t num;
    std::int64_t den;

    [[nodiscard]] constexpr double value() const noexcept {
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

using StencilRow = std::array<Rational, 6>;

/// A squared term w * (c . window)^2 of a smoothness indicator.
struct SquaredTerm {
    Rational weight;
    std::array<std::int64_t, 6> coeffs;
};

namespace coefficients {

inline constexpr StencilRow kFdFlux{{{-1, 90}, {5, 36}, {-49, 36}, {49, 36}, {-5, 36}, {1, 90}}};

inline constexpr std::array<StencilRow, 3> kSubstencilFlux{{
    {{{1, 12}, {-1, 4}, {-3, 4}, {11, 12}, {0, 1}, {0, 1}}},
    {{{0, 1}, {1, 12}, {-5, 4}, {5, 4}, {-1, 12}, {0, 1}}},
    {{{0, 1}, {0, 1}, {-11, 12}, {3, 4}, {1, 4}, {-1, 12}}},
}};

inline constexpr StencilRow kCentralFlux{{{-3, 40}, {11, 24}, {-2, 1}, {2, 1}, {-11, 24}, {3, 40}}};

inline constexpr std::array<Rational, 3> kLinearWeights{{{-2, 15}, {19, 15}, {-2, 15}}};
inline constexpr Rational kSigmaPlus{42, 15};
inline constexpr Rational kSigmaMinus{27, 15};
inline constexpr std::array<Rational, 3> kGammaPlus{{{1, 21}, {19, 21}, {1, 21}}};
inline constexpr std::array<Rational, 3> kGammaMinus{{{4, 27}, {19, 27}, {4, 27}}};
/// Ordered (theta_0, theta_1, theta_2, theta_C).
inline constexpr std::array<Rational, 4> kTheta{{{1, 6}, {1, 3}, {1, 6}, {1, 3}}};

/// Two squared terms per substencil indicator beta_k.
inline constexpr std::array<std::array<SquaredTerm, 2>, 3> kSmoothness{{
    {{{{13, 12}, {1, -3, 3, -1, 0, 0}}, {{1, 4}, {1, -5, 7, -3, 0, 0}}}},
    {{{{13, 12}, {0, 1, -3, 3, -1, 0}}, {{1, 4}, {0, 1, -1, -1, 1, 0}}}},
    {{{{13, 12}, {0, 0, 1, -3, 3, -1}}, {{1, 4}, {0, 0, -3, 7, -5, 1}}}},
}};

/// Ten squared terms of the central indicator beta_C over the full stencil.
inline constexpr std::array<SquaredTerm, 10> kCentralSmoothness{{
    {{4273, 20160}, {1, -5, 10, -10, 5, -1}},
    {{29, 345600}, {5, 11, -70, 94, -47, 7}},
    {{1, 3600}, {35, -139, 230, -206, 103, -23}},
    {{1, 576}, {7, -51, 134, -166, 99, -23}},
    {{1, 2304}, {7, -56, 106, -76, 23, -4}},
    {{1, 9216}, {65, -353, 690, -602, 221, -21}},
    {{1, 9216}, {23, -63, -34, 186, -133, 21}},
    {{1, 2304}, {13, -28, 30, -28, 13, 0}},
    {{2, 15}, {1, -4, 6, -4, 1, 0}},
    {{1, 1152}, {1, -12, 22, -12, 1, 0}},
}};

}  // namespace coefficients

/// Linear weights rendered to double.
struct LinearWeightTable {
    std::array<double, 3> d;
    double sigma_plus;
    double sigma_minus;
    std::array<double, 3> gamma_plus;
    std::array<double, 3> gamma_minus;
    std::array<double, 4> theta;
};

[[nodiscard]] const LinearWeightTable& linear_weights() noexcept;

// Candidate fluxes at x_{i+1/2}.
[[nodiscard]] double fd_flux(const StencilWindow& w) noexcept;
[[nodiscard]] std::array<double, 3> substencil_fluxes(const StencilWindow& w) noexcept;
[[nodiscard]] double central_flux(const StencilWindow& w) noexcept;

// Smoothness indicators; all are non-negative and vanish on linear data.
[[nodiscard]] std::array<double, 3> smoothness_indicators(const StencilWindow& w) noexcept;
[[nodiscard]] double central_smoothness(const StencilWindow& w) noexcept;

/**
 * WENO-LSZ weights: split positive/negative Jiang-Shu weights with
 * alpha = gamma / (beta + eps)^2, recombined as sigma+ w+ - sigma- w-, then
 * passed through the mapping g_k and renormalized.
 *
 * Throws DegenerateWeights if the mapped weights sum to zero.
 */
[[nodiscard]] std::array<double, 3> lsz_weights(const std::array<double, 3>& betas, double eps);

/// MWENO Z-type weights with tau = |beta_0 - beta_2|; signed, summing to sigma+ - sigma- = 1.
[[nodiscard]] std::array<double, 3> mweno_weights(const std::array<double, 3>& betas, double eps) noexcept;

/// CWENO weights ordered (w_0, w_1, w_2, w_C), using tau_6 = |beta_C - (5 b0 + 14 b1 + 5 b2)/24|.
[[nodiscard]] std::array<double, 4> cweno_weights(const std::array<double, 3>& betas, double beta_c,
                                                  double eps) noexcept;

/// Flux at x_{i+1/2} for the selected scheme.
[[nodiscard]] double weno_flux(const StencilWindow& w, const SchemeSpec& spec);

/// fluxes[j] = weno_flux(values[j .. j+5]); requires values.size() >= fluxes.size() + 5.
void interface_fluxes(std::span<const double> values, const SchemeSpec& spec, std::span<double> fluxes);

/**
 * Flux-difference second derivative of one ghost-extended species.
 *
 * `extended` holds n_points + 2*kGhostWidth values. Writes
 * (g_{i+1/2} - g_{i-1/2}) / dx^2 for interior nodes and 0 at both endpoints.
 * `flux_scratch` must hold n_points - 1 values.
 */
void second_derivative_extended(std::span<const double> extended, double dx, const SchemeSpec& spec,
                                std::span<double> flux_scratch, std::span<double> out);

/// Second derivative of every species; the result is flagged blown-up if any entry is non-finite.
[[nodiscard]] StateField second_derivative(const StateField& field, const Grid& grid, const BoundarySpec& bc,
                                           const SchemeSpec& spec);

}  // namespace rdweno
