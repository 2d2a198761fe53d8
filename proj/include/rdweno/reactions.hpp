#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rdweno/grid.hpp"

namespace rdweno {

enum class ModelKind { Fisher, Zeldovich, NWS, Bistable, LotkaVolterra };

inline constexpr std::array<ModelKind, 5> kAllModels{ModelKind::Fisher, ModelKind::Zeldovich, ModelKind::NWS,
                                                     ModelKind::Bistable, ModelKind::LotkaVolterra};

/// Maximum number of species any model carries (Lotka-Volterra has two).
inline constexpr int kMaxSpecies = 2;

/// Per-species values; only the first species_count() entries are meaningful.
using SpeciesValues = std::array<double, kMaxSpecies>;

[[nodiscard]] std::string_view to_string(ModelKind kind) noexcept;
[[nodiscard]] ModelKind model_from_string(std::string_view name);

class InvalidModel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Reaction kinetics plus diffusion coefficient for one of the five
 * traveling-wave models:
 *
 *   Fisher          R = rho u (1 - u)
 *   Zeldovich       R = rho u^2 (1 - u)
 *   NWS             R = rho u (1 - u^alpha)
 *   Bistable        R = rho u (1 - u)(u - beta)
 *   Lotka-Volterra  R = (rho u (1 - u - v), rho v (3 - 4u - v)), diffusion diag(D, D/3)
 *
 * `alpha` is read only for NWS, `beta` only for Bistable.
 */
struct ReactionModel {
    ModelKind kind = ModelKind::Fisher;
    double D = 1.0;
    double rho = 1.0;
    double alpha = 1.0;
    double beta = 0.5;

    [[nodiscard]] int species_count() const noexcept { return kind == ModelKind::LotkaVolterra ? 2 : 1; }

    /// Throws InvalidModel when D or rho is not positive, alpha < 1 (NWS), or beta outside (0,1) (Bistable).
    void validate() const;

    bool operator==(const ReactionModel&) const = default;
};

[[nodiscard]] SpeciesValues reaction_term(const ReactionModel& model, const SpeciesValues& u) noexcept;

/// Closed-form traveling wave evaluated at (x, t). Arguments past +-700 saturate to the far-field limit.
[[nodiscard]] SpeciesValues exact_solution(const ReactionModel& model, double x, double t) noexcept;

/// Signed front speed; negative for the bistable wave, which travels toward -x.
[[nodiscard]] double exact_speed(const ReactionModel& model) noexcept;

[[nodiscard]] SpeciesValues diffusion_matrix(const ReactionModel& model) noexcept;

/// Equilibria the exact wave connects: limits as x -> -inf and x -> +inf.
[[nodiscard]] BoundarySpec equilibrium_limits(const ReactionModel& model);

/// Level marking the front of species 0: midpoint of the connected equilibria.
[[nodiscard]] double front_level(const ReactionModel& model) noexcept;

/// Samples exact_solution on every grid node.
[[nodiscard]] StateField sample_exact(const ReactionModel& model, const Grid& grid, double t);

}  // namespace rdweno
