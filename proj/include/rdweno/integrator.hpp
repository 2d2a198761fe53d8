#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rdweno/grid.hpp"
#include "rdweno/reactions.hpp"
#include "rdweno/stencil.hpp"

namespace rdweno {

/// Any |u| above this, or any non-finite value, counts as blow-up.
inline constexpr double kBlowupThreshold = 1e10;

/// Step size rule dt = cfl * dx^2, with the last step shortened to land on t_final.
struct TimeSpec {
    double cfl = 0.4;
    double t_final = 0.0;
    std::int64_t max_steps = 100'000'000;

    void validate() const;
};

enum class RunStatus { Ok, Blowup };

struct StepOutcome {
    StateField state;
    double t = 0.0;
    RunStatus status = RunStatus::Ok;
    /// Time at the end of the step that diverged; NaN while status is Ok.
    double blowup_time = std::numeric_limits<double>::quiet_NaN();
    std::int64_t steps = 0;
};

class StepCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// du = L(u). Must not resize du.
using RhsFunction = std::function<void(const StateField& u, StateField& du)>;
/// Re-imposes constraints (Dirichlet pins) on a stage value.
using StageConstraint = std::function<void(StateField& u)>;
/// Called after every accepted step with a read-only view of the state.
using StepObserver = std::function<void(std::int64_t step, double t, const StateField& u)>;

/**
 * Semi-discrete reaction-diffusion operator
 *   du_s/dt = D_s (g_{i+1/2} - g_{i-1/2}) / dx^2 + R_s(u_i)
 * on interior nodes; endpoint rates are zero because the endpoints are pinned.
 *
 * Holds scratch buffers, so one instance must not be shared between threads.
 */
class SemiDiscreteSystem {
public:
    SemiDiscreteSystem(Grid grid, BoundarySpec bc, SchemeSpec scheme, ReactionModel model);

    void evaluate(const StateField& u, StateField& du);
    void constrain(StateField& u) const { pin_boundaries(u, bc_); }

    [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
    [[nodiscard]] const BoundarySpec& boundary() const noexcept { return bc_; }
    [[nodiscard]] const SchemeSpec& scheme() const noexcept { return scheme_; }
    [[nodiscard]] const ReactionModel& model() const noexcept { return model_; }

    [[nodiscard]] RhsFunction rhs_function();
    [[nodiscard]] StageConstraint stage_constraint() const;

private:
    Grid grid_;
    BoundarySpec bc_;
    SchemeSpec scheme_;
    ReactionModel model_;
    SpeciesValues diffusion_;
    std::vector<double> extended_;
    std::vector<double> flux_;
};

/// One-shot evaluation of the semi-discrete right-hand side.
[[nodiscard]] StateField rhs(const StateField& state, const Grid& grid, const BoundarySpec& bc,
                             const SchemeSpec& scheme, const ReactionModel& model);

/**
 * Shu-Osher TVD-RK3 with preallocated stage buffers:
 *   u1 = u + dt L(u)
 *   u2 = 3/4 u + 1/4 (u1 + dt L(u1))
 *   u  = 1/3 u + 2/3 (u2 + dt L(u2))
 * evaluated in increment form, u2 = u + dt (k1 + k2) / 4 and
 * u_new = u + dt (k1 + k2 + 4 k3) / 6, so a zero right-hand side leaves u
 * bit-for-bit unchanged. The constraint is applied after every stage.
 */
class Rk3Stepper {
public:
    explicit Rk3Stepper(RhsFunction rhs, StageConstraint constraint = {});

    /// Advances u in place. Returns false if any stage blew up; u then holds the failing stage.
    bool step(StateField& u, double dt);

private:
    bool stage_ok(StateField& v);

    RhsFunction rhs_;
    StageConstraint constraint_;
    StateField k1_;
    StateField k2_;
    StateField k3_;
    StateField stage_;
};

[[nodiscard]] StepOutcome rk3_step(const StateField& state, double t, double dt, const RhsFunction& rhs,
                                   const StageConstraint& constraint = {});

/// Number of steps advance() takes to reach t_final with base step dt.
[[nodiscard]] std::int64_t step_count(double t_final, double dt);

/**
 * Integrates from t = 0 to spec.t_final with dt = cfl * dx^2. Stops at the
 * first blow-up. Throws StepCapExceeded before stepping if more than
 * spec.max_steps steps would be needed.
 */
[[nodiscard]] StepOutcome advance(const StateField& state0, const TimeSpec& spec, double dx, const RhsFunction& rhs,
                                  const StageConstraint& constraint = {},
                                  const std::vector<StepObserver>& observers = {});

[[nodiscard]] StepOutcome advance(const StateField& state0, const TimeSpec& spec, SemiDiscreteSystem& system,
                                  const std::vector<StepObserver>& observers = {});

}  // namespace rdweno
