#include "rdweno/integrator.hpp"

#include <cmath>
#include <sstream>

namespace rdweno {

void TimeSpec::validate() const {
    std::ostringstream msg;
    if (!(cfl > 0.0) || !std::isfinite(cfl)) msg << "cfl must be positive, got " << cfl;
    else if (!(t_final >= 0.0) || !std::isfinite(t_final)) msg << "t_final must be non-negative, got " << t_final;
    else if (max_steps < 1) msg << "max_steps must be positive, got " << max_steps;
    else return;
    throw std::invalid_argument(msg.str());
}

SemiDiscreteSystem::SemiDiscreteSystem(Grid grid, BoundarySpec bc, SchemeSpec scheme, ReactionModel model)
    : grid_(grid),
      bc_(std::move(bc)),
      scheme_(scheme),
      model_(model),
      diffusion_(diffusion_matrix(model)),
      extended_(static_cast<std::size_t>(grid.n_points() + 2 * kGhostWidth)),
      flux_(static_cast<std::size_t>(grid.n_cells)) {
    model_.validate();
    scheme_.validate();
    if (bc_.species_count() != model_.species_count() || bc_.right_values.size() != bc_.left_values.size()) {
        throw ShapeMismatch("boundary spec species count does not match the model");
    }
}

void SemiDiscreteSystem::evaluate(const StateField& u, StateField& du) {
    check_shape(u, grid_);
    check_shape(u, bc_);
    if (du.species_count() != u.species_count() || du.n_points() != u.n_points()) du = StateField(u.species_count(), u.n_points());

    const int n = grid_.n_points();
    const int species = u.species_count();
    for (int s = 0; s < species; ++s) {
        const auto idx = static_cast<std::size_t>(s);
        const auto src = u.species(s);
        for (int g = 0; g < kGhostWidth; ++g) {
            extended_[static_cast<std::size_t>(g)] = bc_.left_values[idx];
            extended_[static_cast<std::size_t>(n + kGhostWidth + g)] = bc_.right_values[idx];
        }
        std::copy(src.begin(), src.end(), extended_.begin() + kGhostWidth);
        auto out = du.species(s);
        second_derivative_extended(extended_, grid_.dx, scheme_, flux_, out);
        const double d = diffusion_[idx];
        for (int i = 1; i < n - 1; ++i) out[static_cast<std::size_t>(i)] *= d;
    }

    SpeciesValues local{};
    for (int i = 1; i < n - 1; ++i) {
        for (int s = 0; s < species; ++s) local[static_cast<std::size_t>(s)] = u(s, i);
        const auto r = reaction_term(model_, local);
        for (int s = 0; s < species; ++s) du(s, i) += r[static_cast<std::size_t>(s)];
    }
    du.set_blown_up(!du.all_bounded(std::numeric_limits<double>::max()));
}

RhsFunction SemiDiscreteSystem::rhs_function() {
    return [this](const StateField& u, StateField& du) { evaluate(u, du); };
}

StageConstraint SemiDiscreteSystem::stage_constraint() const {
    return [this](StateField& u) { constrain(u); };
}

StateField rhs(const StateField& state, const Grid& grid, const BoundarySpec& bc, const SchemeSpec& scheme,
               const ReactionModel& model) {
    SemiDiscreteSystem system(grid, bc, scheme, model);
    StateField du(state.species_count(), state.n_points());
    system.evaluate(state, du);
    return du;
}

Rk3Stepper::Rk3Stepper(RhsFunction rhs, StageConstraint constraint)
    : rhs_(std::move(rhs)), constraint_(std::move(constraint)) {}

bool Rk3Stepper::stage_ok(StateField& v) {
    if (constraint_) constraint_(v);
    return v.all_bounded(kBlowupThreshold);
}

bool Rk3Stepper::step(StateField& u, double dt) {
    if (k1_.species_count() != u.species_count() || k1_.n_points() != u.n_points()) {
        k1_ = StateField(u.species_count(), u.n_points());
        k2_ = k1_;
        k3_ = k1_;
        stage_ = k1_;
    }
    const int species = u.species_count();
    const int n = u.n_points();
    try {
        rhs_(u, k1_);
        for (int s = 0; s < species; ++s) {
            auto a = u.species(s);
            auto k1 = k1_.species(s);
            auto o = stage_.species(s);
            for (int i = 0; i < n; ++i) o[i] = a[i] + dt * k1[i];
        }
        if (!stage_ok(stage_)) {
            u = stage_;
            return false;
        }

        rhs_(stage_, k2_);
        for (int s = 0; s < species; ++s) {
            auto a = u.species(s);
            auto k1 = k1_.species(s);
            auto k2 = k2_.species(s);
            auto o = stage_.species(s);
            for (int i = 0; i < n; ++i) o[i] = a[i] + 0.25 * (dt * k1[i] + dt * k2[i]);
        }
        if (!stage_ok(stage_)) {
            u = stage_;
            return false;
        }

        rhs_(stage_, k3_);
        for (int s = 0; s < species; ++s) {
            auto a = u.species(s);
            auto k1 = k1_.species(s);
            auto k2 = k2_.species(s);
            auto k3 = k3_.species(s);
            for (int i = 0; i < n; ++i) a[i] = a[i] + dt * (k1[i] + k2[i] + 4.0 * k3[i]) / 6.0;
        }
    } catch (const DegenerateWeights&) {
        // The state has left the regime where the scheme is defined; treat like divergence.
        return false;
    }
    return stage_ok(u);
}

StepOutcome rk3_step(const StateField& state, double t, double dt, const RhsFunction& rhs,
                     const StageConstraint& constraint) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk3_step: dt must be positive");
    Rk3Stepper stepper(rhs, constraint);
    StepOutcome out{state, t + dt, RunStatus::Ok};
    out.steps = 1;
    if (!stepper.step(out.state, dt)) {
        out.status = RunStatus::Blowup;
        out.blowup_time = out.t;
        out.state.set_blown_up(true);
    }
    return out;
}

std::int64_t step_count(double t_final, double dt) {
    if (t_final <= 0.0) return 0;
    const double ratio = t_final / dt;
    const double nearest = std::round(ratio);
    if (nearest >= 1.0 && std::abs(ratio - nearest) <= 1e-9 * nearest) return static_cast<std::int64_t>(nearest);
    return static_cast<std::int64_t>(std::ceil(ratio));
}

StepOutcome advance(const StateField& state0, const TimeSpec& spec, double dx, const RhsFunction& rhs,
                    const StageConstraint& constraint, const std::vector<StepObserver>& observers) {
    spec.validate();
    const double dt0 = spec.cfl * dx * dx;
    const std::int64_t total = step_count(spec.t_final, dt0);
    if (total > spec.max_steps) {
        std::ostringstream msg;
        msg << "run needs " << total << " steps, cap is " << spec.max_steps;
        throw StepCapExceeded(msg.str());
    }

    StepOutcome out{state0, 0.0, RunStatus::Ok};
    Rk3Stepper stepper(rhs, constraint);
    for (std::int64_t k = 1; k <= total; ++k) {
        const bool last = k == total;
        const double t_prev = static_cast<double>(k - 1) * dt0;
        const double dt = last ? spec.t_final - t_prev : dt0;
        const double t_next = last ? spec.t_final : static_cast<double>(k) * dt0;
        if (!stepper.step(out.state, dt)) {
            out.status = RunStatus::Blowup;
            out.blowup_time = t_next;
            out.t = t_next;
            out.steps = k;
            out.state.set_blown_up(true);
            return out;
        }
        out.t = t_next;
        out.steps = k;
        for (const auto& obs : observers) obs(k, out.t, out.state);
    }
    return out;
}

StepOutcome advance(const StateField& state0, const TimeSpec& spec, SemiDiscreteSystem& system,
                    const std::vector<StepObserver>& observers) {
    return advance(state0, spec, system.grid().dx, system.rhs_function(), system.stage_constraint(), observers);
}

}  // namespace rdweno
