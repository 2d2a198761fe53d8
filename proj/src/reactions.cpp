#include "rdweno/reactions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace rdweno {

namespace {

constexpr double kSaturation = 700.0;

// 1 / (1 + e^s), saturated for large |s|.
double logistic_complement(double s) noexcept {
    if (s > kSaturation) return 0.0;
    if (s < -kSaturation) return 1.0;
    return 1.0 / (1.0 + std::exp(s));
}

double clamped_tanh(double z) noexcept {
    if (z > kSaturation) return 1.0;
    if (z < -kSaturation) return -1.0;
    return std::tanh(z);
}

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::Fisher: return "fisher";
        case ModelKind::Zeldovich: return "zeldovich";
        case ModelKind::NWS: return "nws";
        case ModelKind::Bistable: return "bistable";
        case ModelKind::LotkaVolterra: return "lotka-volterra";
    }
    return "?";
}

ModelKind model_from_string(std::string_view name) {
    std::string n(name);
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
    std::replace(n.begin(), n.end(), '_', '-');
    if (n == "fisher") return ModelKind::Fisher;
    if (n == "zeldovich") return ModelKind::Zeldovich;
    if (n == "nws" || n == "newell-whitehead-segel") return ModelKind::NWS;
    if (n == "bistable") return ModelKind::Bistable;
    if (n == "lotka-volterra" || n == "lv") return ModelKind::LotkaVolterra;
    throw InvalidModel("unknown model '" + std::string(name) +
                       "' (expected fisher, zeldovich, nws, bistable or lotka-volterra)");
}

void ReactionModel::validate() const {
    std::ostringstream msg;
    if (!(D > 0.0) || !std::isfinite(D)) msg << "diffusion coefficient D must be positive, got " << D;
    else if (!(rho > 0.0) || !std::isfinite(rho)) msg << "reaction coefficient rho must be positive, got " << rho;
    else if (kind == ModelKind::NWS && !(alpha >= 1.0 && std::isfinite(alpha)))
        msg << "NWS exponent alpha must be >= 1, got " << alpha;
    else if (kind == ModelKind::Bistable && !(beta > 0.0 && beta < 1.0))
        msg << "bistable beta must lie in (0, 1), got " << beta;
    else return;
    throw InvalidModel(msg.str());
}

SpeciesValues reaction_term(const ReactionModel& m, const SpeciesValues& u) noexcept {
    const double a = u[0];
    switch (m.kind) {
        case ModelKind::Fisher: return {m.rho * a * (1.0 - a), 0.0};
        case ModelKind::Zeldovich: return {m.rho * a * a * (1.0 - a), 0.0};
        case ModelKind::NWS: {
            // Integer exponents stay exact for negative overshoots; std::pow would return NaN there.
            const double p = (m.alpha == std::floor(m.alpha) && m.alpha <= 16.0)
                                 ? [&] {
                                       double r = 1.0;
                                       for (int k = 0; k < static_cast<int>(m.alpha); ++k) r *= a;
                                       return r;
                                   }()
                                 : std::pow(a, m.alpha);
            return {m.rho * a * (1.0 - p), 0.0};
        }
        case ModelKind::Bistable: return {m.rho * a * (1.0 - a) * (a - m.beta), 0.0};
        case ModelKind::LotkaVolterra: {
            const double v = u[1];
            return {m.rho * a * (1.0 - a - v), m.rho * v * (3.0 - 4.0 * a - v)};
        }
    }
    return {0.0, 0.0};
}

double exact_speed(const ReactionModel& m) noexcept {
    const double rd = m.rho * m.D;
    switch (m.kind) {
        case ModelKind::Fisher: return 5.0 * std::sqrt(rd / 6.0);
        case ModelKind::Zeldovich: return std::sqrt(rd / 2.0);
        case ModelKind::NWS: return (m.alpha + 4.0) / std::sqrt(2.0 * m.alpha + 4.0) * std::sqrt(rd);
        case ModelKind::Bistable: return -(1.0 + m.beta) * std::sqrt(rd / 2.0);
        case ModelKind::LotkaVolterra: return std::sqrt(rd / 6.0);
    }
    return 0.0;
}

SpeciesValues exact_solution(const ReactionModel& m, double x, double t) noexcept {
    const double xi = x - exact_speed(m) * t;
    switch (m.kind) {
        case ModelKind::Fisher: {
            const double u = logistic_complement(std::sqrt(m.rho / (6.0 * m.D)) * xi);
            return {u * u, 0.0};
        }
        case ModelKind::Zeldovich: return {logistic_complement(std::sqrt(m.rho / (2.0 * m.D)) * xi), 0.0};
        case ModelKind::NWS: {
            const double z = -m.alpha / (2.0 * std::sqrt(2.0 * m.alpha + 4.0)) * std::sqrt(m.rho / m.D) * xi;
            // Evaluated as printed: the far tail rounds to exactly zero once tanh(z) rounds to -1.
            const double base = 0.5 * clamped_tanh(z) + 0.5;
            return {std::pow(base, 2.0 / m.alpha), 0.0};
        }
        case ModelKind::Bistable: {
            const double z = (1.0 - m.beta) / 4.0 * std::sqrt(2.0 * m.rho / m.D) * xi;
            // Same as (1+beta)/2 + (1-beta)/2 tanh(z), arranged so the left tail is exactly beta.
            return {m.beta + (1.0 - m.beta) * (0.5 + 0.5 * clamped_tanh(z)), 0.0};
        }
        case ModelKind::LotkaVolterra: {
            const double th = clamped_tanh(0.5 * std::sqrt(3.0 * m.rho / (2.0 * m.D)) * xi);
            const double w = 1.0 - th;
            return {0.5 * (1.0 + th), 0.75 * w * w};
        }
    }
    return {0.0, 0.0};
}

SpeciesValues diffusion_matrix(const ReactionModel& m) noexcept {
    if (m.kind == ModelKind::LotkaVolterra) return {m.D, m.D / 3.0};
    return {m.D, 0.0};
}

BoundarySpec equilibrium_limits(const ReactionModel& m) {
    switch (m.kind) {
        case ModelKind::Fisher:
        case ModelKind::Zeldovich:
        case ModelKind::NWS: return {{1.0}, {0.0}};
        case ModelKind::Bistable: return {{m.beta}, {1.0}};
        case ModelKind::LotkaVolterra: return {{0.0, 3.0}, {1.0, 0.0}};
    }
    return {};
}

double front_level(const ReactionModel& m) noexcept {
    return m.kind == ModelKind::Bistable ? 0.5 * (1.0 + m.beta) : 0.5;
}

StateField sample_exact(const ReactionModel& model, const Grid& grid, double t) {
    StateField field(model.species_count(), grid.n_points());
    for (int i = 0; i < grid.n_points(); ++i) {
        const auto u = exact_solution(model, grid.x(i), t);
        for (int s = 0; s < model.species_count(); ++s) field(s, i) = u[static_cast<std::size_t>(s)];
    }
    return field;
}

}  // namespace rdweno
