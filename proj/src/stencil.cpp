#include "rdweno/stencil.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace rdweno {

namespace {

template <std::size_t N>
constexpr std::array<double, N> to_doubles(const std::array<Rational, N>& r) {
    std::array<double, N> out{};
    for (std::size_t k = 0; k < N; ++k) out[k] = r[k].value();
    return out;
}

struct DoubleTerm {
    double weight;
    std::array<double, 6> coeffs;
};

constexpr DoubleTerm to_double_term(const SquaredTerm& t) {
    DoubleTerm out{t.weight.value(), {}};
    for (std::size_t k = 0; k < 6; ++k) out.coeffs[k] = static_cast<double>(t.coeffs[k]);
    return out;
}

constexpr auto kFd = to_doubles(coefficients::kFdFlux);
constexpr auto kCentral = to_doubles(coefficients::kCentralFlux);
constexpr std::array<std::array<double, 6>, 3> kSub{to_doubles(coefficients::kSubstencilFlux[0]),
                                                    to_doubles(coefficients::kSubstencilFlux[1]),
                                                    to_doubles(coefficients::kSubstencilFlux[2])};

constexpr std::array<DoubleTerm, 10> make_central_terms() {
    std::array<DoubleTerm, 10> out{};
    for (std::size_t r = 0; r < out.size(); ++r) out[r] = to_double_term(coefficients::kCentralSmoothness[r]);
    return out;
}
constexpr auto kCentralTerms = make_central_terms();

constexpr std::array<std::array<DoubleTerm, 2>, 3> make_indicator_terms() {
    std::array<std::array<DoubleTerm, 2>, 3> out{};
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t j = 0; j < 2; ++j) out[k][j] = to_double_term(coefficients::kSmoothness[k][j]);
    }
    return out;
}
constexpr auto kIndicatorTerms = make_indicator_terms();

constexpr LinearWeightTable kTable{
    to_doubles(coefficients::kLinearWeights),
    coefficients::kSigmaPlus.value(),
    coefficients::kSigmaMinus.value(),
    to_doubles(coefficients::kGammaPlus),
    to_doubles(coefficients::kGammaMinus),
    to_doubles(coefficients::kTheta),
};

inline double dot6(const std::array<double, 6>& c, const StencilWindow& w) noexcept {
    return c[0] * w[0] + c[1] * w[1] + c[2] * w[2] + c[3] * w[3] + c[4] * w[4] + c[5] * w[5];
}

inline double squared_sum(std::span<const DoubleTerm> terms, const StencilWindow& w) noexcept {
    double sum = 0.0;
    for (const auto& t : terms) {
        const double v = dot6(t.coeffs, w);
        sum += t.weight * v * v;
    }
    return sum;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

// Split-weight normalization shared by LSZ and MWENO: returns sigma+ w+ - sigma- w-.
inline std::array<double, 3> recombine(const std::array<double, 3>& ap, const std::array<double, 3>& am) noexcept {
    const double sp = ap[0] + ap[1] + ap[2];
    const double sm = am[0] + am[1] + am[2];
    std::array<double, 3> w{};
    for (std::size_t k = 0; k < 3; ++k) w[k] = kTable.sigma_plus * (ap[k] / sp) - kTable.sigma_minus * (am[k] / sm);
    return w;
}

}  // namespace

std::string_view to_string(SchemeKind kind) noexcept {
    switch (kind) {
        case SchemeKind::FD6: return "FD6";
        case SchemeKind::WenoLsz: return "WENO-LSZ";
        case SchemeKind::Mweno: return "MWENO";
        case SchemeKind::Cweno: return "CWENO";
    }
    return "?";
}

SchemeKind scheme_from_string(std::string_view name) {
    const auto n = lower(name);
    if (n == "fd6" || n == "fd") return SchemeKind::FD6;
    if (n == "weno-lsz" || n == "weno_lsz" || n == "lsz") return SchemeKind::WenoLsz;
    if (n == "mweno") return SchemeKind::Mweno;
    if (n == "cweno") return SchemeKind::Cweno;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected FD6, WENO-LSZ, MWENO or CWENO)");
}

double default_epsilon(SchemeKind kind) noexcept {
    switch (kind) {
        case SchemeKind::WenoLsz: return 1e-6;
        case SchemeKind::Mweno: return 1e-30;
        case SchemeKind::Cweno: return 1e-40;
        case SchemeKind::FD6: break;
    }
    return 1e-6;
}

void SchemeSpec::validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        std::ostringstream msg;
        msg << "scheme epsilon must be positive and finite, got " << epsilon;
        throw std::invalid_argument(msg.str());
    }
}

const LinearWeightTable& linear_weights() noexcept { return kTable; }

double fd_flux(const StencilWindow& w) noexcept { return dot6(kFd, w); }

std::array<double, 3> substencil_fluxes(const StencilWindow& w) noexcept {
    return {dot6(kSub[0], w), dot6(kSub[1], w), dot6(kSub[2], w)};
}

double central_flux(const StencilWindow& w) noexcept { return dot6(kCentral, w); }

std::array<double, 3> smoothness_indicators(const StencilWindow& w) noexcept {
    return {squared_sum(kIndicatorTerms[0], w), squared_sum(kIndicatorTerms[1], w),
            squared_sum(kIndicatorTerms[2], w)};
}

double central_smoothness(const StencilWindow& w) noexcept { return squared_sum(kCentralTerms, w); }

std::array<double, 3> lsz_weights(const std::array<double, 3>& betas, double eps) {
    std::array<double, 3> ap{};
    std::array<double, 3> am{};
    for (std::size_t k = 0; k < 3; ++k) {
        const double r = betas[k] + eps;
        const double inv = 1.0 / (r * r);
        ap[k] = kTable.gamma_plus[k] * inv;
        am[k] = kTable.gamma_minus[k] * inv;
    }
    const auto star = recombine(ap, am);

    std::array<double, 3> mapped{};
    double sum = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        const double d = kTable.d[k];
        const double w = star[k];
        mapped[k] = w * (d + d * d - 3.0 * d * w + w * w) / (d * d + w * (1.0 - 2.0 * d));
        sum += mapped[k];
    }
    if (sum == 0.0) throw DegenerateWeights("WENO-LSZ mapped weights sum to zero");
    for (auto& m : mapped) m /= sum;
    return mapped;
}

std::array<double, 3> mweno_weights(const std::array<double, 3>& betas, double eps) noexcept {
    const double tau = std::abs(betas[0] - betas[2]);
    std::array<double, 3> ap{};
    std::array<double, 3> am{};
    for (std::size_t k = 0; k < 3; ++k) {
        const double q = tau / (betas[k] + eps);
        const double z = 1.0 + q * q;
        ap[k] = kTable.gamma_plus[k] * z;
        am[k] = kTable.gamma_minus[k] * z;
    }
    return recombine(ap, am);
}

std::array<double, 4> cweno_weights(const std::array<double, 3>& betas, double beta_c, double eps) noexcept {
    const double tau6 = std::abs(beta_c - (5.0 * betas[0] + 14.0 * betas[1] + 5.0 * betas[2]) / 24.0);
    const std::array<double, 4> all_betas{betas[0], betas[1], betas[2], beta_c};
    std::array<double, 4> alpha{};
    double sum = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        alpha[k] = kTable.theta[k] * (1.0 + tau6 / (all_betas[k] + eps));
        sum += alpha[k];
    }
    for (auto& a : alpha) a /= sum;
    return alpha;
}

double weno_flux(const StencilWindow& w, const SchemeSpec& spec) {
    switch (spec.kind) {
        case SchemeKind::FD6: return fd_flux(w);
        case SchemeKind::WenoLsz: {
            const auto g = substencil_fluxes(w);
            const auto om = lsz_weights(smoothness_indicators(w), spec.epsilon);
            return om[0] * g[0] + om[1] * g[1] + om[2] * g[2];
        }
        case SchemeKind::Mweno: {
            const auto g = substencil_fluxes(w);
            const auto om = mweno_weights(smoothness_indicators(w), spec.epsilon);
            return om[0] * g[0] + om[1] * g[1] + om[2] * g[2];
        }
        case SchemeKind::Cweno: {
            const auto g = substencil_fluxes(w);
            const auto om = cweno_weights(smoothness_indicators(w), central_smoothness(w), spec.epsilon);
            return om[0] * g[0] + om[1] * g[1] + om[2] * g[2] + om[3] * central_flux(w);
        }
    }
    return fd_flux(w);
}

void interface_fluxes(std::span<const double> values, const SchemeSpec& spec, std::span<double> fluxes) {
    if (values.size() < fluxes.size() + 5) throw ShapeMismatch("interface_fluxes: input shorter than stencil sweep");
    StencilWindow w{};
    for (std::size_t j = 0; j < fluxes.size(); ++j) {
        std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(j), 6, w.begin());
        fluxes[j] = weno_flux(w, spec);
    }
}

void second_derivative_extended(std::span<const double> extended, double dx, const SchemeSpec& spec,
                                std::span<double> flux_scratch, std::span<double> out) {
    const std::size_t n_points = out.size();
    if (extended.size() != n_points + 2 * kGhostWidth || flux_scratch.size() + 1 != n_points) {
        throw ShapeMismatch("second_derivative_extended: inconsistent buffer sizes");
    }
    // flux_scratch[j] is g_{j+1/2}, j = 0..N-1, read from u_{j-2}..u_{j+3}.
    interface_fluxes(extended.subspan(kGhostWidth - 2), spec, flux_scratch);
    const double inv_dx2 = 1.0 / (dx * dx);
    out[0] = 0.0;
    out[n_points - 1] = 0.0;
    for (std::size_t i = 1; i + 1 < n_points; ++i) out[i] = (flux_scratch[i] - flux_scratch[i - 1]) * inv_dx2;
}

StateField second_derivative(const StateField& field, const Grid& grid, const BoundarySpec& bc,
                             const SchemeSpec& spec) {
    check_shape(field, grid);
    check_shape(field, bc);
    StateField out(field.species_count(), field.n_points());
    std::vector<double> flux(static_cast<std::size_t>(grid.n_cells));
    bool finite = true;
    for (int s = 0; s < field.species_count(); ++s) {
        const auto idx = static_cast<std::size_t>(s);
        const auto ext = extend_species(field.species(s), bc.left_values[idx], bc.right_values[idx]);
        second_derivative_extended(ext, grid.dx, spec, flux, out.species(s));
        for (double v : out.species(s)) finite = finite && std::isfinite(v);
    }
    out.set_blown_up(!finite);
    return out;
}

}  // namespace rdweno
