#include "rdweno/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rdweno {

std::vector<ErrorNorms> error_norms(const StateField& numeric, const StateField& exact, double dx,
                                   NormConvention convention) {
    if (numeric.species_count() != exact.species_count() || numeric.n_points() != exact.n_points()) {
        throw ShapeMismatch("error_norms: numeric and exact fields differ in shape");
    }
    std::vector<ErrorNorms> out;
    for (int s = 0; s < numeric.species_count(); ++s) {
        const auto a = numeric.species(s);
        const auto b = exact.species(s);
        double sum_abs = 0.0;
        double sum_sq = 0.0;
        double max_abs = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double e = std::abs(a[i] - b[i]);
            sum_abs += e;
            sum_sq += e * e;
            max_abs = std::max(max_abs, e);
        }
        const double weight = convention == NormConvention::Integral ? dx : 1.0 / static_cast<double>(a.size());
        out.push_back({weight * sum_abs, std::sqrt(weight * sum_sq), max_abs});
    }
    return out;
}

std::vector<double> convergence_order(const std::vector<std::pair<int, double>>& errors) {
    std::vector<double> orders;
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
        const auto [n0, e0] = errors[k];
        const auto [n1, e1] = errors[k + 1];
        if (!(e0 > 0.0) || !(e1 > 0.0)) {
            std::ostringstream msg;
            msg << "convergence order undefined for non-positive error at row " << (e0 > 0.0 ? k + 1 : k);
            throw UndefinedOrder(msg.str());
        }
        if (n1 <= n0) throw UndefinedOrder("convergence order needs strictly increasing N");
        orders.push_back(std::log(e0 / e1) / std::log(static_cast<double>(n1) / static_cast<double>(n0)));
    }
    return orders;
}

double front_position(const StateField& field, const Grid& grid, double level, int species,
                      std::optional<double> previous) {
    check_shape(field, grid);
    const auto u = field.species(species);
    double best = std::numeric_limits<double>::quiet_NaN();
    double best_distance = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < grid.n_points(); ++i) {
        const double lo = u[static_cast<std::size_t>(i)] - level;
        const double hi = u[static_cast<std::size_t>(i + 1)] - level;
        if (!(lo * hi <= 0.0)) continue;
        const double denom = u[static_cast<std::size_t>(i + 1)] - u[static_cast<std::size_t>(i)];
        const double x = denom == 0.0 ? grid.x(i) : grid.x(i) + grid.dx * (level - u[static_cast<std::size_t>(i)]) / denom;
        if (!previous) return x;
        const double distance = std::abs(x - *previous);
        if (distance < best_distance) {
            best_distance = distance;
            best = x;
        }
    }
    if (std::isnan(best)) {
        std::ostringstream msg;
        msg << "species " << species << " never crosses level " << level;
        throw NoCrossing(msg.str());
    }
    return best;
}

void FrontTrack::push(double t, double x) {
    if (!samples.empty() && !(t > samples.back().t)) {
        throw std::invalid_argument("front track samples must be strictly increasing in time");
    }
    samples.push_back({t, x});
}

double front_speed(const FrontTrack& track, std::size_t window) {
    if (window < 1 || track.samples.size() < window + 1) {
        std::ostringstream msg;
        msg << "front_speed needs at least " << window + 1 << " samples (window " << window << "), have "
            << track.samples.size();
        throw InsufficientSamples(msg.str());
    }
    const auto first = track.samples.end() - static_cast<std::ptrdiff_t>(window + 1);
    double t_mean = 0.0;
    double x_mean = 0.0;
    for (auto it = first; it != track.samples.end(); ++it) {
        t_mean += it->t;
        x_mean += it->x;
    }
    const double count = static_cast<double>(window + 1);
    t_mean /= count;
    x_mean /= count;
    double sxy = 0.0;
    double sxx = 0.0;
    for (auto it = first; it != track.samples.end(); ++it) {
        sxy += (it->t - t_mean) * (it->x - x_mean);
        sxx += (it->t - t_mean) * (it->t - t_mean);
    }
    return sxy / sxx;
}

std::size_t trailing_window(const FrontTrack& track, double fraction) {
    if (track.samples.size() < 2) throw InsufficientSamples("trailing_window needs at least two samples");
    const double t_end = track.samples.back().t;
    const double cutoff = t_end - fraction * (t_end - track.samples.front().t);
    std::size_t inside = 0;
    for (auto it = track.samples.rbegin(); it != track.samples.rend() && it->t >= cutoff; ++it) ++inside;
    return std::max<std::size_t>(1, inside - 1);
}

std::vector<FrontSample> speed_series(const FrontTrack& track, double fraction) {
    // Running sums make each trailing least-squares fit O(1); times are shifted by t_0 to limit cancellation.
    const auto& s = track.samples;
    std::vector<FrontSample> out;
    if (s.size() < 2) return out;
    const double t0 = s.front().t;
    const double x0 = s.front().x;
    std::vector<double> st(s.size() + 1, 0.0), sx(s.size() + 1, 0.0), stt(s.size() + 1, 0.0), stx(s.size() + 1, 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double t = s[i].t - t0;
        const double x = s[i].x - x0;
        st[i + 1] = st[i] + t;
        sx[i + 1] = sx[i] + x;
        stt[i + 1] = stt[i] + t * t;
        stx[i + 1] = stx[i] + t * x;
    }
    std::size_t begin = 0;
    for (std::size_t end = 1; end < s.size(); ++end) {
        const double cutoff = s[end].t - fraction * (s[end].t - t0);
        while (begin < end && s[begin].t < cutoff) ++begin;
        const std::size_t lo = std::min(begin, end - 1);
        const double n = static_cast<double>(end + 1 - lo);
        const double mt = (st[end + 1] - st[lo]) / n;
        const double mx = (sx[end + 1] - sx[lo]) / n;
        const double sxx = (stt[end + 1] - stt[lo]) - n * mt * mt;
        const double sxy = (stx[end + 1] - stx[lo]) - n * mt * mx;
        out.push_back({s[end].t, sxy / sxx});
    }
    return out;
}

FrontTracker::FrontTracker(Grid grid, double level, int species, int stride)
    : grid_(grid), species_(species), stride_(std::max(1, stride)), track_{level, {}} {}

void FrontTracker::observe(std::int64_t step, double t, const StateField& field) {
    if (step % stride_ != 0) return;
    std::optional<double> previous;
    if (!track_.samples.empty()) previous = track_.samples.back().x;
    try {
        track_.push(t, front_position(field, grid_, track_.level, species_, previous));
    } catch (const NoCrossing&) {
        // A field without a crossing contributes no sample.
    }
}

}  // namespace rdweno
