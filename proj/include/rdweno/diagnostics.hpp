#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rdweno/grid.hpp"

namespace rdweno {

/// How pointwise errors e_i over the N+1 nodes are summed.
enum class NormConvention {
    /// L1 = sum|e| / (N+1), L2 = sqrt(sum e^2 / (N+1)); matches the reference error tables.
    NodeMean,
    /// L1 = dx sum|e|, L2 = sqrt(dx sum e^2).
    Integral,
};

struct ErrorNorms {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;

    bool operator==(const ErrorNorms&) const = default;
};

/// Norms of numeric - exact, one entry per species. Linf = max|e| under either convention.
[[nodiscard]] std::vector<ErrorNorms> error_norms(const StateField& numeric, const StateField& exact, double dx,
                                                  NormConvention convention = NormConvention::NodeMean);

class UndefinedOrder : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Observed order between consecutive (N, error) rows: log(e_k/e_{k+1}) / log(N_{k+1}/N_k).
[[nodiscard]] std::vector<double> convergence_order(const std::vector<std::pair<int, double>>& errors);

class NoCrossing : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InsufficientSamples : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Position where species `species` crosses `level`, by linear interpolation
 * inside the bracketing interval [x_i, x_{i+1}].
 *
 * With no `previous` position the first crossing from the left is used;
 * otherwise the crossing closest to `previous`. Throws NoCrossing if the
 * level is never bracketed.
 */
[[nodiscard]] double front_position(const StateField& field, const Grid& grid, double level, int species = 0,
                                    std::optional<double> previous = std::nullopt);

struct FrontSample {
    double t;
    double x;
};

/// Time series of front positions; samples are strictly increasing in t.
struct FrontTrack {
    double level = 0.5;
    std::vector<FrontSample> samples;

    void push(double t, double x);
};

/// Least-squares slope of x versus t over the last `window` + 1 samples.
[[nodiscard]] double front_speed(const FrontTrack& track, std::size_t window);

/// Window covering the samples in the trailing `fraction` of elapsed time (at least one interval).
[[nodiscard]] std::size_t trailing_window(const FrontTrack& track, double fraction = 0.25);

/// Trailing speed estimate after every sample, each over the last `fraction` of the elapsed time.
[[nodiscard]] std::vector<FrontSample> speed_series(const FrontTrack& track, double fraction = 0.25);

/// Records the front of one species after each step, following the previous crossing.
class FrontTracker {
public:
    FrontTracker(Grid grid, double level, int species = 0, int stride = 1);

    void observe(std::int64_t step, double t, const StateField& field);
    [[nodiscard]] const FrontTrack& track() const noexcept { return track_; }

private:
    Grid grid_;
    int species_;
    int stride_;
    FrontTrack track_;
};

}  // namespace rdweno
