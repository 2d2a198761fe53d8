#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdweno {

/// Width of the ghost layer needed by the six-point flux stencil.
inline constexpr int kGhostWidth = 3;

/// Smallest cell count for which the six-point stencil fits.
inline constexpr int kMinCells = 6;

class InvalidDomain : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ShapeMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Uniform 1D mesh with N+1 nodes x_i = a + i*dx, i = 0..N.
 *
 * Node i is the centre of the cell [x_i - dx/2, x_i + dx/2]. Immutable once built.
 */
struct Grid {
    double a = 0.0;
    double b = 1.0;
    int n_cells = kMinCells;
    double dx = 1.0 / kMinCells;

    [[nodiscard]] int n_points() const noexcept { return n_cells + 1; }
    [[nodiscard]] double x(int i) const noexcept { return a + i * dx; }
    [[nodiscard]] std::vector<double> nodes() const;
};

Grid make_grid(double a, double b, int n_cells);

/// Dirichlet values at x_0 and x_N, one entry per species.
struct BoundarySpec {
    std::vector<double> left_values;
    std::vector<double> right_values;

    [[nodiscard]] int species_count() const noexcept { return static_cast<int>(left_values.size()); }
};

/**
 * Per-species nodal values at one time level.
 *
 * Each species is stored contiguously so stencil sweeps walk memory linearly.
 */
class StateField {
public:
    StateField() = default;
    StateField(int species_count, int n_points, double fill = 0.0);

    [[nodiscard]] int species_count() const noexcept { return static_cast<int>(values_.size()); }
    [[nodiscard]] int n_points() const noexcept { return n_points_; }

    [[nodiscard]] std::span<double> species(int s) { return values_.at(static_cast<std::size_t>(s)); }
    [[nodiscard]] std::span<const double> species(int s) const {
        return values_.at(static_cast<std::size_t>(s));
    }

    double& operator()(int s, int i) { return values_[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)]; }
    double operator()(int s, int i) const {
        return values_[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)];
    }

    /// Set when a non-finite or runaway value was produced while computing this field.
    [[nodiscard]] bool blown_up() const noexcept { return blown_up_; }
    void set_blown_up(bool flag) noexcept { blown_up_ = flag; }

    /// True when every value is finite and no larger than `threshold` in magnitude.
    [[nodiscard]] bool all_bounded(double threshold) const noexcept;

    bool operator==(const StateField&) const = default;

private:
    std::vector<std::vector<double>> values_;
    int n_points_ = 0;
    bool blown_up_ = false;
};

void check_shape(const StateField& field, const Grid& grid);
void check_shape(const StateField& field, const BoundarySpec& bc);

/// Ghost-extended copy of one species: `ghost_width` copies of the boundary value on each side.
std::vector<double> extend_species(std::span<const double> interior, double left, double right,
                                   int ghost_width = kGhostWidth);

/// Ghost-extended copy of every species; entry s has length n_points + 2*ghost_width.
std::vector<std::vector<double>> extend_with_ghosts(const StateField& field, const BoundarySpec& bc,
                                                    int ghost_width = kGhostWidth);

/// Overwrites nodes 0 and N of every species with the boundary values.
void pin_boundaries(StateField& field, const BoundarySpec& bc);

[[nodiscard]] StateField apply_dirichlet(StateField field, const BoundarySpec& bc);

}  // namespace rdweno
