#include "rdweno/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rdweno {

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(static_cast<std::size_t>(n_points()));
    for (int i = 0; i < n_points(); ++i) xs[static_cast<std::size_t>(i)] = x(i);
    return xs;
}

Grid make_grid(double a, double b, int n_cells) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
        std::ostringstream msg;
        msg << "invalid domain: need a < b, got [" << a << ", " << b << "]";
        throw InvalidDomain(msg.str());
    }
    if (n_cells < kMinCells) {
        std::ostringstream msg;
        msg << "invalid domain: n_cells must be at least " << kMinCells << " for the six-point stencil, got "
            << n_cells;
        throw InvalidDomain(msg.str());
    }
    return Grid{a, b, n_cells, (b - a) / n_cells};
}

StateField::StateField(int species_count, int n_points, double fill) : n_points_(n_points) {
    if (species_count < 1 || n_points < 1) throw ShapeMismatch("state field needs at least one species and one point");
    values_.assign(static_cast<std::size_t>(species_count),
                   std::vector<double>(static_cast<std::size_t>(n_points), fill));
}

bool StateField::all_bounded(double threshold) const noexcept {
    for (const auto& row : values_) {
        for (double v : row) {
            if (!(std::abs(v) <= threshold)) return false;  // NaN fails the comparison
        }
    }
    return true;
}

void check_shape(const StateField& field, const Grid& grid) {
    if (field.n_points() != grid.n_points()) {
        std::ostringstream msg;
        msg << "shape mismatch: field has " << field.n_points() << " points, grid has " << grid.n_points();
        throw ShapeMismatch(msg.str());
    }
}

void check_shape(const StateField& field, const BoundarySpec& bc) {
    if (bc.left_values.size() != bc.right_values.size() || bc.species_count() != field.species_count()) {
        std::ostringstream msg;
        msg << "shape mismatch: field has " << field.species_count() << " species, boundary spec has "
            << bc.left_values.size() << "/" << bc.right_values.size();
        throw ShapeMismatch(msg.str());
    }
}

std::vector<double> extend_species(std::span<const double> interior, double left, double right, int ghost_width) {
    if (ghost_width < 0) throw ShapeMismatch("ghost width must be non-negative");
    const auto g = static_cast<std::size_t>(ghost_width);
    std::vector<double> out(interior.size() + 2 * g);
    for (std::size_t k = 0; k < g; ++k) {
        out[k] = left;
        out[g + interior.size() + k] = right;
    }
    std::copy(interior.begin(), interior.end(), out.begin() + static_cast<std::ptrdiff_t>(g));
    return out;
}

std::vector<std::vector<double>> extend_with_ghosts(const StateField& field, const BoundarySpec& bc,
                                                    int ghost_width) {
    check_shape(field, bc);
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(field.species_count()));
    for (int s = 0; s < field.species_count(); ++s) {
        const auto idx = static_cast<std::size_t>(s);
        out.push_back(extend_species(field.species(s), bc.left_values[idx], bc.right_values[idx], ghost_width));
    }
    return out;
}

void pin_boundaries(StateField& field, const BoundarySpec& bc) {
    check_shape(field, bc);
    const int last = field.n_points() - 1;
    for (int s = 0; s < field.species_count(); ++s) {
        field(s, 0) = bc.left_values[static_cast<std::size_t>(s)];
        field(s, last) = bc.right_values[static_cast<std::size_t>(s)];
    }
}

StateField apply_dirichlet(StateField field, const BoundarySpec& bc) {
    pin_boundaries(field, bc);
    return field;
}

}  // namespace rdweno
