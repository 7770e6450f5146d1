#include "levyfp/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace levyfp {

Grid::Grid(double half_width, std::size_t n_interior)
    : half_width_(half_width), n_interior_(n_interior) {
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw std::invalid_argument("grid half-width must be positive and finite, got " +
                                    std::to_string(half_width));
    if (n_interior < 3)
        throw std::invalid_argument("grid needs at least 3 interior nodes, got " +
                                    std::to_string(n_interior));
    if (n_interior % 2 == 0)
        throw std::invalid_argument("interior node count must be odd so x=0 is a node, got " +
                                    std::to_string(n_interior));
    dx_ = 2.0 * half_width / static_cast<double>(n_interior + 1);
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(n_interior_);
    for (std::size_t i = 0; i < n_interior_; ++i) xs[i] = node(i);
    return xs;
}

Density::Density(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.n_interior())
        throw std::invalid_argument("density has " + std::to_string(values.size()) +
                                    " values for a grid of " + std::to_string(grid.n_interior()) +
                                    " nodes");
}

double trapezoid_mass(const Grid& g, const std::vector<double>& values) {
    double s = 0.0;
    for (double v : values) s += v;
    return g.dx() * s;
}

double trapezoid_mass(const Density& d) { return trapezoid_mass(d.grid, d.values); }

Density normalize(const Density& d) {
    const double mass = trapezoid_mass(d);
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw std::runtime_error("cannot normalize density with non-positive mass " +
                                 std::to_string(mass) + " (upstream solver failure)");
    std::vector<double> v = d.values;
    for (double& x : v) x /= mass;
    return Density(d.grid, std::move(v));
}

Density reflect(const Density& d) {
    std::vector<double> v(d.values.rbegin(), d.values.rend());
    return Density(d.grid, std::move(v));
}

double l1_distance(const Density& a, const Density& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("l1_distance needs densities on the same grid");
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += std::fabs(a.values[i] - b.values[i]);
    return a.grid.dx() * s;
}

}  // namespace levyfp
