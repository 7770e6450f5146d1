#pragma once

#include <cstddef>
#include <vector>

namespace levyfp {

/// Uniform grid of interior nodes on the open interval (-l, l).
///
/// Node i (0-based, i = 0..n_interior-1) sits at x = -l + (i+1)*dx with
/// dx = 2l/(n_interior+1). The boundary points +-l and everything outside
/// the interval carry the value 0 (homogeneous Dirichlet). n_interior is
/// required to be odd so that x = 0 is a node.
class Grid {
public:
    Grid(double half_width, std::size_t n_interior);

    double half_width() const { return half_width_; }
    std::size_t n_interior() const { return n_interior_; }
    double dx() const { return dx_; }

    double node(std::size_t i) const { return -half_width_ + static_cast<double>(i + 1) * dx_; }
    /// Index of the node at x = 0 (exists because n_interior is odd).
    std::size_t center_index() const { return n_interior_ / 2; }

    std::vector<double> nodes() const;

    bool operator==(const Grid& other) const {
        return half_width_ == other.half_width_ && n_interior_ == other.n_interior_;
    }

private:
    double half_width_;
    std::size_t n_interior_;
    double dx_;
};

inline Grid make_grid(double half_width, std::size_t n_interior) {
    return Grid(half_width, n_interior);
}

/// Nonnegative grid function with (after normalize) unit trapezoid mass.
struct Density {
    Grid grid;
    std::vector<double> values;  // one per interior node

    Density(Grid g, std::vector<double> v);
};

/// Trapezoid quadrature of the density over (-l, l); boundary terms vanish
/// by the Dirichlet convention, so this is dx * sum(values).
double trapezoid_mass(const Density& d);

/// Same quadrature applied to a raw vector on the grid.
double trapezoid_mass(const Grid& g, const std::vector<double>& values);

/// Scale to unit trapezoid mass. Throws if the mass is not positive.
Density normalize(const Density& d);

/// Mirror the density about x = 0 (exact index reversal).
Density reflect(const Density& d);

/// Trapezoid L1 distance between two densities on the same grid.
double l1_distance(const Density& a, const Density& b);

}  // namespace levyfp
