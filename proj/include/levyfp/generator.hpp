#pragma once

#include <Eigen/Dense>

#include "levyfp/drift.hpp"
#include "levyfp/grid.hpp"
#include "levyfp/levy_kernel.hpp"
#include "levyfp/noise.hpp"

namespace levyfp {

/// Flux discretization of the conservative drift term -d/dx [f(b,x) p].
///
/// Hybrid switches per half-node between the second-order central flux and
/// the monotone upwind flux, picking central exactly when the off-diagonal
/// entries of drift + local diffusion stay nonnegative
/// (|f| dx <= 2 * D_loc, with D_loc the second-difference coefficient the
/// noise contributes: sigma^2/2 for Gaussian, eps^alpha * inner_coeff for
/// stable). This keeps the matrix an M-matrix wherever upwinding would.
enum class DriftScheme { Hybrid, Upwind, Central };

/// Dense discretization of the adjoint generator A* = drift part + noise part.
/// Stable noise: M = D + eps^alpha * J with J the jump stencil matrix
/// (symmetric). Gaussian noise: M = D + (sigma^2/2) * second difference.
struct GeneratorMatrix {
    Grid grid;
    DriftSpec drift;
    NoiseSpec noise;
    DriftScheme scheme;
    Eigen::MatrixXd entries;
};

GeneratorMatrix assemble(const Grid& grid, const DriftSpec& drift, const NoiseSpec& noise,
                         DriftScheme scheme = DriftScheme::Hybrid);

}  // namespace levyfp
