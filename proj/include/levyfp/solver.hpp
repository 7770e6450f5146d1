#pragma once

#include <cstddef>
#include <optional>

#include "levyfp/generator.hpp"
#include "levyfp/grid.hpp"

namespace levyfp {

/// A solved stationary density with its certificates.
///
/// residual_inf is ||M p - mu p||_inf / ||p||_inf where mu is the computed
/// leak eigenvalue of the truncated generator (mu == 0 up to rounding when
/// the domain loses no mass, e.g. the Gaussian cases); leak_rate = -mu.
/// clipped_mass is the (tiny) negative mass removed by the negativity
/// policy before renormalization.
struct SolveResult {
    Density density;
    double residual_inf = 0.0;
    double leak_rate = 0.0;
    double clipped_mass = 0.0;
    std::size_t iterations = 0;  // refinement or time steps
};

struct DirectOptions {
    double rcond_min = 1e-14;        // reject worse-conditioned systems
    double residual_tol = 1e-10;     // eigen-residual target (relative)
    std::size_t max_refinements = 200;
};

/// Stationary density of the truncated generator: LU-solve of the system with
/// the center row replaced by the trapezoid normalization, then inverse-
/// iteration refinement (reusing the factorization) onto the principal
/// eigenmode, which is the common limit of this solver and the transient one.
SolveResult solve_stationary_direct(const GeneratorMatrix& M, const DirectOptions& opts = {});

struct TransientOptions {
    double dt = 0.1;
    double tol = 1e-9;               // on ||p_{k+1} - p_k||_inf / dt
    std::size_t max_steps = 200000;
};

/// Implicit Euler march p <- (I - dt M)^{-1} p from a truncated standard
/// Gaussian, renormalizing every step; stops when the per-step update rate
/// drops below tol.
SolveResult solve_stationary_transient(const GeneratorMatrix& M, const TransientOptions& opts = {});

/// Exact Brownian-case stationary density p ~ exp[(b x^2 - x^4/2)/sigma^2],
/// evaluated on the grid (log-scaled to avoid overflow) and normalized.
Density gaussian_stationary_analytic(double b, double sigma, const Grid& grid);

}  // namespace levyfp
