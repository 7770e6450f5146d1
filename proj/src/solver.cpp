#include "levyfp/solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace levyfp {

namespace {

// Negativity policy: undershoots below -1e-6 * max(p), or clipped mass above
// 1% of the total, flag an under-resolved discretization; smaller ones are
// clipped to zero and the density renormalized.
double clip_negatives(Eigen::VectorXd& p, double dx) {
    const double pmax = p.maxCoeff();
    if (!(pmax > 0.0))
        throw std::runtime_error("stationary solve produced a non-positive density");
    const double floor = -1e-6 * pmax;
    double clipped = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0) {
            if (p[i] < floor)
                throw std::runtime_error(
                    "stationary solve produced negative values beyond tolerance (min " +
                    std::to_string(p.minCoeff()) + " vs max " + std::to_string(pmax) +
                    "); refine the grid or adjust parameters");
            clipped += -p[i] * dx;
            p[i] = 0.0;
        }
    }
    if (clipped > 0.01)
        throw std::runtime_error("clipped negative mass " + std::to_string(clipped) +
                                 " exceeds 1%; discretization failure");
    return clipped;
}

Density to_density(const Grid& grid, const Eigen::VectorXd& p) {
    std::vector<double> v(p.data(), p.data() + p.size());
    return normalize(Density(grid, std::move(v)));
}

}  // namespace

SolveResult solve_stationary_direct(const GeneratorMatrix& M, const DirectOptions& opts) {
    const auto n = M.entries.rows();
    const double dx = M.grid.dx();
    const auto c = static_cast<Eigen::Index>(M.grid.center_index());

    // Replace the center row with the trapezoid normalization dx * sum(p) = 1.
    Eigen::MatrixXd A = M.entries;
    A.row(c).setConstant(dx);

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rc = lu.rcond();
    if (!(rc > opts.rcond_min))
        throw std::runtime_error("stationary system is ill-conditioned (rcond = " +
                                 std::to_string(rc) +
                                 "); change the grid or parameters");

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs[c] = 1.0;
    Eigen::VectorXd x = lu.solve(rhs);

    // Inverse-iteration refinement onto the principal eigenmode of M, reusing
    // the factorization: the fixed point of x <- A^{-1} (mu x with center
    // entry 1) satisfies M x = mu x exactly. The truncated generator loses
    // mass (leak rate -mu), so without this step the row-replaced solution
    // carries a spurious source at the center node.
    double mu = 0.0;
    double res = 0.0;
    std::size_t it = 0;
    for (; it < opts.max_refinements; ++it) {
        const Eigen::VectorXd Mx = M.entries * x;
        mu = dx * Mx.sum();  // Rayleigh quotient against the mass functional
        res = (Mx - mu * x).lpNorm<Eigen::Infinity>() / x.lpNorm<Eigen::Infinity>();
        if (!std::isfinite(res))
            throw std::runtime_error("stationary solve diverged (non-finite residual)");
        if (res <= opts.residual_tol) break;
        rhs = mu * x;
        rhs[c] = 1.0;
        x = lu.solve(rhs);
    }
    if (res > opts.residual_tol)
        throw std::runtime_error("eigenmode refinement stalled at residual " +
                                 std::to_string(res));

    const double clipped = clip_negatives(x, dx);
    SolveResult out{to_density(M.grid, x), res, -mu, clipped, it};
    return out;
}

SolveResult solve_stationary_transient(const GeneratorMatrix& M, const TransientOptions& opts) {
    if (!(opts.dt > 0.0)) throw std::invalid_argument("transient dt must be positive");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("transient tol must be positive");
    const auto n = M.entries.rows();
    const double dx = M.grid.dx();

    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - opts.dt * M.entries;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);

    // Truncated standard Gaussian initial condition.
    Eigen::VectorXd p(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double xv = M.grid.node(static_cast<std::size_t>(i));
        p[i] = std::exp(-0.5 * xv * xv);
    }
    p /= dx * p.sum();

    double leak = 0.0;
    double delta = 0.0;
    for (std::size_t k = 1; k <= opts.max_steps; ++k) {
        Eigen::VectorXd q = lu.solve(p);
        const double mass = dx * q.sum();
        if (!(mass > 0.0) || !std::isfinite(mass))
            throw std::runtime_error("transient step lost all mass; reduce dt");
        leak = (1.0 - mass) / opts.dt;
        q /= mass;
        delta = (q - p).lpNorm<Eigen::Infinity>() / opts.dt;
        p = std::move(q);
        if (delta <= opts.tol) {
            const double clipped = clip_negatives(p, dx);
            return SolveResult{to_density(M.grid, p), delta, leak, clipped, k};
        }
    }
    throw std::runtime_error("transient solver did not converge in " +
                             std::to_string(opts.max_steps) + " steps (last residual " +
                             std::to_string(delta) + ")");
}

Density gaussian_stationary_analytic(double b, double sigma, const Grid& grid) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("sigma must be positive, got " + std::to_string(sigma));
    const std::size_t n = grid.n_interior();
    std::vector<double> logp(n);
    double lmax = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.node(i);
        logp[i] = (b * x * x - 0.5 * x * x * x * x) / (sigma * sigma);
        lmax = std::max(lmax, logp[i]);
    }
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(logp[i] - lmax);
    return normalize(Density(grid, std::move(v)));
}

}  // namespace levyfp
