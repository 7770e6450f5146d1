#include "levyfp/generator.hpp"

#include <cmath>

namespace levyfp {

namespace {

// Local second-difference coefficient the noise contributes; the hybrid
// drift switch compares the advective flux against it.
double local_diffusion(const NoiseSpec& noise, const JumpStencil* stencil) {
    if (noise.is_gaussian()) {
        const double s = noise.as_gaussian().sigma;
        return 0.5 * s * s;
    }
    const auto& st = noise.as_stable();
    return std::pow(st.epsilon, st.alpha) * stencil->inner_coeff;
}

}  // namespace

GeneratorMatrix assemble(const Grid& grid, const DriftSpec& drift, const NoiseSpec& noise,
                         DriftScheme scheme) {
    const auto n = static_cast<Eigen::Index>(grid.n_interior());
    const double dx = grid.dx();
    const double l = grid.half_width();

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);

    // Noise part.
    JumpStencil stencil{grid, 0.0, {}, 0.0, 0.0};
    if (noise.is_stable()) {
        const auto& st = noise.as_stable();
        stencil = build_stencil(grid, st.alpha);
        const double coef = std::pow(st.epsilon, st.alpha);
        const double inv_dx2 = 1.0 / (dx * dx);
        const double diag_inner = -2.0 * stencil.inner_coeff * inv_dx2;
        double wsum = 0.0;
        for (double w : stencil.outer_weights) wsum += w;
        const double diag = coef * (diag_inner - 2.0 * wsum - 2.0 * stencil.tail_coeff);
        for (Eigen::Index i = 0; i < n; ++i) {
            M(i, i) += diag;
            for (Eigen::Index k = 1; k <= n - 1 - i; ++k)
                M(i, i + k) += coef * ((k == 1 ? stencil.inner_coeff * inv_dx2 : 0.0) +
                                       stencil.outer_weights[static_cast<std::size_t>(k - 1)]);
            for (Eigen::Index k = 1; k <= i; ++k)
                M(i, i - k) += coef * ((k == 1 ? stencil.inner_coeff * inv_dx2 : 0.0) +
                                       stencil.outer_weights[static_cast<std::size_t>(k - 1)]);
        }
    } else {
        const double s = noise.as_gaussian().sigma;
        const double d2 = 0.5 * s * s / (dx * dx);
        for (Eigen::Index i = 0; i < n; ++i) {
            M(i, i) += -2.0 * d2;
            if (i > 0) M(i, i - 1) += d2;
            if (i + 1 < n) M(i, i + 1) += d2;
        }
    }

    // Conservative drift part: row i gets -(F_{i+1} - F_i)/dx, where flux j
    // sits between nodes j-1 and j (Dirichlet zero outside).
    const double d_loc = local_diffusion(noise, noise.is_stable() ? &stencil : nullptr);
    for (Eigen::Index j = 0; j <= n; ++j) {
        const double xh = -l + (static_cast<double>(j) + 0.5) * dx;
        const double a = drift(xh);
        bool central = false;
        switch (scheme) {
            case DriftScheme::Central: central = true; break;
            case DriftScheme::Upwind: central = false; break;
            case DriftScheme::Hybrid: central = std::fabs(a) * dx <= 2.0 * d_loc; break;
        }
        double cL = 0.0, cR = 0.0;  // coefficients of p_{j-1}, p_j in flux j
        if (central) {
            cL = 0.5 * a;
            cR = 0.5 * a;
        } else if (a > 0.0) {
            cL = a;
        } else {
            cR = a;
        }
        // flux j is the right flux of row j-1 and the left flux of row j
        if (j >= 1) {
            M(j - 1, j - 1) -= cL / dx;
            if (j <= n - 1) M(j - 1, j) -= cR / dx;
        }
        if (j <= n - 1) {
            if (j >= 1) M(j, j - 1) += cL / dx;
            M(j, j) += cR / dx;
        }
    }

    return GeneratorMatrix{grid, drift, noise, scheme, std::move(M)};
}

}  // namespace levyfp
