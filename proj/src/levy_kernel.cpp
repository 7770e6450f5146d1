#include "levyfp/levy_kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "levyfp/quadrature.hpp"

namespace levyfp {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("alpha must lie in (0,2), got " + std::to_string(alpha));
}

}  // namespace

double jump_measure_density(double y, double alpha) {
    require_alpha(alpha);
    if (y == 0.0)
        throw std::invalid_argument("jump measure is concentrated on R\\{0}; y must be nonzero");
    return std::pow(std::fabs(y), -1.0 - alpha);
}

double check_levy_condition(double alpha) {
    require_alpha(alpha);
    // 2 * [ int_0^1 y^{1-alpha} dy + int_1^inf y^{-1-alpha} dy ], each piece by
    // adaptive quadrature with an exact power-law head below the cutoff
    // (the integrands are pure powers, singular at 0 resp. at infinity).
    const double delta = 1e-2;
    const double head_small = std::pow(delta, 2.0 - alpha) / (2.0 - alpha);
    const double small = quad::adaptive_simpson(
        [alpha](double y) { return std::pow(y, 1.0 - alpha); }, delta, 1.0, 1e-13);
    // tail via u = 1/y: int_1^inf y^{-1-alpha} dy = int_0^1 u^{alpha-1} du
    const double head_tail = std::pow(delta, alpha) / alpha;
    const double tail = quad::adaptive_simpson(
        [alpha](double u) { return std::pow(u, alpha - 1.0); }, delta, 1.0, 1e-13);
    return 2.0 * (head_small + small + head_tail + tail);
}

double stable_scale_constant(double alpha) {
    require_alpha(alpha);
    using std::numbers::pi;
    // c_alpha = 2 int_0^inf (1 - cos u) u^{-1-alpha} du, split as:
    //   (0, delta]   : leading series term u^2/2 of the integrand
    //   [delta, 1]   : adaptive quadrature
    //   [1, 2 pi M]  : adaptive quadrature per 2-pi period
    //   [2 pi M, inf): u^{-alpha}/alpha - asymptotic expansion of the cosine
    //                  part at a zero of sin
    const double delta = 2e-3;
    const double head = std::pow(delta, 2.0 - alpha) / (2.0 * (2.0 - alpha));

    auto f = [alpha](double u) { return (1.0 - std::cos(u)) * std::pow(u, -1.0 - alpha); };
    double body = quad::adaptive_simpson(f, delta, 1.0, 1e-13);

    const int periods = 200;
    double lo = 1.0;
    for (int m = 1; m <= periods; ++m) {
        const double hi = 2.0 * pi * m;
        body += quad::adaptive_simpson(f, lo, hi, 1e-14);
        lo = hi;
    }
    const double U = lo;
    const double s = 1.0 + alpha;
    const double tail = std::pow(U, -alpha) / alpha -
                        (s * std::pow(U, -s - 1.0) - s * (s + 1.0) * (s + 2.0) * std::pow(U, -s - 3.0));
    return 2.0 * (head + body + tail);
}

JumpStencil build_stencil(const Grid& grid, double alpha) {
    require_alpha(alpha);
    const double dx = grid.dx();
    const double two_l = 2.0 * grid.half_width();
    const std::size_t K = grid.n_interior() + 1;  // jump nodes y_k = k dx cover (dx, 2l]

    std::vector<double> w(K);
    double model_sum = 0.0;  // trapezoid quadrature of psi(y) = y^2 exp(-y^2) against the kernel
    for (std::size_t k = 1; k <= K; ++k) {
        const double y = static_cast<double>(k) * dx;
        const double trap = (k == 1 || k == K) ? 0.5 * dx : dx;
        w[k - 1] = trap * std::pow(y, -1.0 - alpha);
        model_sum += w[k - 1] * y * y * std::exp(-y * y);
    }

    // Exact integral of psi against the kernel over (0, inf): Gamma(1-alpha/2)/2.
    // The difference to the stencil quadrature of psi both supplies the head
    // integral over (0, dx) and cancels the trapezoid rule's O(dx^{2-alpha})
    // singularity error against the second central difference.
    const double model_exact = 0.5 * std::tgamma(1.0 - 0.5 * alpha);
    const double inner = dx * dx * (model_exact - model_sum);

    const double tail = std::pow(two_l, -alpha) / alpha;
    return JumpStencil{grid, alpha, std::move(w), inner, tail};
}

std::vector<double> apply_jump_operator(const JumpStencil& s, std::span<const double> values,
                                        double exterior_value) {
    const std::size_t n = s.grid.n_interior();
    if (values.size() != n)
        throw std::invalid_argument("stencil and value vector use different grids (" +
                                    std::to_string(n) + " vs " + std::to_string(values.size()) +
                                    " nodes)");
    const double dx = s.grid.dx();
    const double inv_dx2 = 1.0 / (dx * dx);
    const std::size_t K = s.outer_weights.size();

    auto at = [&](std::ptrdiff_t j) -> double {
        return (j >= 0 && j < static_cast<std::ptrdiff_t>(n)) ? values[static_cast<std::size_t>(j)]
                                                              : exterior_value;
    };

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<std::ptrdiff_t>(i);
        const double pi_ = values[i];
        double acc = s.inner_coeff * (at(ii - 1) - 2.0 * pi_ + at(ii + 1)) * inv_dx2;
        for (std::size_t k = 1; k <= K; ++k) {
            const auto kk = static_cast<std::ptrdiff_t>(k);
            acc += s.outer_weights[k - 1] * (at(ii + kk) + at(ii - kk) - 2.0 * pi_);
        }
        acc += (2.0 * exterior_value - 2.0 * pi_) * s.tail_coeff;
        out[i] = acc;
    }
    return out;
}

std::vector<double> apply_jump_operator(const JumpStencil& s, const Density& d) {
    if (!(d.grid == s.grid))
        throw std::invalid_argument("stencil and density use different grids");
    return apply_jump_operator(s, std::span<const double>(d.values), 0.0);
}

}  // namespace levyfp
