#pragma once

// Test-only oracles, kept independent of the library's quadrature path:
// adaptive 5-point Gauss-Legendre for integrals, plus the closed forms the
// implementation must agree with.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracles {

inline double gauss5(const std::function<double(double)>& f, double a, double b) {
    static const double xs[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                 0.5384693101056831, 0.9061798459386640};
    static const double ws[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += ws[i] * f(m + h * xs[i]);
    return h * s;
}

inline double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                             double tol = 1e-12, int depth = 48) {
    const double whole = gauss5(f, a, b);
    const double m = 0.5 * (a + b);
    const double split = gauss5(f, a, m) + gauss5(f, m, b);
    if (depth <= 0 || std::fabs(split - whole) <= tol) return split;
    return adaptive_gauss(f, a, m, 0.5 * tol, depth - 1) +
           adaptive_gauss(f, m, b, 0.5 * tol, depth - 1);
}

/// Closed form of the stable scale constant; pi at alpha = 1.
inline double scale_constant_closed(double alpha) {
    using std::numbers::pi;
    if (std::fabs(alpha - 1.0) < 1e-12) return pi;
    return 2.0 * std::tgamma(2.0 - alpha) * std::cos(0.5 * pi * alpha) /
           (alpha * (1.0 - alpha));
}

/// Closed form of the Levy integrability integral of (y^2 AND 1).
inline double levy_condition_closed(double alpha) {
    return 2.0 * (1.0 / (2.0 - alpha) + 1.0 / alpha);
}

/// Reference value of the symmetric compensated jump integral
///   integral_0^inf [phi(x+y) + phi(x-y) - 2 phi(x)] y^{-1-alpha} dy
/// for a smooth phi that vanishes beyond |x| ~ 6 (e.g. exp(-x^2)):
/// series head on (0, delta) using the exact second derivative, adaptive
/// Gauss panels to y_max, analytic tail where both shifted arguments vanish.
inline double symmetric_jump_integral(const std::function<double(double)>& phi,
                                      const std::function<double(double)>& d2phi, double x,
                                      double alpha, double y_max = 60.0) {
    const double delta = 1e-6;
    const double head = d2phi(x) * std::pow(delta, 2.0 - alpha) / (2.0 - alpha);
    auto g = [&](double y) {
        return (phi(x + y) + phi(x - y) - 2.0 * phi(x)) * std::pow(y, -1.0 - alpha);
    };
    const double body = adaptive_gauss(g, delta, 1.0, 1e-13) +
                        adaptive_gauss(g, 1.0, y_max, 1e-13);
    const double tail = -2.0 * phi(x) * std::pow(y_max, -alpha) / alpha;
    return head + body + tail;
}

}  // namespace oracles
