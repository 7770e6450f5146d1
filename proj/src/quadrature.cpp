#include "levyfp/quadrature.hpp"

namespace levyfp::quad {

namespace {

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double step(const std::function<double(double)>& f, double a, double b, double fa, double fb,
            double fm, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double refined = left + right;
    const double err = (refined - whole) / 15.0;
    if (depth <= 0 || std::fabs(err) <= tol) return refined + err;
    return step(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
           step(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        int max_depth) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, a, b);
    return step(f, a, b, fa, fb, fm, whole, abs_tol, max_depth);
}

}  // namespace levyfp::quad
