#pragma once

#include <vector>

namespace levyfp {

/// The cubic drift f(b, x) = b x - x^3 of the pitchfork normal form.
struct DriftSpec {
    double b = 0.0;
    double operator()(double x) const { return b * x - x * x * x; }
};

inline double drift(double b, double x) { return b * x - x * x * x; }

enum class Stability { Stable, Unstable };

struct Equilibrium {
    double location;
    Stability stability;
    bool degenerate = false;  // b = 0: linearly marginal, nonlinearly stable
};

/// Fixed points of x' = b x - x^3, sorted by location.
/// b <= 0: {0 stable} (degenerate flag set at b = 0);
/// b  > 0: {-sqrt(b) stable, 0 unstable, +sqrt(b) stable}.
std::vector<Equilibrium> deterministic_equilibria(double b);

}  // namespace levyfp
