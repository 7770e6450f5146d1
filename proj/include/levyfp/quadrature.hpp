#pragma once

#include <cmath>
#include <functional>

namespace levyfp::quad {

/// Adaptive Simpson integration on [a, b] with Richardson error control.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-12, int max_depth = 60);

}  // namespace levyfp::quad
