#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "levyfp/generator.hpp"
#include "levyfp/grid.hpp"
#include "levyfp/noise.hpp"
#include "levyfp/solver.hpp"

namespace levyfp {

enum class SolverChoice { Direct, Transient };

/// Shape summary of one stationary density. For stable noise alpha is the
/// index and epsilon the intensity; Gaussian classification records
/// alpha = 2 (the Brownian index) and epsilon = sigma.
struct BifurcationRecord {
    double b = 0.0;
    double alpha = 0.0;
    double epsilon = 0.0;
    std::size_t modality = 0;
    std::vector<double> mode_locations;
    double peak_height = 0.0;
    double excess_kurtosis = 0.0;
    double residual_inf = 0.0;
    double clipped_mass = 0.0;
    double prominence = 0.0;
    std::string status = "ok";  // "ok" or the solver error message
    std::shared_ptr<const Density> density;  // populated when ClassifyOptions::keep_density
};

struct AlphaStarResult {
    double b = 0.0;
    double epsilon = 0.0;
    double alpha_star = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    std::size_t modality_lo = 0;
    std::size_t modality_hi = 0;
};

struct BifurcationDiagram {
    std::vector<double> b_axis;
    std::vector<double> alpha_axis;
    std::vector<double> epsilon_axis;
    std::vector<BifurcationRecord> records;  // b-major, then alpha, then epsilon
    std::vector<AlphaStarResult> alpha_star_curve;

    const BifurcationRecord& at(std::size_t ib, std::size_t ia, std::size_t ie) const {
        return records[(ib * alpha_axis.size() + ia) * epsilon_axis.size() + ie];
    }
};

/// Modes of a normalized density: strict local maxima of the node sequence
/// (plateau runs collapse to one candidate located at the run's midpoint;
/// endpoints see the Dirichlet level 0) whose topographic prominence exceeds
/// prominence * max(p). Returned sorted by location.
std::pair<std::size_t, std::vector<double>> count_modes(const Density& d, double prominence);

/// Excess kurtosis m4/m2^2 - 3 of the trapezoid moments about the trapezoid
/// mean, on the truncated domain. Throws on (near-)zero variance.
double excess_kurtosis(const Density& d);

struct ClassifyOptions {
    SolverChoice solver = SolverChoice::Direct;
    double prominence = 0.01;
    DriftScheme scheme = DriftScheme::Hybrid;
    TransientOptions transient{};
    bool keep_density = false;
};

BifurcationRecord classify(double b, const NoiseSpec& noise, const Grid& grid,
                           const ClassifyOptions& opts = {});

/// Bisection on alpha with the modality classifier as predicate. Requires
/// differing modality at the bracket ends.
AlphaStarResult find_alpha_star(double b, double epsilon, double alpha_lo, double alpha_hi,
                                double tol_alpha, const Grid& grid,
                                const ClassifyOptions& opts = {});

struct SweepOptions {
    ClassifyOptions classify{};
    std::size_t n_workers = 0;  // 0: hardware concurrency
};

/// Classify every (b, alpha, epsilon) grid point; points run on a worker
/// pool, per-point failures are captured in the record status. Throws only
/// if every point fails.
BifurcationDiagram sweep(const std::vector<double>& b_axis, const std::vector<double>& alpha_axis,
                         const std::vector<double>& epsilon_axis, const Grid& grid,
                         const SweepOptions& opts = {});

}  // namespace levyfp
