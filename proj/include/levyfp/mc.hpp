#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "levyfp/drift.hpp"
#include "levyfp/grid.hpp"
#include "levyfp/noise.hpp"

namespace levyfp {

/// Euler-Maruyama ensemble simulation of dX = f(b,X) dt + eps dL_t^alpha.
struct SimConfig {
    DriftSpec drift;
    StableNoise noise;
    double dt = 1e-3;
    double t_burn = 20.0;
    double t_sample = 50.0;
    std::size_t n_paths = 100;
    std::uint64_t seed = 0;
    double clamp_radius = 100.0;  // samples beyond it are tallied as exterior
    std::size_t n_workers = 0;    // 0: hardware concurrency
};

/// One draw of the standard symmetric alpha-stable law, characteristic
/// function exp(-|lambda|^alpha) (Chambers-Mallows-Stuck). alpha = 2 gives
/// N(0, 2).
double sample_standard_stable(double alpha, std::mt19937_64& rng);

/// Scale s such that eps * dL over one step dt equals s * S in law, with S
/// standard stable: s = eps * (c_alpha * dt)^{1/alpha}. This matches the
/// jump measure eps^alpha * nu_alpha used by the PDE side.
double increment_scale(double alpha, double epsilon, double dt);

struct SampleSet {
    std::vector<double> samples;   // retained in-clamp states, path-major order
    std::uint64_t n_exterior = 0;  // states beyond clamp_radius (not stored)
    std::uint64_t n_total = 0;     // all post-burn-in states
    SimConfig config;
};

/// Runs the ensemble. The drift half-step is implicit (the cubic
/// x + dt (x^3 - b x) = y has a unique real root for b dt < 1, solved in
/// closed form), which keeps huge stable jumps from overflowing the state;
/// the jump increment is sampled exactly. Per-path RNG streams are derived
/// from the master seed, so results are identical for a fixed seed
/// regardless of worker count.
SampleSet simulate_ensemble(const SimConfig& cfg);

struct EmpiricalDensity {
    Density density;
    double exterior_fraction = 0.0;  // fraction of inputs outside the grid bins
};

/// Histogram on bins of width dx centered at the grid nodes, normalized to
/// unit trapezoid mass over the in-domain samples.
EmpiricalDensity empirical_density(const std::vector<double>& samples, const Grid& grid);

}  // namespace levyfp
