#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace levyfp::cli {

enum class Command { Solve, Sweep, Bifurcate, McCheck };

struct RunConfig {
    Command command = Command::Solve;

    // model parameters
    double b = -1.0;
    std::optional<double> alpha;  // stable index; mutually exclusive with sigma
    std::optional<double> sigma;  // Gaussian noise
    double epsilon = 0.1;

    // grid
    double half_width = 10.0;
    std::size_t n_interior = 999;

    // stationary solver
    std::string solver = "direct";  // direct | transient
    std::string scheme = "hybrid";  // hybrid | upwind | central
    double dt = 0.1;                // transient step
    double tol = 1e-9;              // transient stopping tolerance
    double prominence = 0.01;

    // sweep axes
    std::vector<double> b_list;
    std::vector<double> alpha_list;
    std::vector<double> epsilon_list;

    // bifurcate
    double alpha_lo = 0.1;
    double alpha_hi = 1.9;
    double tol_alpha = 0.01;

    // Monte Carlo
    double mc_dt = 1e-3;
    double t_burn = 20.0;
    double t_sample = 100.0;
    std::size_t n_paths = 100;
    std::uint64_t seed = 12345;
    std::optional<double> clamp_radius;  // default: 10 * half_width

    std::size_t workers = 0;  // 0: hardware concurrency
    std::string out_dir = "out";
};

/// Parse argv-style arguments (without the program name). Throws
/// std::invalid_argument with a field-specific message on bad input; throws
/// HelpRequested when --help was asked.
struct HelpRequested {
    std::string text;
};

RunConfig parse_config(const std::vector<std::string>& args);

/// Execute the configured command, writing artifacts under cfg.out_dir.
/// Returns the process exit status (0 on success).
int run(const RunConfig& cfg);

/// Full entry point: parse, run, serialize errors as JSON on stdout.
int main_entry(int argc, char** argv);

}  // namespace levyfp::cli
