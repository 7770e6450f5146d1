#include "levyfp/mc.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "levyfp/levy_kernel.hpp"

namespace levyfp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Unique real root of dt*x^3 + (1 - b*dt)*x = y (monotone for b*dt < 1).
double implicit_drift_root(double y, double b, double dt) {
    if (y == 0.0) return 0.0;
    if (std::fabs(y) > 1e100) return std::cbrt(y / dt);  // cubic term dominates
    const double p = (1.0 - b * dt) / dt;
    const double q = -y / dt;
    const double s = std::sqrt(0.25 * q * q + p * p * p / 27.0);
    const double t = (q <= 0.0) ? (-0.5 * q + s) : (-0.5 * q - s);
    const double u = std::cbrt(t);
    return u - p / (3.0 * u);
}

}  // namespace

double sample_standard_stable(double alpha, std::mt19937_64& rng) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("stable sampler needs alpha in (0,2], got " +
                                    std::to_string(alpha));
    using std::numbers::pi;
    std::uniform_real_distribution<double> angle(-0.5 * pi, 0.5 * pi);
    std::exponential_distribution<double> expo(1.0);
    const double u = angle(rng);
    if (alpha == 1.0) return std::tan(u);
    const double w = expo(rng);
    const double t1 = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha);
    const double t2 = std::pow(std::cos((1.0 - alpha) * u) / w, (1.0 - alpha) / alpha);
    return t1 * t2;
}

double increment_scale(double alpha, double epsilon, double dt) {
    if (!(epsilon > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("increment_scale needs positive epsilon and dt");
    return epsilon * std::pow(stable_scale_constant(alpha) * dt, 1.0 / alpha);
}

SampleSet simulate_ensemble(const SimConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (cfg.n_paths < 1) throw std::invalid_argument("n_paths must be at least 1");
    if (!(cfg.t_burn >= 0.0 && cfg.t_sample >= 0.0))
        throw std::invalid_argument("t_burn and t_sample must be nonnegative");
    if (cfg.drift.b * cfg.dt >= 1.0)
        throw std::invalid_argument("b*dt >= 1 breaks the implicit drift step; reduce dt");

    const auto n_burn = static_cast<std::size_t>(std::llround(cfg.t_burn / cfg.dt));
    const auto n_samp = static_cast<std::size_t>(std::llround(cfg.t_sample / cfg.dt));
    const double scale = increment_scale(cfg.noise.alpha, cfg.noise.epsilon, cfg.dt);

    std::vector<std::vector<double>> per_path(cfg.n_paths);
    std::vector<std::uint64_t> exterior(cfg.n_paths, 0);
    std::vector<std::string> failures(cfg.n_paths);

    auto run_path = [&](std::size_t path) {
        std::mt19937_64 rng(splitmix64(cfg.seed ^ (0x51ed2701a9b4c1e5ULL + path)));
        double x = 0.0;
        auto& samples = per_path[path];
        samples.reserve(n_samp);
        for (std::size_t k = 0; k < n_burn + n_samp; ++k) {
            const double s = sample_standard_stable(cfg.noise.alpha, rng);
            x = implicit_drift_root(x + scale * s, cfg.drift.b, cfg.dt);
            if (!std::isfinite(x)) {
                failures[path] = "path " + std::to_string(path) +
                                 " reached a non-finite state; reduce dt";
                return;
            }
            if (k >= n_burn) {
                if (std::fabs(x) > cfg.clamp_radius)
                    ++exterior[path];
                else
                    samples.push_back(x);
            }
        }
    };

    std::size_t workers = cfg.n_workers ? cfg.n_workers : std::thread::hardware_concurrency();
    workers = std::max<std::size_t>(1, std::min(workers, cfg.n_paths));
    if (workers == 1) {
        for (std::size_t p = 0; p < cfg.n_paths; ++p) run_path(p);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t p = w; p < cfg.n_paths; p += workers) run_path(p);
            });
        }
        for (auto& t : pool) t.join();
    }

    for (const auto& f : failures)
        if (!f.empty()) throw std::runtime_error(f);

    SampleSet out;
    out.config = cfg;
    std::size_t total = 0;
    for (const auto& v : per_path) total += v.size();
    out.samples.reserve(total);
    for (std::size_t p = 0; p < cfg.n_paths; ++p) {
        out.samples.insert(out.samples.end(), per_path[p].begin(), per_path[p].end());
        out.n_exterior += exterior[p];
    }
    out.n_total = out.n_exterior + out.samples.size();
    return out;
}

EmpiricalDensity empirical_density(const std::vector<double>& samples, const Grid& grid) {
    const std::size_t n = grid.n_interior();
    const double l = grid.half_width();
    const double dx = grid.dx();
    std::vector<std::uint64_t> counts(n, 0);
    std::uint64_t in_domain = 0;
    for (double x : samples) {
        // nearest node: bins of width dx centered at the interior nodes
        const double t = (x + l) / dx;  // node i (0-based) sits at t = i+1
        const auto j = static_cast<long long>(std::llround(t));
        if (j >= 1 && j <= static_cast<long long>(n)) {
            ++counts[static_cast<std::size_t>(j - 1)];
            ++in_domain;
        }
    }
    if (in_domain == 0)
        throw std::runtime_error("no samples fall inside the grid; cannot build a density");
    std::vector<double> v(n);
    const double norm = 1.0 / (static_cast<double>(in_domain) * dx);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(counts[i]) * norm;
    EmpiricalDensity out{normalize(Density(grid, std::move(v))), 0.0};
    out.exterior_fraction =
        samples.empty() ? 0.0
                        : 1.0 - static_cast<double>(in_domain) / static_cast<double>(samples.size());
    return out;
}

}  // namespace levyfp
