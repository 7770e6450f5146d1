#include "levyfp/bifurcation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace levyfp {

std::pair<std::size_t, std::vector<double>> count_modes(const Density& d, double prominence) {
    if (!(prominence > 0.0 && prominence < 1.0))
        throw std::invalid_argument("prominence must lie in (0,1)");
    const std::size_t n = d.grid.n_interior();

    // Augment with the Dirichlet level 0 at both ends.
    std::vector<double> a(n + 2, 0.0);
    std::copy(d.values.begin(), d.values.end(), a.begin() + 1);

    double pmax = 0.0;
    for (double v : d.values) pmax = std::max(pmax, v);
    if (!(pmax > 0.0)) return {0, {}};

    // Candidate peaks: strict local maxima; a plateau run counts once.
    struct Peak {
        std::size_t lo, hi;  // inclusive run in augmented indexing
    };
    std::vector<Peak> peaks;
    std::size_t i = 1;
    while (i <= n) {
        if (a[i] > a[i - 1]) {
            std::size_t j = i;
            while (j < n && a[j + 1] == a[i]) ++j;
            if (a[j + 1] < a[i]) peaks.push_back({i, j});
            i = j + 1;
        } else {
            ++i;
        }
    }

    const double threshold = prominence * pmax;
    std::vector<double> locations;
    for (const auto& pk : peaks) {
        const double h = a[pk.lo];
        // key saddle on each side: lowest point on the walk to the first
        // strictly higher ground (or to the domain edge, which sits at 0)
        double left = h;
        for (std::size_t k = pk.lo; k-- > 0;) {
            left = std::min(left, a[k]);
            if (a[k] > h) break;
        }
        double right = h;
        for (std::size_t k = pk.hi + 1; k <= n + 1; ++k) {
            right = std::min(right, a[k]);
            if (a[k] > h) break;
        }
        const double prom = h - std::max(left, right);
        if (prom > threshold) {
            const double x_lo = d.grid.node(pk.lo - 1);
            const double x_hi = d.grid.node(pk.hi - 1);
            locations.push_back(0.5 * (x_lo + x_hi));
        }
    }
    std::sort(locations.begin(), locations.end());
    return {locations.size(), locations};
}

double excess_kurtosis(const Density& d) {
    const Density p = normalize(d);
    const double dx = p.grid.dx();
    double m1 = 0.0;
    for (std::size_t i = 0; i < p.values.size(); ++i) m1 += p.grid.node(i) * p.values[i];
    m1 *= dx;
    double m2 = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        const double c = p.grid.node(i) - m1;
        m2 += c * c * p.values[i];
        m4 += c * c * c * c * p.values[i];
    }
    m2 *= dx;
    m4 *= dx;
    if (!(m2 > 0.0))
        throw std::runtime_error("zero variance (degenerate spike); kurtosis undefined");
    return m4 / (m2 * m2) - 3.0;
}

BifurcationRecord classify(double b, const NoiseSpec& noise, const Grid& grid,
                           const ClassifyOptions& opts) {
    BifurcationRecord rec;
    rec.b = b;
    if (noise.is_stable()) {
        rec.alpha = noise.as_stable().alpha;
        rec.epsilon = noise.as_stable().epsilon;
    } else {
        rec.alpha = 2.0;  // Brownian index
        rec.epsilon = noise.as_gaussian().sigma;
    }
    rec.prominence = opts.prominence;

    const GeneratorMatrix M = assemble(grid, DriftSpec{b}, noise, opts.scheme);
    const SolveResult sol = (opts.solver == SolverChoice::Direct)
                                ? solve_stationary_direct(M)
                                : solve_stationary_transient(M, opts.transient);

    auto [modality, locations] = count_modes(sol.density, opts.prominence);
    rec.modality = modality;
    rec.mode_locations = std::move(locations);
    rec.peak_height = *std::max_element(sol.density.values.begin(), sol.density.values.end());
    rec.excess_kurtosis = excess_kurtosis(sol.density);
    rec.residual_inf = sol.residual_inf;
    rec.clipped_mass = sol.clipped_mass;
    if (opts.keep_density) rec.density = std::make_shared<Density>(sol.density);
    return rec;
}

AlphaStarResult find_alpha_star(double b, double epsilon, double alpha_lo, double alpha_hi,
                                double tol_alpha, const Grid& grid, const ClassifyOptions& opts) {
    if (!(alpha_lo < alpha_hi))
        throw std::invalid_argument("alpha bracket is degenerate: [" + std::to_string(alpha_lo) +
                                    ", " + std::to_string(alpha_hi) + "]");
    if (!(tol_alpha > 0.0)) throw std::invalid_argument("tol_alpha must be positive");

    auto modality_at = [&](double alpha) {
        return classify(b, NoiseSpec::stable(alpha, epsilon), grid, opts).modality;
    };

    std::size_t m_lo = modality_at(alpha_lo);
    std::size_t m_hi = modality_at(alpha_hi);
    if (m_lo == m_hi)
        throw std::runtime_error("no modality change in bracket [" + std::to_string(alpha_lo) +
                                 ", " + std::to_string(alpha_hi) + "] at b=" + std::to_string(b) +
                                 ", epsilon=" + std::to_string(epsilon) + " (modality " +
                                 std::to_string(m_lo) + " at both ends)");

    double lo = alpha_lo, hi = alpha_hi;
    while (hi - lo > tol_alpha) {
        const double mid = 0.5 * (lo + hi);
        std::size_t m_mid;
        try {
            m_mid = modality_at(mid);
        } catch (const std::exception& e) {
            throw std::runtime_error("solver failed during bisection at alpha=" +
                                     std::to_string(mid) + " (bracket [" + std::to_string(lo) +
                                     ", " + std::to_string(hi) + "]): " + e.what());
        }
        if (m_mid == m_lo)
            lo = mid;
        else
            hi = mid;
    }
    return AlphaStarResult{b, epsilon, 0.5 * (lo + hi), lo, hi, m_lo, m_hi};
}

BifurcationDiagram sweep(const std::vector<double>& b_axis, const std::vector<double>& alpha_axis,
                         const std::vector<double>& epsilon_axis, const Grid& grid,
                         const SweepOptions& opts) {
    if (b_axis.empty() || alpha_axis.empty() || epsilon_axis.empty())
        throw std::invalid_argument("sweep axes must be nonempty");
    for (double a : alpha_axis)
        if (!(a > 0.0 && a < 2.0))
            throw std::invalid_argument("sweep alpha value outside (0,2): " + std::to_string(a));

    BifurcationDiagram out;
    out.b_axis = b_axis;
    out.alpha_axis = alpha_axis;
    out.epsilon_axis = epsilon_axis;
    const std::size_t total = b_axis.size() * alpha_axis.size() * epsilon_axis.size();
    out.records.resize(total);

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failed{0};
    auto work = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= total) return;
            const std::size_t ie = idx % epsilon_axis.size();
            const std::size_t ia = (idx / epsilon_axis.size()) % alpha_axis.size();
            const std::size_t ib = idx / (epsilon_axis.size() * alpha_axis.size());
            try {
                out.records[idx] = classify(
                    b_axis[ib], NoiseSpec::stable(alpha_axis[ia], epsilon_axis[ie]), grid,
                    opts.classify);
            } catch (const std::exception& e) {
                BifurcationRecord rec;
                rec.b = b_axis[ib];
                rec.alpha = alpha_axis[ia];
                rec.epsilon = epsilon_axis[ie];
                rec.prominence = opts.classify.prominence;
                rec.status = e.what();
                out.records[idx] = std::move(rec);
                failed.fetch_add(1);
            }
        }
    };

    std::size_t workers = opts.n_workers ? opts.n_workers : std::thread::hardware_concurrency();
    workers = std::max<std::size_t>(1, std::min(workers, total));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    if (failed.load() == total)
        throw std::runtime_error("every sweep point failed; first status: " +
                                 out.records.front().status);
    return out;
}

}  // namespace levyfp
