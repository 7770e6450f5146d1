#include "levyfp/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "levyfp/bifurcation.hpp"
#include "levyfp/generator.hpp"
#include "levyfp/io.hpp"
#include "levyfp/mc.hpp"
#include "levyfp/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace levyfp::cli {

namespace {

std::string iso_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

DriftScheme parse_scheme(const std::string& s) {
    if (s == "hybrid") return DriftScheme::Hybrid;
    if (s == "upwind") return DriftScheme::Upwind;
    if (s == "central") return DriftScheme::Central;
    throw std::invalid_argument("scheme must be one of hybrid|upwind|central, got '" + s + "'");
}

NoiseSpec make_noise(const RunConfig& cfg) {
    if (cfg.alpha && cfg.sigma)
        throw std::invalid_argument("--alpha and --sigma are mutually exclusive");
    if (cfg.alpha) return NoiseSpec::stable(*cfg.alpha, cfg.epsilon);
    if (cfg.sigma) return NoiseSpec::gaussian(*cfg.sigma);
    throw std::invalid_argument("one of --alpha or --sigma is required");
}

void validate(const RunConfig& cfg) {
    if (cfg.alpha && !(*cfg.alpha > 0.0 && *cfg.alpha < 2.0))
        throw std::invalid_argument("alpha must lie in (0,2)");
    if (cfg.sigma && !(*cfg.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(cfg.half_width > 0.0)) throw std::invalid_argument("l (half-width) must be positive");
    if (cfg.n_interior < 3 || cfg.n_interior % 2 == 0)
        throw std::invalid_argument("n must be odd and at least 3");
    if (cfg.solver != "direct" && cfg.solver != "transient")
        throw std::invalid_argument("solver must be direct or transient, got '" + cfg.solver + "'");
    parse_scheme(cfg.scheme);
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (!(cfg.prominence > 0.0 && cfg.prominence < 1.0))
        throw std::invalid_argument("prominence must lie in (0,1)");
    for (double a : cfg.alpha_list)
        if (!(a > 0.0 && a < 2.0))
            throw std::invalid_argument("alpha-list entry outside (0,2): " + short_num(a));
    for (double e : cfg.epsilon_list)
        if (!(e > 0.0))
            throw std::invalid_argument("epsilon-list entry must be positive: " + short_num(e));
    if (!(cfg.tol_alpha > 0.0)) throw std::invalid_argument("tol-alpha must be positive");
    if (!(cfg.mc_dt > 0.0)) throw std::invalid_argument("mc-dt must be positive");
    if (!(cfg.t_burn >= 0.0)) throw std::invalid_argument("t-burn must be nonnegative");
    if (!(cfg.t_sample > 0.0)) throw std::invalid_argument("t-sample must be positive");
    if (cfg.n_paths < 1) throw std::invalid_argument("n-paths must be at least 1");
    if (cfg.clamp_radius && !(*cfg.clamp_radius > 0.0))
        throw std::invalid_argument("clamp-radius must be positive");

    switch (cfg.command) {
        case Command::Solve:
        case Command::McCheck:
            if (cfg.command == Command::McCheck && !cfg.alpha)
                throw std::invalid_argument("mc-check requires --alpha (stable noise only)");
            make_noise(cfg);
            break;
        case Command::Sweep:
            if (cfg.b_list.empty()) throw std::invalid_argument("sweep requires --b-list");
            if (cfg.alpha_list.empty()) throw std::invalid_argument("sweep requires --alpha-list");
            if (cfg.epsilon_list.empty())
                throw std::invalid_argument("sweep requires --epsilon-list");
            break;
        case Command::Bifurcate:
            if (!(cfg.alpha_lo < cfg.alpha_hi))
                throw std::invalid_argument("bifurcate needs alpha-lo < alpha-hi");
            if (!(cfg.alpha_lo > 0.0 && cfg.alpha_hi < 2.0))
                throw std::invalid_argument("bifurcate bracket must lie inside (0,2)");
            break;
    }
}

json density_report(const RunConfig& cfg, const SolveResult& sol, const std::string& csv_name) {
    json j;
    j["b"] = cfg.b;
    if (cfg.alpha) j["alpha"] = *cfg.alpha;
    if (cfg.sigma) j["sigma"] = *cfg.sigma;
    if (cfg.alpha) j["epsilon"] = cfg.epsilon;
    j["l"] = cfg.half_width;
    j["n_interior"] = cfg.n_interior;
    j["solver"] = cfg.solver;
    j["scheme"] = cfg.scheme;
    j["residual_inf"] = sol.residual_inf;
    j["clipped_mass"] = sol.clipped_mass;
    j["leak_rate"] = sol.leak_rate;
    j["density_csv_path"] = csv_name;
    j["metadata"] = {{"created", iso_now()}};
    return j;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << j.dump(2) << '\n';
    if (!f) throw std::runtime_error("write to " + path.string() + " failed");
}

int run_solve(const RunConfig& cfg) {
    const Grid grid(cfg.half_width, cfg.n_interior);
    const NoiseSpec noise = make_noise(cfg);
    const GeneratorMatrix M = assemble(grid, DriftSpec{cfg.b}, noise, parse_scheme(cfg.scheme));
    const SolveResult sol = cfg.solver == "direct"
                                ? solve_stationary_direct(M)
                                : solve_stationary_transient(
                                      M, TransientOptions{cfg.dt, cfg.tol, 200000});
    const fs::path out(cfg.out_dir);
    io::write_density_csv(out / "density.csv", sol.density);
    write_json(out / "report.json", density_report(cfg, sol, "density.csv"));
    return 0;
}

std::string density_file_name(double b, double alpha, double eps) {
    return "density_b" + short_num(b) + "_alpha" + short_num(alpha) + "_eps" + short_num(eps) +
           ".csv";
}

void write_plot_script(const fs::path& path, const RunConfig& cfg) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    auto pylist = [](const std::vector<double>& v) {
        std::ostringstream s;
        s << '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s << ", ";
            s << short_num(v[i]);
        }
        s << ']';
        return s.str();
    };
    f << "#!/usr/bin/env python3\n"
         "\"\"\"Small-multiples plot of the sweep densities: one panel per b,\n"
         "one curve per alpha, one figure per epsilon.\"\"\"\n"
         "import csv\n"
         "import os\n"
         "\n"
         "import matplotlib\n"
         "matplotlib.use(\"Agg\")\n"
         "import matplotlib.pyplot as plt\n"
         "\n"
         "HERE = os.path.dirname(os.path.abspath(__file__))\n"
      << "B_VALUES = " << pylist(cfg.b_list) << "\n"
      << "ALPHA_VALUES = " << pylist(cfg.alpha_list) << "\n"
      << "EPS_VALUES = " << pylist(cfg.epsilon_list) << "\n"
      << "\n"
         "\n"
         "def load(path):\n"
         "    xs, ps = [], []\n"
         "    with open(path) as fh:\n"
         "        for row in csv.DictReader(fh):\n"
         "            xs.append(float(row[\"x\"]))\n"
         "            ps.append(float(row[\"p\"]))\n"
         "    return xs, ps\n"
         "\n"
         "\n"
         "for eps in EPS_VALUES:\n"
         "    fig, axes = plt.subplots(1, len(B_VALUES),\n"
         "                             figsize=(4.0 * len(B_VALUES), 3.2), squeeze=False)\n"
         "    for bi, b in enumerate(B_VALUES):\n"
         "        ax = axes[0][bi]\n"
         "        for a in ALPHA_VALUES:\n"
         "            name = f\"density_b{b:g}_alpha{a:g}_eps{eps:g}.csv\"\n"
         "            path = os.path.join(HERE, \"densities\", name)\n"
         "            if not os.path.exists(path):\n"
         "                continue\n"
         "            xs, ps = load(path)\n"
         "            ax.plot(xs, ps, label=f\"$\\\\alpha$={a:g}\", linewidth=1.0)\n"
         "        ax.set_title(f\"b={b:g}\")\n"
         "        ax.set_xlabel(\"x\")\n"
         "        if bi == 0:\n"
         "            ax.set_ylabel(\"p(x)\")\n"
         "    axes[0][-1].legend(fontsize=7)\n"
         "    fig.suptitle(f\"stationary densities, epsilon={eps:g}\")\n"
         "    fig.tight_layout()\n"
         "    fig.savefig(os.path.join(HERE, f\"densities_eps{eps:g}.png\"), dpi=150)\n"
         "    plt.close(fig)\n"
         "print(\"wrote\", len(EPS_VALUES), \"figure(s) next to this script\")\n";
}

int run_sweep(const RunConfig& cfg) {
    const Grid grid(cfg.half_width, cfg.n_interior);
    SweepOptions so;
    so.classify.solver = cfg.solver == "direct" ? SolverChoice::Direct : SolverChoice::Transient;
    so.classify.prominence = cfg.prominence;
    so.classify.scheme = parse_scheme(cfg.scheme);
    so.classify.transient = TransientOptions{cfg.dt, cfg.tol, 200000};
    so.classify.keep_density = true;
    so.n_workers = cfg.workers;

    BifurcationDiagram diagram = sweep(cfg.b_list, cfg.alpha_list, cfg.epsilon_list, grid, so);

    const fs::path out(cfg.out_dir);
    fs::create_directories(out / "densities");
    std::size_t failed = 0;
    for (auto& rec : diagram.records) {
        if (rec.status != "ok") {
            ++failed;
            continue;
        }
        if (rec.density)
            io::write_density_csv(out / "densities" /
                                      density_file_name(rec.b, rec.alpha, rec.epsilon),
                                  *rec.density);
        rec.density.reset();
    }
    io::write_diagram_csv(out / "diagram.csv", diagram);
    write_plot_script(out / "plot_densities.py", cfg);

    json j;
    j["n_points"] = diagram.records.size();
    j["n_failed"] = failed;
    j["diagram_csv_path"] = "diagram.csv";
    j["plot_script_path"] = "plot_densities.py";
    j["metadata"] = {{"created", iso_now()}};
    write_json(out / "report.json", j);
    return 0;
}

int run_bifurcate(const RunConfig& cfg) {
    const Grid grid(cfg.half_width, cfg.n_interior);
    ClassifyOptions copts;
    copts.solver = cfg.solver == "direct" ? SolverChoice::Direct : SolverChoice::Transient;
    copts.prominence = cfg.prominence;
    copts.scheme = parse_scheme(cfg.scheme);
    copts.transient = TransientOptions{cfg.dt, cfg.tol, 200000};

    const std::vector<double> bs = cfg.b_list.empty() ? std::vector<double>{cfg.b} : cfg.b_list;
    const std::vector<double> es =
        cfg.epsilon_list.empty() ? std::vector<double>{cfg.epsilon} : cfg.epsilon_list;

    std::vector<AlphaStarResult> curve;
    json failures = json::array();
    for (double b : bs) {
        for (double e : es) {
            try {
                curve.push_back(
                    find_alpha_star(b, e, cfg.alpha_lo, cfg.alpha_hi, cfg.tol_alpha, grid, copts));
            } catch (const std::exception& ex) {
                failures.push_back({{"b", b}, {"epsilon", e}, {"error", ex.what()}});
            }
        }
    }

    const fs::path out(cfg.out_dir);
    io::write_alpha_star_csv(out / "alpha_star.csv", curve);
    json j;
    j["n_found"] = curve.size();
    j["failures"] = failures;
    j["alpha_star_csv_path"] = "alpha_star.csv";
    j["metadata"] = {{"created", iso_now()}};
    write_json(out / "report.json", j);
    if (curve.empty() && !failures.empty()) {
        std::cout << json{{"error", "no alpha* found"}, {"failures", failures}}.dump() << '\n';
        return 1;
    }
    return 0;
}

int run_mc_check(const RunConfig& cfg) {
    const Grid grid(cfg.half_width, cfg.n_interior);

    SimConfig sc;
    sc.drift = DriftSpec{cfg.b};
    sc.noise = StableNoise{*cfg.alpha, cfg.epsilon};
    sc.dt = cfg.mc_dt;
    sc.t_burn = cfg.t_burn;
    sc.t_sample = cfg.t_sample;
    sc.n_paths = cfg.n_paths;
    sc.seed = cfg.seed;
    sc.clamp_radius = cfg.clamp_radius.value_or(10.0 * cfg.half_width);
    sc.n_workers = cfg.workers;

    const SampleSet samples = simulate_ensemble(sc);
    const EmpiricalDensity emp = empirical_density(samples.samples, grid);

    const NoiseSpec noise = NoiseSpec::stable(*cfg.alpha, cfg.epsilon);
    const GeneratorMatrix M = assemble(grid, sc.drift, noise, parse_scheme(cfg.scheme));
    const SolveResult sol = solve_stationary_direct(M);

    const double l1 = l1_distance(emp.density, sol.density);

    const fs::path out(cfg.out_dir);
    io::write_density_csv(out / "mc_density.csv", emp.density);
    io::write_density_csv(out / "pde_density.csv", sol.density);

    json j;
    j["b"] = cfg.b;
    j["alpha"] = *cfg.alpha;
    j["epsilon"] = cfg.epsilon;
    j["l"] = cfg.half_width;
    j["n_interior"] = cfg.n_interior;
    j["l1_distance"] = l1;
    j["exterior_fractions"] = {{"mc", emp.exterior_fraction}, {"pde_leak_rate", sol.leak_rate}};
    j["mc"] = {{"n_retained", samples.samples.size()},
               {"n_exterior", samples.n_exterior},
               {"exterior_fraction",
                samples.n_total ? static_cast<double>(samples.n_exterior) /
                                      static_cast<double>(samples.n_total)
                                : 0.0},
               {"seed", cfg.seed},
               {"dt", cfg.mc_dt},
               {"t_burn", cfg.t_burn},
               {"t_sample", cfg.t_sample},
               {"clamp_radius", sc.clamp_radius}};
    j["pde"] = {{"residual_inf", sol.residual_inf},
                {"clipped_mass", sol.clipped_mass},
                {"leak_rate", sol.leak_rate}};
    j["density_csv_paths"] = {{"mc", "mc_density.csv"}, {"pde", "pde_density.csv"}};
    j["metadata"] = {{"created", iso_now()}};
    write_json(out / "comparison.json", j);
    return 0;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig cfg;
    CLI::App app{"Stationary densities and P-bifurcations of dX = (bX - X^3)dt + eps dL^alpha"};
    app.set_config("--config", "", "INI config file; command-line flags take precedence");
    app.allow_config_extras(false);

    app.add_option("--b", cfg.b, "drift parameter b of f(b,x) = bx - x^3")
        ->capture_default_str();
    double alpha_val = 0.0, sigma_val = 0.0;
    auto* alpha_opt =
        app.add_option("--alpha", alpha_val, "stable index alpha in (0,2)");
    auto* sigma_opt = app.add_option("--sigma", sigma_val, "Gaussian noise sigma (> 0)");
    app.add_option("--epsilon", cfg.epsilon, "stable noise intensity eps (> 0)")
        ->capture_default_str();
    app.add_option("--l,--half-width", cfg.half_width, "domain half-width l (> 0)")
        ->capture_default_str();
    app.add_option("--n", cfg.n_interior, "interior node count (odd, >= 3)")
        ->capture_default_str();
    app.add_option("--solver", cfg.solver, "stationary solver: direct | transient")
        ->capture_default_str();
    app.add_option("--scheme", cfg.scheme, "drift flux scheme: hybrid | upwind | central")
        ->capture_default_str();
    app.add_option("--dt", cfg.dt, "transient solver time step")->capture_default_str();
    app.add_option("--tol", cfg.tol, "transient stopping tolerance on |dp|/dt")
        ->capture_default_str();
    app.add_option("--prominence", cfg.prominence,
                   "mode-counting prominence threshold (fraction of max p)")
        ->capture_default_str();
    app.add_option("--b-list", cfg.b_list, "sweep axis for b (comma separated)")
        ->delimiter(',');
    app.add_option("--alpha-list", cfg.alpha_list, "sweep axis for alpha (comma separated)")
        ->delimiter(',');
    app.add_option("--epsilon-list", cfg.epsilon_list, "sweep axis for epsilon (comma separated)")
        ->delimiter(',');
    app.add_option("--alpha-lo", cfg.alpha_lo, "bisection bracket lower end")
        ->capture_default_str();
    app.add_option("--alpha-hi", cfg.alpha_hi, "bisection bracket upper end")
        ->capture_default_str();
    app.add_option("--tol-alpha", cfg.tol_alpha, "bisection bracket width target")
        ->capture_default_str();
    app.add_option("--mc-dt", cfg.mc_dt, "Monte Carlo time step")->capture_default_str();
    app.add_option("--t-burn", cfg.t_burn, "Monte Carlo burn-in time")->capture_default_str();
    app.add_option("--t-sample", cfg.t_sample, "Monte Carlo sampling horizon per path")
        ->capture_default_str();
    app.add_option("--n-paths", cfg.n_paths, "Monte Carlo ensemble size")->capture_default_str();
    double clamp_val = 0.0;
    auto* clamp_opt = app.add_option("--clamp-radius", clamp_val,
                                     "radius beyond which samples count as exterior "
                                     "(default 10*l)");
    app.add_option("--seed", cfg.seed, "master RNG seed")->capture_default_str();
    app.add_option("--workers", cfg.workers, "worker threads (0 = hardware)")
        ->capture_default_str();
    app.add_option("--out", cfg.out_dir, "output directory")->capture_default_str();

    auto* solve_cmd = app.add_subcommand("solve", "solve one stationary density");
    auto* sweep_cmd = app.add_subcommand("sweep", "classify a (b, alpha, epsilon) grid");
    auto* bif_cmd = app.add_subcommand("bifurcate", "locate alpha* by bisection");
    auto* mc_cmd = app.add_subcommand("mc-check", "Monte Carlo vs PDE cross-validation");
    for (auto* sub : {solve_cmd, sweep_cmd, bif_cmd, mc_cmd}) sub->fallthrough();
    app.require_subcommand(1);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("levyfp");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(e.what());
    }

    if (alpha_opt->count()) cfg.alpha = alpha_val;
    if (sigma_opt->count()) cfg.sigma = sigma_val;
    if (clamp_opt->count()) cfg.clamp_radius = clamp_val;
    if (solve_cmd->parsed()) cfg.command = Command::Solve;
    if (sweep_cmd->parsed()) cfg.command = Command::Sweep;
    if (bif_cmd->parsed()) cfg.command = Command::Bifurcate;
    if (mc_cmd->parsed()) cfg.command = Command::McCheck;

    validate(cfg);
    return cfg;
}

int run(const RunConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    switch (cfg.command) {
        case Command::Solve: return run_solve(cfg);
        case Command::Sweep: return run_sweep(cfg);
        case Command::Bifurcate: return run_bifurcate(cfg);
        case Command::McCheck: return run_mc_check(cfg);
    }
    return 1;
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const RunConfig cfg = parse_config(args);
        return run(cfg);
    } catch (const HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const std::exception& e) {
        json err;
        err["error"] = e.what();
        err["argv"] = args;
        std::cout << err.dump() << '\n';
        return 1;
    }
}

}  // namespace levyfp::cli
