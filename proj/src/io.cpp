#include "levyfp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace levyfp::io {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_density_csv(const std::filesystem::path& path, const Density& d) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << "x,p\n";
    for (std::size_t i = 0; i < d.values.size(); ++i)
        f << format_double(d.grid.node(i)) << ',' << format_double(d.values[i]) << '\n';
    if (!f) throw std::runtime_error("write to " + path.string() + " failed");
}

Density read_density_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(f, line) || line.rfind("x,p", 0) != 0)
        throw std::runtime_error(path.string() + " is not a density CSV (missing x,p header)");
    std::vector<double> xs, ps;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("malformed row in " + path.string() + ": " + line);
        xs.push_back(std::stod(line.substr(0, comma)));
        ps.push_back(std::stod(line.substr(comma + 1)));
    }
    if (xs.size() < 3) throw std::runtime_error(path.string() + " has too few rows");
    const std::size_t n = xs.size();
    const double dx = xs[1] - xs[0];
    const double l = -xs.front() + dx;  // x_0 = -l + dx
    Grid g(l, n);
    for (std::size_t i = 0; i < n; ++i)
        if (std::fabs(g.node(i) - xs[i]) > 1e-9 * std::max(1.0, std::fabs(xs[i])))
            throw std::runtime_error(path.string() + " nodes are not a uniform symmetric grid");
    return Density(g, std::move(ps));
}

namespace {

std::string join_modes(const std::vector<double>& modes) {
    std::ostringstream s;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (i) s << ';';
        s << format_double(modes[i]);
    }
    return s.str();
}

}  // namespace

void write_diagram_csv(const std::filesystem::path& path, const BifurcationDiagram& diagram) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << "b,alpha,epsilon,modality,modes,peak_height,excess_kurtosis,residual_inf,status\n";
    for (const auto& r : diagram.records) {
        f << format_double(r.b) << ',' << format_double(r.alpha) << ',' << format_double(r.epsilon)
          << ',' << r.modality << ',' << join_modes(r.mode_locations) << ','
          << format_double(r.peak_height) << ',' << format_double(r.excess_kurtosis) << ','
          << format_double(r.residual_inf) << ',' << (r.status == "ok" ? "ok" : "error: " + r.status)
          << '\n';
    }
}

void write_alpha_star_csv(const std::filesystem::path& path,
                          const std::vector<AlphaStarResult>& curve) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << "b,epsilon,alpha_star,bracket_lo,bracket_hi\n";
    for (const auto& r : curve)
        f << format_double(r.b) << ',' << format_double(r.epsilon) << ','
          << format_double(r.alpha_star) << ',' << format_double(r.bracket_lo) << ','
          << format_double(r.bracket_hi) << '\n';
}

}  // namespace levyfp::io
