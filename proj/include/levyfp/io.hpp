#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "levyfp/bifurcation.hpp"
#include "levyfp/grid.hpp"

namespace levyfp::io {

/// Two-column CSV "x,p" with header row, one row per interior node,
/// 17 significant digits (round-trips doubles exactly).
void write_density_csv(const std::filesystem::path& path, const Density& d);

/// Reads a density CSV back; the grid is reconstructed from the node
/// coordinates (uniform spacing, symmetric about 0).
Density read_density_csv(const std::filesystem::path& path);

void write_diagram_csv(const std::filesystem::path& path, const BifurcationDiagram& diagram);

void write_alpha_star_csv(const std::filesystem::path& path,
                          const std::vector<AlphaStarResult>& curve);

std::string format_double(double v);  // shortest 17-significant-digit form

}  // namespace levyfp::io
