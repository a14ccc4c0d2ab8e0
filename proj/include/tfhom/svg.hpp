#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tfhom/grid.hpp"

namespace tfhom::svg {

/// 256-entry viridis-like map; t is clamped to [0,1].
std::array<unsigned char, 3> colormap(double t);

/// Nodal field as a heatmap, at most 128 cells per side.
std::string heatmap(const StructuredGrid2D& grid, std::span<const double> values, const std::string& title);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

std::string loglog(const std::vector<Series>& series, const std::string& title, const std::string& x_label,
                   const std::string& y_label);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace tfhom::svg
