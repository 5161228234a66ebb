#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace fracbl::figures {

struct FigureOptions {
    double alpha = 0.5;
    double eps = 1e-2;
    std::size_t intervals = 1024;
};

/// Named columns sampled on the solver mesh.
struct FigureTable {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    const std::vector<double>& column(const std::string& name) const;
};

/// Reaction-diffusion: x, u, composite -1 + V0 + V1, V0, V1 on a mesh graded at both ends.
FigureTable reaction_figure(const FigureOptions& opts);

/// Convection-diffusion: x, u, exact (x - 1) + V, layer correction V on a left-graded mesh.
FigureTable convection_figure(const FigureOptions& opts);

/// Two panels: solution curves left, layer corrections right.
std::string render(const FigureTable& table);

/// Writes fig1.csv, fig1.svg (reaction) and fig2.csv, fig2.svg (convection) into dir,
/// creating it if needed; returns the paths in that order. Throws IoError.
std::vector<std::filesystem::path> write_figures(const std::filesystem::path& dir, const FigureOptions& opts);

}  // namespace fracbl::figures
