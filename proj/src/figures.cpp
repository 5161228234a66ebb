#include "fracbl/figures.hpp"

#include <cmath>
#include <system_error>

#include "fracbl/errors.hpp"
#include "fracbl/layers.hpp"
#include "fracbl/output.hpp"
#include "fracbl/solver.hpp"

namespace fracbl::figures {

namespace {

std::vector<double> nodes_of(const Mesh& mesh) { return {mesh.nodes().begin(), mesh.nodes().end()}; }

output::Series series(const FigureTable& t, const std::string& y, const std::string& label) {
    return {label, t.column("x"), t.column(y)};
}

}  // namespace

const std::vector<double>& FigureTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return columns[i];
    }
    throw ParameterError("figure: no column '" + name + "'");
}

FigureTable reaction_figure(const FigureOptions& opts) {
    const ProblemSpec p = ProblemSpec::reaction_diffusion(opts.alpha, opts.eps);
    const Mesh mesh = Mesh::graded(1.0, opts.intervals, 2.0, GradingSide::both);
    const Solution s = solve_bvp(p, mesh);
    const std::vector<double> x = nodes_of(mesh);
    const double width = std::pow(opts.eps, 1.0 / (2.0 - opts.alpha));
    const double mu = layers::mu_reac(opts.eps, opts.alpha);
    const auto v0 = layers::evaluate_on_grid([&](double t) { return layers::reac_layer0(t / width, opts.alpha); }, x);
    const auto v1 = layers::evaluate_on_grid(
        [&](double t) { return layers::reac_layer1_model(t, opts.eps, opts.alpha, mu); }, x);
    std::vector<double> composite(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) composite[i] = -1.0 + v0[i] + v1[i];
    composite.front() = 0.0;
    composite.back() = 0.0;
    return {"Reaction-diffusion, alpha=" + output::format_double(opts.alpha) + ", eps=" + output::format_double(opts.eps),
            {"x", "u", "composite", "v0", "v1"},
            {x, s.values, composite, v0, v1}};
}

FigureTable convection_figure(const FigureOptions& opts) {
    const ProblemSpec p = ProblemSpec::convection_diffusion(opts.alpha, opts.eps);
    const Mesh mesh = Mesh::graded(1.0, opts.intervals, 2.0, GradingSide::left);
    const Solution s = solve_bvp(p, mesh);
    const std::vector<double> x = nodes_of(mesh);
    const auto v = layers::evaluate_on_grid(
        [&](double t) { return layers::conv_layer_correction(t, opts.eps, opts.alpha); }, x);
    std::vector<double> exact(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) exact[i] = layers::reduced_solution(x[i]) + v[i];
    return {"Convection-diffusion, alpha=" + output::format_double(opts.alpha) +
                ", eps=" + output::format_double(opts.eps),
            {"x", "u", "exact", "layer_correction"},
            {x, s.values, exact, v}};
}

std::string render(const FigureTable& t) {
    std::vector<output::Panel> panels(2);
    panels[0].title = "solution";
    panels[0].x_label = "x";
    panels[1].title = "layer correction";
    panels[1].x_label = "x";
    if (t.header.size() == 5) {
        panels[0].series = {series(t, "u", "u (discrete)"), series(t, "composite", "-1 + V0 + V1")};
        panels[1].series = {series(t, "v0", "V0"), series(t, "v1", "V1")};
    } else {
        panels[0].series = {series(t, "u", "u (discrete)"), series(t, "exact", "(x-1) + V")};
        panels[1].series = {series(t, "layer_correction", "V")};
    }
    return output::render_svg(t.title, panels);
}

std::vector<std::filesystem::path> write_figures(const std::filesystem::path& dir, const FigureOptions& opts) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "'");
    }
    const FigureTable fig1 = reaction_figure(opts);
    const FigureTable fig2 = convection_figure(opts);
    std::vector<std::filesystem::path> paths = {dir / "fig1.csv", dir / "fig1.svg", dir / "fig2.csv",
                                                dir / "fig2.svg"};
    output::write_text_file(paths[0], output::columns_to_csv(fig1.header, fig1.columns));
    output::write_text_file(paths[1], render(fig1));
    output::write_text_file(paths[2], output::columns_to_csv(fig2.header, fig2.columns));
    output::write_text_file(paths[3], render(fig2));
    return paths;
}

}  // namespace fracbl::figures
