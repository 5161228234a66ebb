#include "cli.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracbl/errors.hpp"
#include "fracbl/figures.hpp"
#include "fracbl/layers.hpp"
#include "fracbl/output.hpp"
#include "fracbl/report.hpp"
#include "fracbl/solver.hpp"
#include "fracbl/specfun.hpp"

namespace fracbl::cli {

namespace {

using output::format_double;

struct MlArgs {
    double a = 1.0;
    double b = 1.0;
    std::vector<double> z;
    bool info = false;
};

struct LayerArgs {
    std::string problem = "conv";
    double alpha = 0.5;
    double eps = 1e-2;
    std::vector<double> x;
    std::size_t points = 101;
    std::string output;
};

struct SolveArgs {
    std::string kind = "conv";
    double alpha = 0.5;
    double eps = 1e-2;
    std::string mesh;
    double grading = 2.0;
    std::string side;
    std::size_t intervals = 1024;
    std::string scheme = "upwind";
    std::string output;
};

struct VerifyArgs {
    std::vector<double> eps = {1e-2, 1e-3, 1e-4};
    std::string tolerances;
    std::string csv;
};

struct FigureArgs {
    std::string dir;
    double alpha = 0.5;
    double eps = 1e-2;
    std::size_t intervals = 1024;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        output::write_text_file(path, text);
    }
}

int cmd_ml(const MlArgs& args, std::ostream& out, std::ostream& err) {
    if (args.z.size() == 1) {
        const auto r = specfun::mittag_leffler_eval({args.a, args.b, args.z.front()});
        out << format_double(r.value) << '\n';
        if (args.info || !r.accurate) {
            err << "regime=" << specfun::to_string(r.regime) << " error_estimate=" << r.error_estimate
                << (r.accurate ? "" : " (accuracy flag raised)") << '\n';
        }
        return kOk;
    }
    output::CsvWriter csv({"z", "value"});
    for (double z : args.z) {
        const auto r = specfun::mittag_leffler_eval({args.a, args.b, z});
        if (!r.accurate) err << "z=" << format_double(z) << ": accuracy flag raised\n";
        const double row[] = {z, r.value};
        csv.add_row(row);
    }
    out << csv.str();
    return kOk;
}

int cmd_layer(const LayerArgs& args, std::ostream& out) {
    std::vector<double> xs = args.x;
    if (xs.empty()) {
        if (args.points < 2) throw ParameterError("--points must be at least 2");
        for (std::size_t i = 0; i < args.points; ++i) {
            xs.push_back(static_cast<double>(i) / static_cast<double>(args.points - 1));
        }
    }
    std::function<double(double)> f;
    if (args.problem == "classical") {
        f = [eps = args.eps](double x) { return layers::classical_conv_layer(x, eps); };
    } else if (args.problem == "conv") {
        f = [&args](double x) { return layers::conv_layer_correction(x, args.eps, args.alpha); };
    } else if (args.problem == "reac0") {
        const double width = std::pow(args.eps, 1.0 / (2.0 - args.alpha));
        f = [&args, width](double x) {
            if (!(x >= 0.0 && x <= 1.0)) throw ParameterError("x must lie in [0, 1]");
            return layers::reac_layer0(x / width, args.alpha);
        };
    } else {
        const double mu = layers::mu_reac(args.eps, args.alpha);
        f = [&args, mu](double x) { return layers::reac_layer1_model(x, args.eps, args.alpha, mu); };
    }
    const std::vector<double> values = layers::evaluate_on_grid(f, xs);
    emit(output::columns_to_csv({"x", "value"}, {xs, values}), args.output, out);
    return kOk;
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
    ProblemSpec p;
    const ProblemKind kind = parse_problem_kind(args.kind);
    switch (kind) {
        case ProblemKind::classical_cd: p = ProblemSpec::classical(args.eps); break;
        case ProblemKind::convection_diffusion: p = ProblemSpec::convection_diffusion(args.alpha, args.eps); break;
        case ProblemKind::reaction_diffusion: p = ProblemSpec::reaction_diffusion(args.alpha, args.eps); break;
        case ProblemKind::stretched_layer_conv: p = ProblemSpec::stretched_conv(args.alpha, args.eps); break;
        case ProblemKind::stretched_layer_reac: p = ProblemSpec::stretched_reac(args.alpha, args.eps); break;
    }
    p.scheme = args.scheme == "central" ? ConvectionScheme::central : ConvectionScheme::upwind;
    p.validate();

    MeshFamily family = default_family(kind);
    if (args.mesh == "uniform") family.kind = MeshKind::uniform;
    if (args.mesh == "graded") family.kind = MeshKind::graded;
    if (args.mesh == "shishkin") family.kind = MeshKind::shishkin;
    family.grading = args.grading;
    if (args.side == "left") family.side = GradingSide::left;
    if (args.side == "right") family.side = GradingSide::right;
    if (args.side == "both") family.side = GradingSide::both;
    const Mesh mesh = family.make(p.domain_length(), args.intervals, p.eps);

    const Solution s = solve_bvp(p, mesh);
    std::vector<double> xs(mesh.nodes().begin(), mesh.nodes().end());
    emit(output::columns_to_csv({"x", "u"}, {xs, s.values}), args.output, out);

    std::ostream& summary = (args.output.empty() || args.output == "-") ? err : out;
    summary << "kind=" << to_string(kind) << " N=" << args.intervals << " mesh=" << to_string(mesh.kind())
            << " residual=" << format_double(s.residual_norm) << " rhs_norm=" << format_double(s.rhs_norm)
            << " growth=" << format_double(s.growth_factor);
    if (const auto exact = reference_solution(p)) {
        double worst = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, std::abs(s.values[i] - (*exact)(xs[i])));
        summary << " oracle_error=" << format_double(worst);
    }
    summary << '\n';
    for (const auto& w : s.warnings) err << "warning: " << w << '\n';
    return kOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
    report::VerifyOptions opts;
    opts.eps = args.eps;
    if (!args.tolerances.empty()) opts.tolerances = report::Tolerances::from_json_file(args.tolerances);
    const report::VerificationReport r = report::run_verification(opts);
    out << r.table();
    if (!args.csv.empty()) output::write_text_file(args.csv, r.csv());
    return r.overall() ? kOk : kVerificationFailed;
}

int cmd_figures(const FigureArgs& args, std::ostream& out) {
    figures::FigureOptions opts;
    opts.alpha = args.alpha;
    opts.eps = args.eps;
    opts.intervals = args.intervals;
    for (const auto& path : figures::write_figures(args.dir, opts)) out << path.string() << '\n';
    out << "figures are qualitative reproductions (alpha=" << format_double(args.alpha)
        << ", eps=" << format_double(args.eps) << ")\n";
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Boundary layers of singularly perturbed Caputo fractional BVPs", "fracbl"};
    app.require_subcommand(1);

    MlArgs ml;
    auto* ml_cmd = app.add_subcommand("ml", "Evaluate the Mittag-Leffler function E_{a,b}(z)");
    ml_cmd->add_option("--a", ml.a, "First parameter, a > 0")->required();
    ml_cmd->add_option("--b", ml.b, "Second parameter")->required();
    ml_cmd->add_option("--z", ml.z, "Argument(s); several values print a CSV table")->required()->expected(1, -1);
    ml_cmd->add_flag("--info", ml.info, "Report the evaluation regime on stderr");

    LayerArgs layer;
    auto* layer_cmd = app.add_subcommand("layer", "Tabulate a layer function on [0, 1]");
    layer_cmd->add_option("--problem", layer.problem, "conv, reac0, reac1 or classical")
        ->check(CLI::IsMember({"conv", "reac0", "reac1", "classical"}));
    layer_cmd->add_option("--alpha", layer.alpha, "Fractional parameter in (0, 1)");
    layer_cmd->add_option("--eps", layer.eps, "Perturbation parameter in (0, 1)");
    layer_cmd->add_option("--x", layer.x, "Evaluation points")->expected(1, -1);
    layer_cmd->add_option("--points", layer.points, "Uniform grid size when --x is absent");
    layer_cmd->add_option("-o,--output", layer.output, "CSV path (default stdout)");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve a model boundary value problem");
    solve_cmd->add_option("--kind", solve.kind, "classical, conv, reac, stretched-conv or stretched-reac")
        ->check(CLI::IsMember({"classical", "conv", "reac", "stretched-conv", "stretched-reac"}));
    solve_cmd->add_option("--alpha", solve.alpha, "Fractional parameter in (0, 1)");
    solve_cmd->add_option("--eps", solve.eps, "Perturbation parameter in (0, 1]");
    solve_cmd->add_option("--mesh", solve.mesh, "uniform, graded or shishkin (default per kind)")
        ->check(CLI::IsMember({"uniform", "graded", "shishkin"}));
    solve_cmd->add_option("--r", solve.grading, "Grading exponent >= 1");
    solve_cmd->add_option("--side", solve.side, "Graded end: left, right or both")
        ->check(CLI::IsMember({"left", "right", "both"}));
    solve_cmd->add_option("-N,--intervals", solve.intervals, "Number of mesh intervals");
    solve_cmd->add_option("--scheme", solve.scheme, "First-order term: upwind or central")
        ->check(CLI::IsMember({"upwind", "central"}));
    solve_cmd->add_option("-o,--output", solve.output, "CSV path (default stdout)");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Run the asymptotic verification suite");
    verify_cmd->add_option("--eps", verify.eps, "Perturbation parameters for the eps-dependent checks")
        ->expected(1, -1);
    verify_cmd->add_option("--tolerances", verify.tolerances, "JSON object overriding check tolerances")
        ->check(CLI::ExistingFile);
    verify_cmd->add_option("--csv", verify.csv, "Also write the report as CSV");

    FigureArgs fig;
    auto* fig_cmd = app.add_subcommand("figures", "Write fig1/fig2 CSV and SVG files");
    fig_cmd->add_option("-o,--out", fig.dir, "Output directory")->required();
    fig_cmd->add_option("--alpha", fig.alpha, "Fractional parameter in (0, 1)");
    fig_cmd->add_option("--eps", fig.eps, "Perturbation parameter in (0, 1)");
    fig_cmd->add_option("-N,--intervals", fig.intervals, "Number of mesh intervals");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadArguments;
    }

    try {
        if (*ml_cmd) return cmd_ml(ml, out, err);
        if (*layer_cmd) return cmd_layer(layer, out);
        if (*solve_cmd) {
            if (!(solve.eps > 0.0)) throw ParameterError("--eps must be positive");
            return cmd_solve(solve, out, err);
        }
        if (*verify_cmd) return cmd_verify(verify, out);
        if (*fig_cmd) return cmd_figures(fig, out);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kBadArguments;
}

}  // namespace fracbl::cli
