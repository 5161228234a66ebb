#include "fracbl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <numbers>

#include <nlohmann/json.hpp>

#include "fracbl/errors.hpp"
#include "fracbl/layers.hpp"
#include "fracbl/output.hpp"
#include "fracbl/solver.hpp"

namespace fracbl::report {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

using CheckFn = std::function<Check()>;

double limit_deviation(double x0, double eps) {
    return std::abs(layers::conv_layer_correction(x0, eps) - layers::conv_layer_limit(x0));
}

}  // namespace

std::string to_string(Comparison mode) {
    switch (mode) {
        case Comparison::absolute: return "abs";
        case Comparison::relative: return "rel";
        case Comparison::upper_bound: return "<=";
        case Comparison::lower_bound: return ">=";
    }
    return "?";
}

Check make_check(std::string name, double measured, double target, double tolerance, Comparison mode,
                 std::string claim) {
    Check c{std::move(name), measured, target, tolerance, mode, false, std::move(claim)};
    switch (mode) {
        case Comparison::absolute: c.pass = std::abs(measured - target) <= tolerance; break;
        case Comparison::relative: c.pass = std::abs(measured - target) <= tolerance * std::abs(target); break;
        case Comparison::upper_bound: c.pass = measured <= target; break;
        case Comparison::lower_bound: c.pass = measured >= target; break;
    }
    if (!std::isfinite(measured)) c.pass = false;
    return c;
}

bool VerificationReport::overall() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string VerificationReport::table() const {
    std::string out;
    char line[512];
    std::snprintf(line, sizeof line, "%-40s %16s %16s %10s %4s %5s  %s\n", "check", "measured", "target", "tol",
                  "mode", "pass", "claim");
    out += line;
    for (const auto& c : checks) {
        std::snprintf(line, sizeof line, "%-40s %16.9g %16.9g %10.3g %4s %5s  %s\n", c.name.c_str(), c.measured,
                      c.target, c.tolerance, to_string(c.mode).c_str(), c.pass ? "PASS" : "FAIL", c.claim.c_str());
        out += line;
    }
    out += std::string("OVERALL ") + (overall() ? "PASS" : "FAIL") + "\n";
    return out;
}

std::string VerificationReport::csv() const {
    output::CsvWriter csv({"check", "measured", "target", "tolerance", "mode", "pass", "claim"});
    for (const auto& c : checks) {
        csv.add_row({c.name, output::format_double(c.measured), output::format_double(c.target),
                     output::format_double(c.tolerance), to_string(c.mode), c.pass ? "1" : "0", c.claim});
    }
    return csv.str();
}

Tolerances::Tolerances()
    : values_{{"vstar_scaling", 0.02},  {"theta_scaling", 1e-3},       {"theta_bound", 1.0},
              {"limit_law", 0.01},      {"limit_rate", 5.0},           {"left_decay", 0.01},
              {"mu_scaling", 0.01},     {"mu_ratio", 0.05},            {"non_classical_layer", 0.05},
              {"classical_layer", 1e-6}, {"right_layer", 15.0},        {"conv_exact", 0.05},
              {"reac_bounds", 1e-12}} {}

double Tolerances::operator[](const std::string& family) const {
    const auto it = values_.find(family);
    if (it == values_.end()) throw ParameterError("tolerances: unknown check family '" + family + "'");
    return it->second;
}

void Tolerances::set(const std::string& family, double value) {
    if (values_.find(family) == values_.end()) {
        throw ParameterError("tolerances: unknown check family '" + family + "'");
    }
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw ParameterError("tolerances: value for '" + family + "' must be finite and nonnegative");
    }
    values_[family] = value;
}

Tolerances Tolerances::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read tolerances file '" + path.string() + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError("tolerances: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw ParameterError("tolerances: expected a JSON object");
    Tolerances t;
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_number()) throw ParameterError("tolerances: '" + key + "' must be a number");
        t.set(key, value.get<double>());
    }
    return t;
}

double exponential_fit_misfit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty()) throw ParameterError("exponential fit: bad sample");
    double yy = 0.0;
    for (double v : y) yy += v * v;
    // Residual sum of squares with the amplitude eliminated.
    auto sse = [&](double log_delta) {
        const double delta = std::exp(log_delta);
        double yg = 0.0;
        double gg = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            const double g = std::exp(-x[k] / delta);
            yg += y[k] * g;
            gg += g * g;
        }
        return gg > 0.0 ? yy - yg * yg / gg : yy;
    };
    constexpr int kScan = 400;
    const double lo = std::log(1e-5);
    const double hi = std::log(1e3);
    const double step = (hi - lo) / kScan;
    int best = 0;
    double best_val = sse(lo);
    for (int k = 1; k <= kScan; ++k) {
        const double v = sse(lo + k * step);
        if (v < best_val) {
            best_val = v;
            best = k;
        }
    }
    double a = lo + std::max(best - 1, 0) * step;
    double b = lo + std::min(best + 1, kScan) * step;
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = sse(c);
    double fd = sse(d);
    for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = sse(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = sse(d);
        }
    }
    const double delta = std::exp(0.5 * (a + b));
    double yg = 0.0;
    double gg = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double g = std::exp(-x[k] / delta);
        yg += y[k] * g;
        gg += g * g;
    }
    const double amp = gg > 0.0 ? yg / gg : 0.0;
    double misfit = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        misfit = std::max(misfit, std::abs(y[k] - amp * std::exp(-x[k] / delta)));
    }
    return misfit;
}

VerificationReport run_verification(const VerifyOptions& opts) {
    if (opts.eps.empty()) throw ParameterError("verify: empty eps list");
    for (double e : opts.eps) {
        if (!(e > 0.0 && e < 1.0)) throw ParameterError("verify: every eps must lie in (0, 1)");
    }
    std::vector<double> eps = opts.eps;
    std::sort(eps.begin(), eps.end(), std::greater<>());
    eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
    const Tolerances& tol = opts.tolerances;
    const double half_sqrt_pi = 0.5 * kSqrtPi;
    const std::vector<double> probes = {0.04, 0.25, 0.64};

    std::vector<CheckFn> jobs;
    for (double e : eps) {
        const std::string at = "@eps=" + short_number(e);
        jobs.emplace_back([=, &tol] {
            return make_check("vstar_scaling" + at, e * layers::vstar_half_closed(1.0 / (e * e)), 2.0 / kSqrtPi,
                              tol["vstar_scaling"], Comparison::relative, "V*(1/eps^2) = O(1/eps)");
        });
        jobs.emplace_back([=, &tol] {
            return make_check("theta_bound" + at, std::abs(layers::fit_theta_conv(e)) / e, tol["theta_bound"], 0.0,
                              Comparison::upper_bound, "theta = O(eps)");
        });
        for (double x0 : probes) {
            jobs.emplace_back([=, &tol] {
                return make_check("limit_law" + at + ":x0=" + short_number(x0), layers::conv_layer_correction(x0, e),
                                  layers::conv_layer_limit(x0), tol["limit_law"], Comparison::absolute,
                                  "V(x0) -> 1 - sqrt(x0) as eps -> 0");
            });
        }
    }
    jobs.emplace_back([=, &tol] {
        const double e = eps.back();
        return make_check("theta_scaling@eps=" + short_number(e), layers::fit_theta_conv(e) / e, -half_sqrt_pi,
                          tol["theta_scaling"], Comparison::relative, "theta = O(eps), theta/eps -> -sqrt(pi)/2");
    });
    for (std::size_t k = 0; k + 1 < eps.size(); ++k) {
        const double coarse = eps[k];
        const double fine = eps[k + 1];
        for (double x0 : probes) {
            jobs.emplace_back([=, &tol] {
                const double decades = std::log10(coarse / fine);
                return make_check("limit_rate@eps=" + short_number(coarse) + "->" + short_number(fine) +
                                      ":x0=" + short_number(x0),
                                  limit_deviation(x0, coarse) / limit_deviation(x0, fine),
                                  std::pow(tol["limit_rate"], decades), 0.0, Comparison::lower_bound,
                                  "|V(x0) - (1 - sqrt(x0))| = O(eps)");
            });
        }
    }
    for (double xi : {1e2, 1e3, 1e4}) {
        jobs.emplace_back([=, &tol] {
            return make_check("left_decay@xi=" + short_number(xi),
                              layers::reac_layer0(xi, 0.5) * std::sqrt(std::numbers::pi * xi), 1.0, tol["left_decay"],
                              Comparison::absolute, "V0 decays as xi^(alpha-1)");
        });
    }
    jobs.emplace_back([&tol] {
        const double e = 1e-6;
        return make_check("mu_scaling@eps=1e-06", layers::mu_reac(e, 0.5) * std::pow(e, -1.0 / 3.0) * kSqrtPi, 1.0,
                          tol["mu_scaling"], Comparison::absolute, "mu = O(eps^((1-alpha)/(2-alpha)))");
    });
    jobs.emplace_back([&tol] {
        return make_check("mu_ratio", layers::mu_reac(1e-3, 0.5) / layers::mu_reac(1e-6, 0.5), 10.0, tol["mu_ratio"],
                          Comparison::relative, "mu = O(eps^((1-alpha)/(2-alpha)))");
    });
    jobs.emplace_back([&tol] {
        std::vector<double> x;
        std::vector<double> y;
        for (int k = 1; k <= 99; ++k) {
            x.push_back(0.01 * k);
            y.push_back(layers::conv_layer_correction(x.back(), 1e-4));
        }
        return make_check("non_classical_layer@eps=0.0001", exponential_fit_misfit(x, y), tol["non_classical_layer"],
                          0.0, Comparison::lower_bound, "fractional layer is not an exponential layer");
    });
    jobs.emplace_back([&tol] {
        std::vector<double> x;
        std::vector<double> y;
        for (int k = 1; k <= 99; ++k) {
            x.push_back(0.01 * k);
            y.push_back(layers::classical_conv_layer(x.back(), 1e-2));
        }
        return make_check("classical_layer@eps=0.01", exponential_fit_misfit(x, y), tol["classical_layer"], 0.0,
                          Comparison::upper_bound, "classical layer decays exponentially");
    });
    jobs.emplace_back([&tol] {
        const double e = 1e-3;
        const Solution s = solve_bvp(ProblemSpec::reaction_diffusion(0.5, e), Mesh::graded(1.0, 1024, 2.0, GradingSide::both));
        const double width = std::pow(e, 2.0 / 3.0);
        double reach = 0.0;
        for (std::size_t i = 0; i < s.mesh.size(); ++i) {
            const double x = s.mesh[i];
            const double indicator = std::abs(s.values[i] + 1.0 - layers::reac_layer0(x / width, 0.5));
            if (indicator > 0.1) reach = std::max(reach, 1.0 - x);
        }
        return make_check("right_layer@eps=0.001", reach, tol["right_layer"] * width, 0.0, Comparison::upper_bound,
                          "exponential right layer of width eps^(1/(2-alpha))");
    });
    jobs.emplace_back([&tol] {
        const ProblemSpec p = ProblemSpec::convection_diffusion(0.5, 1e-2);
        const Solution s = solve_bvp(p, Mesh::graded(1.0, 1024, 2.0, GradingSide::left));
        const auto exact = *reference_solution(p);
        double err = 0.0;
        for (std::size_t i = 0; i < s.mesh.size(); ++i) err = std::max(err, std::abs(s.values[i] - exact(s.mesh[i])));
        return make_check("conv_exact@eps=0.01", err, tol["conv_exact"], 0.0, Comparison::upper_bound,
                          "u = (x - 1) + V solves the convection-diffusion problem");
    });
    jobs.emplace_back([&tol] {
        const Solution s =
            solve_bvp(ProblemSpec::reaction_diffusion(0.5, 1e-3), Mesh::graded(1.0, 1024, 2.0, GradingSide::both));
        double excess = 0.0;
        for (double v : s.values) excess = std::max({excess, v, -1.0 - v});
        return make_check("reac_bounds@eps=0.001", excess, tol["reac_bounds"], 0.0, Comparison::upper_bound,
                          "-1 <= u <= 0 for the reaction-diffusion problem");
    });

    VerificationReport report;
    report.checks.resize(jobs.size());
    std::exception_ptr failure = nullptr;
    const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        try {
            report.checks[k] = jobs[k]();
        } catch (...) {
#pragma omp critical(fracbl_verify)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return report;
}

}  // namespace fracbl::report
