#include "fracbl/layers.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fracbl/errors.hpp"
#include "fracbl/laplace.hpp"
#include "fracbl/specfun.hpp"

namespace fracbl::layers {

namespace {

constexpr double kPi = std::numbers::pi;

void require_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0, 1)");
}

void require_alpha_open(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
}

void require_unit(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) throw ParameterError(std::string(what) + " must lie in [0, 1]");
}

// Original of 1/(s^{1+a}(1+s^{1-a})), i.e. xi E_{1-a,2}(-xi^{1-a}).
double slope_function(double xi, double alpha) {
    if (xi == 0.0) return 0.0;
    if (alpha == 0.5) return vstar_half_closed(xi);
    return laplace::talbot_invert(laplace::conv_layer_slope_transform(alpha), xi);
}

}  // namespace

LayerContext make_context(double alpha, double eps) {
    require_eps(eps);
    if (!(alpha >= 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in [0, 1)");
    LayerContext ctx;
    ctx.alpha = alpha;
    ctx.eps = eps;
    ctx.stretch_conv = 1.0 / (1.0 - alpha);
    ctx.stretch_reac = 1.0 / (2.0 - alpha);
    if (alpha == 0.0) {
        // slope of (e^{-xi} - e^{-1/eps}) / (1 - e^{-1/eps}) at xi = 0
        ctx.theta = 1.0 / std::expm1(-1.0 / eps);
        ctx.mu = 0.0;
    } else {
        ctx.theta = fit_theta_conv(eps, alpha);
        ctx.mu = mu_reac(eps, alpha);
    }
    return ctx;
}

double reduced_solution(double x) {
    require_unit(x, "x");
    return x - 1.0;
}

double classical_conv_layer(double x, double eps) {
    require_unit(x, "x");
    require_eps(eps);
    // (e^{-x/eps} - e^{-1/eps}) / (1 - e^{-1/eps}) = e^{-x/eps} expm1(-(1-x)/eps) / expm1(-1/eps)
    return std::exp(-x / eps) * std::expm1(-(1.0 - x) / eps) / std::expm1(-1.0 / eps);
}

SeriesValue vstar_half_series(double xi, std::size_t n_terms) {
    if (!(xi >= 0.0)) throw ParameterError("vstar_half_series: xi must be nonnegative");
    if (xi > kVStarSeriesMax) {
        throw ParameterError("vstar_half_series: xi above " + std::to_string(kVStarSeriesMax) +
                             ", use vstar_half_closed");
    }
    if (n_terms == 0) throw ParameterError("vstar_half_series: n_terms must be positive");
    using Quad = boost::multiprecision::cpp_bin_float_quad;
    const Quad x = xi;
    const Quad pi = boost::math::constants::pi<Quad>();
    Quad exp_term = x;                                        // xi^k / k!
    Quad erf_term = x * sqrt(x) / (Quad(3) * sqrt(pi) / 4);  // xi^{k+1/2} / Gamma(k+3/2)
    Quad sum = 0;
    Quad last = 0;
    for (std::size_t k = 1; k <= n_terms; ++k) {
        last = exp_term - erf_term;
        sum += last;
        const Quad kk = static_cast<double>(k);
        exp_term *= x / (kk + 1);
        erf_term *= x / (kk + Quad(1.5));
    }
    SeriesValue out;
    out.value = static_cast<double>(sum);
    out.converged = last == 0 || abs(last) < Quad(1e-15) * abs(sum);
    return out;
}

double vstar_half_closed(double xi) {
    if (!(xi >= 0.0)) throw ParameterError("vstar_half_closed: xi must be nonnegative");
    const double r = std::sqrt(xi);
    return specfun::erfcx(r) + 2.0 * std::sqrt(xi / kPi) - 1.0;
}

double fit_theta_conv(double eps) {
    require_eps(eps);
    return -1.0 / vstar_half_closed(1.0 / (eps * eps));
}

double fit_theta_conv(double eps, double alpha) {
    require_eps(eps);
    require_alpha_open(alpha);
    if (alpha == 0.5) return fit_theta_conv(eps);
    const double right = std::pow(eps, -1.0 / (1.0 - alpha));
    return -1.0 / slope_function(right, alpha);
}

double conv_layer_correction(double x, double eps) {
    require_unit(x, "x");
    require_eps(eps);
    const double scale = 1.0 / (eps * eps);
    const double v = 1.0 - vstar_half_closed(x * scale) / vstar_half_closed(scale);
    return std::clamp(v, 0.0, 1.0);
}

double conv_layer_correction(double x, double eps, double alpha) {
    require_alpha_open(alpha);
    if (alpha == 0.5) return conv_layer_correction(x, eps);
    require_unit(x, "x");
    require_eps(eps);
    if (x == 1.0) return 0.0;
    const double scale = std::pow(eps, -1.0 / (1.0 - alpha));
    const double theta = -1.0 / slope_function(scale, alpha);
    return conv_layer_ivp(x * scale, alpha, theta);
}

double conv_layer_ivp(double xi, double alpha, double theta) {
    require_alpha_open(alpha);
    if (!(xi >= 0.0)) throw ParameterError("conv_layer_ivp: xi must be nonnegative");
    return 1.0 + theta * slope_function(xi, alpha);
}

double conv_layer_limit(double x0) {
    require_unit(x0, "x0");
    return 1.0 - std::sqrt(x0);
}

double reac_layer0_ml(double xi, double alpha) {
    require_alpha_open(alpha);
    if (!(xi >= 0.0)) throw ParameterError("reac_layer0: xi must be nonnegative");
    const double order = 2.0 - alpha;
    const double z = std::pow(xi, order);
    return specfun::mittag_leffler({order, 1.0, z}) - xi * specfun::mittag_leffler({order, 2.0, z});
}

double reac_layer0_transform(double xi, double alpha) {
    require_alpha_open(alpha);
    if (!(xi >= 0.0)) throw ParameterError("reac_layer0: xi must be nonnegative");
    if (xi == 0.0) return 1.0;
    return laplace::talbot_invert(laplace::reac_layer0_transform_reduced(alpha), xi);
}

double reac_layer0(double xi, double alpha) {
    if (xi < kReacOverlapLo) return reac_layer0_ml(xi, alpha);
    if (xi > kReacOverlapHi) return reac_layer0_transform(xi, alpha);
    const double by_ml = reac_layer0_ml(xi, alpha);
    const double by_transform = reac_layer0_transform(xi, alpha);
    if (std::abs(by_ml - by_transform) > kReacAgreementTol * std::abs(by_transform)) {
        throw RegimeAgreementError("reac_layer0: Mittag-Leffler and transform routes disagree at xi=" +
                                   std::to_string(xi));
    }
    return xi < kReacSwitch ? by_ml : by_transform;
}

double mu_reac(double eps, double alpha) {
    require_eps(eps);
    require_alpha_open(alpha);
    return reac_layer0(std::pow(eps, -1.0 / (2.0 - alpha)), alpha);
}

double reac_layer1_model(double x, double eps, double alpha, double mu) {
    require_unit(x, "x");
    require_eps(eps);
    require_alpha_open(alpha);
    return (1.0 - mu) * std::exp(-(1.0 - x) / std::pow(eps, 1.0 / (2.0 - alpha)));
}

std::vector<double> evaluate_on_grid(const std::function<double(double)>& f,
                                     std::span<const double> xs) {
    std::vector<double> out(xs.size());
    std::exception_ptr failure = nullptr;
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[i] = f(xs[i]);
        } catch (...) {
#pragma omp critical(fracbl_layer_grid)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<double> serial::evaluate_on_grid(const std::function<double(double)>& f,
                                             std::span<const double> xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(f(x));
    return out;
}

}  // namespace fracbl::layers
