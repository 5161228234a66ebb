#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracbl::layers {

/// Stretching exponents and fitted constants for one (alpha, eps) pair.
struct LayerContext {
    double alpha = 0.5;
    double eps = 1e-2;
    /// x -> xi = x / eps^{stretch_conv} for the convection layer: 1/(1-alpha).
    double stretch_conv = 2.0;
    /// x -> xi = x / eps^{stretch_reac} for the reaction layers: 1/(2-alpha).
    double stretch_reac = 2.0 / 3.0;
    /// Initial slope of the convection layer IVP that hits zero at x = 1.
    double theta = 0.0;
    /// Value of the decaying reaction layer at x = 1.
    double mu = 0.0;
};

/// Builds a context; theta and mu are computed (mu only when alpha > 0).
/// Throws ParameterError unless 0 < eps < 1 and 0 <= alpha < 1.
LayerContext make_context(double alpha, double eps);

/// Reduced solution of -U' = -1, U(1) = 0.
double reduced_solution(double x);

/// Classical (alpha = 0) exponential layer with V(0) = 1, V(1) = 0.
double classical_conv_layer(double x, double eps);

struct SeriesValue {
    double value = 0.0;
    bool converged = false;
};

/// Largest xi accepted by vstar_half_series.
inline constexpr double kVStarSeriesMax = 30.0;

/// V*(xi) = sum_{k>=1} xi^k/k! - sum_{k>=1} xi^{k+1/2}/Gamma(k+3/2), both truncated
/// at n_terms. The two sums are each of size e^xi while V* grows like sqrt(xi),
/// so the partial sums are accumulated in 113-bit binary floating point.
/// Throws ParameterError for xi < 0 or xi > kVStarSeriesMax.
SeriesValue vstar_half_series(double xi, std::size_t n_terms);

/// V*(xi) = erfcx(sqrt xi) + 2 sqrt(xi/pi) - 1, overflow-free for every xi >= 0.
double vstar_half_closed(double xi);

/// theta = -1 / V*(1/eps^2), the slope that makes 1 + theta V* vanish at x = 1 (alpha = 1/2).
double fit_theta_conv(double eps);

/// theta for general alpha in (0,1): the IVP solution is 1 + theta B(xi) with
/// B the inverse transform of 1/(s^{1+a}(1+s^{1-a})), so theta = -1/B(eps^{-1/(1-a)}).
double fit_theta_conv(double eps, double alpha);

/// Layer correction 1 - V*(x/eps^2) / V*(1/eps^2) for alpha = 1/2.
double conv_layer_correction(double x, double eps);

/// Layer correction for general alpha through Talbot inversion; agrees with
/// the closed form at alpha = 1/2.
double conv_layer_correction(double x, double eps, double alpha);

/// Convection layer IVP solution V(xi) = 1 + theta B(xi) in the stretched variable.
double conv_layer_ivp(double xi, double alpha, double theta);

/// Pointwise eps -> 0 limit 1 - sqrt(x0).
double conv_layer_limit(double x0);

/// Below this xi, reac_layer0 uses the Mittag-Leffler form; above, Talbot inversion.
inline constexpr double kReacSwitch = 5.0;
inline constexpr double kReacOverlapLo = 2.0;
inline constexpr double kReacOverlapHi = 8.0;
inline constexpr double kReacAgreementTol = 1e-5;

/// Decaying solution of D^{2-a} V = V, V(0) = 1, V'(0) = -1, in the stretched variable.
/// Inside [kReacOverlapLo, kReacOverlapHi] both routes are evaluated and a
/// RegimeAgreementError is thrown if they differ by more than kReacAgreementTol.
double reac_layer0(double xi, double alpha);

/// Mittag-Leffler route: E_{2-a,1}(xi^{2-a}) - xi E_{2-a,2}(xi^{2-a}).
double reac_layer0_ml(double xi, double alpha);

/// Transform route: Talbot inversion of the reduced transform.
double reac_layer0_transform(double xi, double alpha);

/// mu = V0(1 / eps^{1/(2-a)}).
double mu_reac(double eps, double alpha);

/// (1 - mu) exp(-(1 - x) / eps^{1/(2-a)}).
double reac_layer1_model(double x, double eps, double alpha, double mu);

/// Evaluates f at every point; points are independent, OpenMP-parallel.
std::vector<double> evaluate_on_grid(const std::function<double(double)>& f,
                                     std::span<const double> xs);

namespace serial {
std::vector<double> evaluate_on_grid(const std::function<double(double)>& f,
                                     std::span<const double> xs);
}

}  // namespace fracbl::layers
