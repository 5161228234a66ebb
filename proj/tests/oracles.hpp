#pragma once

// Reference values computed independently of the library: extended or
// multiprecision arithmetic, Boost quadrature and textbook identities.

#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_100;

/// sum_k z^k / Gamma(a k + b) in 100-digit arithmetic until terms drop below 1e-40 of the sum.
inline double ml_taylor(double a, double b, double z) {
    const Big zz = z;
    const Big tiny("1e-45");
    const double peak = std::pow(std::abs(z), 1.0 / a);
    Big sum = 0;
    Big power = 1;
    for (int k = 0; k < 6000; ++k) {
        const Big arg = Big(a) * k + Big(b);
        Big term = 0;
        // 1/Gamma vanishes at the poles
        if (!(arg <= 0 && arg == floor(arg))) term = power / boost::math::tgamma(arg);
        sum += term;
        if (k > 2.0 * peak + 20.0 && abs(term) <= tiny * (abs(sum) + Big("1e-30"))) break;
        power *= zz;
    }
    return static_cast<double>(sum);
}

/// e^{x^2} erfc(x) for x >= 0 from the Laplace continued fraction (x >= 2)
/// or the long double library erfc (x < 2).
inline double erfcx(double x) {
    const long double xl = x;
    if (x < 2.0) return static_cast<double>(std::exp(xl * xl) * std::erfc(xl));
    long double tail = 0.0L;
    for (int k = 400; k >= 1; --k) tail = (k / 2.0L) / (xl + tail);
    return static_cast<double>(1.0L / (std::sqrt(std::numbers::pi_v<long double>) * (xl + tail)));
}

/// e^{z^2} erfc(-z), the closed form of E_{1/2,1}(z).
inline double ml_half_one(double z) {
    const long double zl = z;
    if (z <= 0.0) return erfcx(-z);
    return static_cast<double>(std::exp(zl * zl) * (2.0L - std::erfc(zl)));
}

/// V*(xi) = erfcx(sqrt xi) + 2 sqrt(xi/pi) - 1 from the oracle erfcx.
inline double vstar_half(double xi) {
    return erfcx(std::sqrt(xi)) + 2.0 * std::sqrt(xi / std::numbers::pi) - 1.0;
}

/// Caputo power rule D^beta x^p = Gamma(p+1)/Gamma(p+1-beta) x^{p-beta}.
inline double caputo_power(double p, double beta, double x) {
    return std::tgamma(p + 1.0) / std::tgamma(p + 1.0 - beta) * std::pow(x, p - beta);
}

/// 1/Gamma(2-beta) int_0^x (x-t)^{1-beta} u''(t) dt by tanh-sinh quadrature.
inline double caputo_quadrature(const std::function<double(double)>& u2, double beta, double x) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    // tc is b - t right of the midpoint, which keeps x - t exact near the singularity
    const double value = integrator.integrate(
        [&](double t, double tc) { return std::pow(tc > 0.0 ? tc : x - t, 1.0 - beta) * u2(t); }, 0.0, x);
    return value / std::tgamma(2.0 - beta);
}

}  // namespace oracle
