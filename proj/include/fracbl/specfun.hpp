#pragma once

#include <cstddef>

namespace fracbl::specfun {

/// Largest argument for which Gamma is representable in double.
inline constexpr double kGammaOverflowThreshold = 171.61447887182298;

/// Gamma function. Lanczos approximation for x >= 0.5, reflection below.
/// Throws ParameterError at poles (nonpositive integers) and OverflowError
/// above kGammaOverflowThreshold.
double gamma(double x);

/// log|Gamma(x)|; thread-safe replacement for std::lgamma (which writes signgam).
double log_abs_gamma(double x);

/// 1/Gamma(x); entire, so it returns 0 at the poles of Gamma and never throws.
double rgamma(double x);

/// sin(pi x) with exact argument reduction.
double sinpi(double x);

double erfc(double x);

/// Scaled complementary error function exp(x^2) erfc(x), overflow-free for x >= 0.
double erfcx(double x);

struct MLParams {
    double a;  ///< first parameter, > 0
    double b;  ///< second parameter
    double z;  ///< real argument
};

enum class MLRegime {
    taylor,      ///< sum z^k / Gamma(a k + b)
    kummer,      ///< a == 1, z < 0: Kummer-transformed series, no cancellation
    asymptotic,  ///< pole residues plus algebraic series in 1/z
    laplace,     ///< residues plus Talbot inversion of the pole-free transform remainder
};

const char* to_string(MLRegime regime) noexcept;

struct MLEvaluation {
    double value = 0.0;
    MLRegime regime = MLRegime::taylor;
    /// Relative error estimate produced by the regime itself.
    double error_estimate = 0.0;
    /// False when the estimate exceeds kMLAccuracyFlag; the value is still returned.
    bool accurate = true;
};

// Regime thresholds, in terms of R = |z|^(1/a) (the modulus of the transform poles).
inline constexpr double kMLSeriesRadius = 4.0;        ///< z < 0: Taylor while R <= this
inline constexpr double kMLAsymptoticOnset = 40.0;    ///< asymptotics once R >= this
inline constexpr std::size_t kMLMaxTerms = 500;       ///< series cap; beyond it fall back
inline constexpr double kMLAccuracyFlag = 1e-8;

/// Two-parameter Mittag-Leffler function E_{a,b}(z) with regime switching.
/// Throws ParameterError if a <= 0 or any input is non-finite.
MLEvaluation mittag_leffler_eval(const MLParams& p);

/// Value-only convenience wrapper around mittag_leffler_eval.
double mittag_leffler(const MLParams& p);

/// Evaluates in a forced regime. Returns an evaluation with accurate == false
/// if that regime does not apply to p (wrong sign of z, series cap hit, ...).
MLEvaluation mittag_leffler_in_regime(const MLParams& p, MLRegime regime);

}  // namespace fracbl::specfun
