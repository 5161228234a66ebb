#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fracbl::laplace {

using Complex = std::complex<double>;

/// A Laplace-domain function evaluated with principal-branch powers.
///
/// Every TransformFn carries the contract that its singularities lie on the
/// closed negative real axis (s = 0 included), which is what makes a contour
/// wrapped around that axis valid. Instances are immutable and may be shared
/// across threads.
class TransformFn {
public:
    using Eval = std::function<Complex(Complex)>;

    /// Wraps f; the caller vouches that f is analytic off (-inf, 0].
    static TransformFn on_negative_axis(std::string name, Eval f);

    Complex operator()(Complex s) const { return eval_(s); }
    const std::string& name() const noexcept { return name_; }

    /// c1*F + c2*G; the contract is preserved under linear combination.
    friend TransformFn linear_combination(double c1, const TransformFn& f, double c2,
                                          const TransformFn& g);

private:
    TransformFn(std::string name, Eval f) : name_(std::move(name)), eval_(std::move(f)) {}

    std::string name_;
    Eval eval_;
};

inline constexpr int kDefaultNodes = 64;
inline constexpr int kMinNodes = 16;

struct Inversion {
    double value = 0.0;
    /// |Im| of the contour sum; zero up to rounding for real-valued originals.
    double imag_residue = 0.0;
    /// |f_M - f_2M|, the change under node doubling.
    double refinement_change = 0.0;
    /// Rounding floor of the contour sum, eps * sum |terms|.
    double rounding_floor = 0.0;
    int nodes = 0;
};

/// Single contour quadrature with M nodes, no refinement check.
Inversion talbot_sum(const TransformFn& f, double t, int nodes);

/// f(t) from F(s) on a fixed Talbot-type contour of scale min(M/2, 24)/t.
/// Repeats with 2M nodes and throws NonConvergenceError if the two results
/// differ by more than 1e-6 relative (above the rounding floor).
Inversion talbot_invert_checked(const TransformFn& f, double t, int nodes = kDefaultNodes);

/// Value-only form of talbot_invert_checked.
double talbot_invert(const TransformFn& f, double t, int nodes = kDefaultNodes);

/// Inverts at every t in ts. Points are independent; OpenMP-parallel.
std::vector<double> talbot_invert_grid(const TransformFn& f, std::span<const double> ts,
                                       int nodes = kDefaultNodes);

namespace serial {
std::vector<double> talbot_invert_grid(const TransformFn& f, std::span<const double> ts,
                                       int nodes = kDefaultNodes);
}

/// Transform of the convection layer IVP  D^{2-a}V + V' = 0, V(0)=1, V'(0)=theta:
///   (s^a + s + theta) / (s^{1+a} (1 + s^{1-a})),  0 < a < 1.
/// 1 + s^{1-a} has no root on the principal sheet since pi/(1-a) > pi.
TransformFn conv_layer_transform(double alpha, double theta);

/// theta-coefficient of conv_layer_transform: 1 / (s^{1+a} (1 + s^{1-a})).
/// Its original is xi E_{1-a,2}(-xi^{1-a}).
TransformFn conv_layer_slope_transform(double alpha);

/// Decaying branch (theta = -1) of the reaction layer transform
///   (s - 1) / (s^a (s^{2-a} - 1)).
/// For a = 1/2 the factor s - 1 is cancelled: (sqrt s + 1)/(sqrt s (s + sqrt s + 1)).
/// Other a use the quotient as written with a first-order expansion within
/// 1e-6 of the removable point s = 1.
TransformFn reac_layer0_transform_reduced(double alpha);

}  // namespace fracbl::laplace
