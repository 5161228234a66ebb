#include "fracbl/caputo.hpp"

#include <cmath>
#include <string>

#include "fracbl/errors.hpp"
#include "fracbl/specfun.hpp"

namespace fracbl {

// Grants the serial builder access to the private constructor and storage.
struct CaputoAccess {
    static CaputoOperator make(const Mesh& mesh, double beta) { return CaputoOperator(mesh, beta); }
    static std::vector<double>& kernel(CaputoOperator& op) { return op.kernel_; }
    static std::size_t offset(std::size_t i) { return CaputoOperator::offset(i); }
};

namespace {

void require_beta(double beta) {
    if (!(beta > 1.0 && beta < 2.0)) throw ParameterError("caputo: beta must lie in (1, 2)");
}

// (d^g - (d-h)^g) / Gamma(3-beta) without cancellation when h << d.
void fill_kernel_row(std::span<const double> x, double gamma_exp, double scale, std::size_t i,
                     double* out) {
    const double xi = x[i];
    for (std::size_t j = 1; j <= i; ++j) {
        const double d = xi - x[j - 1];
        const double h = x[j] - x[j - 1];
        out[j - 1] = -std::pow(d, gamma_exp) * std::expm1(gamma_exp * std::log1p(-h / d)) * scale;
    }
}

void check_length(const CaputoOperator& op, std::size_t n) {
    if (n != op.mesh().size()) {
        throw ParameterError("caputo: expected " + std::to_string(op.mesh().size()) + " values, got " +
                             std::to_string(n));
    }
}

// Slope form rather than the stencil weights: the weights are O(1/h^2) and
// their rounding would swamp u'' on strongly graded meshes.
double second_difference(const CaputoOperator& op, std::span<const double> u, std::size_t j) {
    const std::size_t k = op.stencil_start(j);
    const Mesh& m = op.mesh();
    const double h0 = m.step(k);
    const double h1 = m.step(k + 1);
    const double s0 = (u[k + 1] - u[k]) / h0;
    const double s1 = (u[k + 2] - u[k + 1]) / h1;
    return 2.0 * (s1 - s0) / (h0 + h1);
}

}  // namespace

CaputoOperator::CaputoOperator(Mesh mesh, double beta) : mesh_(std::move(mesh)), beta_(beta) {
    require_beta(beta);
    const std::size_t n = mesh_.intervals();
    kernel_.resize(n * (n + 1) / 2);
    stencil_.resize(n);
    for (std::size_t j = 1; j <= n; ++j) {
        const std::size_t k = stencil_start(j);
        const double h0 = mesh_.step(k);
        const double h1 = mesh_.step(k + 1);
        const double span = h0 + h1;
        stencil_[j - 1] = {2.0 / (h0 * span), -2.0 / (h0 * h1), 2.0 / (h1 * span)};
    }
}

std::vector<double> CaputoOperator::row(std::size_t i) const {
    if (i > intervals()) throw ParameterError("caputo: row index out of range");
    if (i == 0) return {};
    std::vector<double> w(std::min(i + 1, intervals()) + 1, 0.0);
    const double* k = kernel_.data() + offset(i);
    for (std::size_t j = 1; j <= i; ++j) {
        const std::size_t s = stencil_start(j);
        const auto& c = stencil_[j - 1];
        w[s] += k[j - 1] * c[0];
        w[s + 1] += k[j - 1] * c[1];
        w[s + 2] += k[j - 1] * c[2];
    }
    return w;
}

std::vector<double> CaputoOperator::apply(std::span<const double> values) const {
    check_length(*this, values.size());
    const std::size_t n = intervals();
    std::vector<double> d2(n + 1, 0.0);
    for (std::size_t j = 1; j <= n; ++j) d2[j] = second_difference(*this, values, j);
    std::vector<double> out(n + 1, 0.0);
    const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t r = 1; r <= rows; ++r) {
        const auto i = static_cast<std::size_t>(r);
        const double* k = kernel_.data() + offset(i);
        double acc = 0.0;
        for (std::size_t j = 1; j <= i; ++j) acc += k[j - 1] * d2[j];
        out[i] = acc;
    }
    return out;
}

CaputoOperator build_operator(const Mesh& mesh, double beta) {
    CaputoOperator op(mesh, beta);
    const std::size_t n = mesh.intervals();
    const double gamma_exp = 2.0 - beta;
    const double scale = specfun::rgamma(3.0 - beta);
    const auto x = op.mesh_.nodes();
    const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t r = 1; r <= rows; ++r) {
        const auto i = static_cast<std::size_t>(r);
        fill_kernel_row(x, gamma_exp, scale, i, op.kernel_.data() + CaputoOperator::offset(i));
    }
    return op;
}

CaputoOperator serial::build_operator(const Mesh& mesh, double beta) {
    CaputoOperator op = CaputoAccess::make(mesh, beta);
    const double gamma_exp = 2.0 - beta;
    const double scale = specfun::rgamma(3.0 - beta);
    auto& kernel = CaputoAccess::kernel(op);
    const auto x = op.mesh().nodes();
    for (std::size_t i = 1; i <= mesh.intervals(); ++i) {
        fill_kernel_row(x, gamma_exp, scale, i, kernel.data() + CaputoAccess::offset(i));
    }
    return op;
}

std::vector<double> serial::apply(const CaputoOperator& op, std::span<const double> values) {
    check_length(op, values.size());
    const std::size_t n = op.mesh().intervals();
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= i; ++j) acc += op.kernel(i, j) * second_difference(op, values, j);
        out[i] = acc;
    }
    return out;
}

}  // namespace fracbl
