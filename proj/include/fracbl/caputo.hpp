#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "fracbl/mesh.hpp"

namespace fracbl {

/// Discrete left-anchored Caputo derivative of order beta in (1, 2).
///
/// D^beta u(x_i) = 1/Gamma(2-beta) int_0^{x_i} (x_i - t)^{1-beta} u''(t) dt with u''
/// frozen on (x_{j-1}, x_j) at twice the divided difference u[x_{j-1}, x_j, x_{j+1}]
/// (the final interval x_N borrows x_{N-2}). The kernel integrals
///   kappa_ij = ((x_i - x_{j-1})^{2-beta} - (x_i - x_j)^{2-beta}) / Gamma(3-beta)
/// are stored packed together with the second-difference stencils, so the operator
/// is applied as kappa * (D2 u) and is exact on polynomials of degree <= 2.
/// Row i reaches node i+1, which makes the assembled matrix lower Hessenberg.
class CaputoOperator {
public:
    double beta() const noexcept { return beta_; }
    const Mesh& mesh() const noexcept { return mesh_; }

    /// kappa_ij for 1 <= j <= i <= N.
    double kernel(std::size_t i, std::size_t j) const { return kernel_[offset(i) + (j - 1)]; }

    /// First node of the second-difference stencil for interval j, 1 <= j <= N.
    std::size_t stencil_start(std::size_t j) const noexcept { return j < intervals() ? j - 1 : j - 2; }

    /// Weights of 2 u[x_k, x_{k+1}, x_{k+2}] for k = stencil_start(j).
    const std::array<double, 3>& stencil(std::size_t j) const { return stencil_[j - 1]; }

    /// Node weights of row i, indices 0..min(i+1, N); row 0 is empty.
    std::vector<double> row(std::size_t i) const;

    /// Row-wise application, OpenMP-parallel over nodes; entry 0 is 0.
    /// Throws ParameterError on a length mismatch.
    std::vector<double> apply(std::span<const double> values) const;

private:
    friend CaputoOperator build_operator(const Mesh& mesh, double beta);
    friend struct CaputoAccess;

    CaputoOperator(Mesh mesh, double beta);

    std::size_t intervals() const noexcept { return mesh_.intervals(); }
    static std::size_t offset(std::size_t i) noexcept { return i * (i - 1) / 2; }

    Mesh mesh_;
    double beta_;
    std::vector<double> kernel_;
    std::vector<std::array<double, 3>> stencil_;
};

/// Builds the operator; kernel rows are independent and built OpenMP-parallel.
/// Throws ParameterError unless 1 < beta < 2.
CaputoOperator build_operator(const Mesh& mesh, double beta);

namespace serial {
CaputoOperator build_operator(const Mesh& mesh, double beta);
std::vector<double> apply(const CaputoOperator& op, std::span<const double> values);
}  // namespace serial

}  // namespace fracbl
