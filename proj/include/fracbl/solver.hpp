#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracbl/mesh.hpp"

namespace fracbl {

enum class ProblemKind {
    classical_cd,          // -eps u'' - u' = f, three-point scheme
    convection_diffusion,  // -eps D^{2-a} u - u' = f
    reaction_diffusion,    // -eps D^{2-a} u + u = f
    stretched_layer_conv,  // D^{2-a} V + V' = 0 on [0, eps^{-1/(1-a)}]
    stretched_layer_reac,  // D^{2-a} V = V on [0, eps^{-1/(2-a)}]
};

std::string to_string(ProblemKind kind);
ProblemKind parse_problem_kind(const std::string& name);

/// Discretization of the first-order term.
enum class ConvectionScheme {
    upwind,   // (u_{i+1} - u_i) / h_i, one-sided toward x = 1
    central,  // (u_{i+1} - u_{i-1}) / (h_{i-1} + h_i)
};

/// f(x) = sum c_k x^{p_k} with p_k >= 0.
class RightHandSide {
public:
    struct Term {
        double coefficient;
        double power;
    };

    RightHandSide() = default;
    static RightHandSide constant(double c);
    /// Throws ParameterError on negative powers or non-finite entries.
    static RightHandSide monomials(std::vector<Term> terms);

    double operator()(double x) const;
    std::span<const Term> terms() const noexcept { return terms_; }

private:
    std::vector<Term> terms_;
};

struct ProblemSpec {
    ProblemKind kind = ProblemKind::convection_diffusion;
    double alpha = 0.5;
    double eps = 1e-2;
    RightHandSide rhs = RightHandSide::constant(-1.0);
    double left_bc = 0.0;
    double right_bc = 0.0;
    ConvectionScheme scheme = ConvectionScheme::upwind;

    /// 1 for the unit-interval problems, eps^{-1/(1-a)} or eps^{-1/(2-a)} when stretched.
    double domain_length() const;

    /// Throws ParameterError for parameters outside the kind's range.
    void validate() const;

    static ProblemSpec classical(double eps);
    static ProblemSpec convection_diffusion(double alpha, double eps);
    static ProblemSpec reaction_diffusion(double alpha, double eps);
    /// V(0) = 1, V(right) = 0.
    static ProblemSpec stretched_conv(double alpha, double eps);
    static ProblemSpec stretched_reac(double alpha, double eps);
};

/// Dense row-major system over the interior unknowns u_1..u_{N-1}.
struct LinearSystem {
    std::size_t n = 0;
    std::vector<double> matrix;
    std::vector<double> rhs;

    double& at(std::size_t r, std::size_t c) { return matrix[r * n + c]; }
    double at(std::size_t r, std::size_t c) const { return matrix[r * n + c]; }
};

/// Rows are independent and filled OpenMP-parallel. The mesh must end at
/// p.domain_length(). Boundary values are moved to the right-hand side.
LinearSystem assemble(const ProblemSpec& p, const Mesh& mesh);

namespace serial {
LinearSystem assemble(const ProblemSpec& p, const Mesh& mesh);
}

inline constexpr double kGrowthWarning = 1e8;
inline constexpr double kResidualTolerance = 1e-10;

struct HessenbergResult {
    std::vector<double> x;
    /// Largest entry met during elimination over the largest entry of A.
    double growth_factor = 1.0;
};

/// Solves a lower-Hessenberg system by eliminating the superdiagonal from the
/// last row upward, then substituting forward; O(n^2), no pivoting.
/// Throws SingularPivotError with the mesh node (row + 1) of a vanishing pivot.
HessenbergResult solve_hessenberg(LinearSystem system);

/// max_i |(A x - b)_i|.
double residual_norm(const LinearSystem& system, std::span<const double> x);

struct Solution {
    Mesh mesh;
    std::vector<double> values;
    double residual_norm = 0.0;
    double rhs_norm = 0.0;
    double bc_error = 0.0;
    double growth_factor = 1.0;
    std::vector<std::string> warnings;

    bool residual_ok() const { return residual_norm <= kResidualTolerance * rhs_norm; }
};

/// Assembles and solves. Growth above kGrowthWarning and a residual above
/// kResidualTolerance * ||b|| are recorded in warnings.
Solution solve_bvp(const ProblemSpec& p, const Mesh& mesh);

/// Exact solution where one is known:
///   classical_cd, f = -1, zero boundary values: (x - 1) + classical layer;
///   convection_diffusion, f = -1, zero boundary values: (x - 1) + layer correction;
///   stretched_layer_conv with V(0) = 1, V(right) = 0: 1 + theta B(xi).
std::optional<std::function<double(double)>> reference_solution(const ProblemSpec& p);

struct MeshFamily {
    MeshKind kind = MeshKind::graded;
    double grading = 2.0;
    GradingSide side = GradingSide::left;

    Mesh make(double length, std::size_t intervals, double eps) const;
};

/// Default mesh family for a problem kind.
MeshFamily default_family(ProblemKind kind);

struct ConvergenceRow {
    std::size_t intervals = 0;
    double max_error = 0.0;
    /// log(e_prev / e) / log(N / N_prev); NaN on the first row.
    double order = 0.0;
};

/// Max nodal errors against the oracle (given or reference_solution), else
/// against a finer solution on reference_intervals nodes, interpolated linearly.
std::vector<ConvergenceRow> converge_study(const ProblemSpec& p, const MeshFamily& family,
                                           std::span<const std::size_t> intervals,
                                           std::optional<std::function<double(double)>> oracle = std::nullopt,
                                           std::size_t reference_intervals = 2048);

}  // namespace fracbl
