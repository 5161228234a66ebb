#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fracbl {

enum class MeshKind { uniform, graded, shishkin, custom };
enum class GradingSide { left, right, both };

std::string to_string(MeshKind kind);
std::string to_string(GradingSide side);

/// Strictly increasing nodes 0 = x_0 < ... < x_N = L with construction metadata.
class Mesh {
public:
    static Mesh uniform(double length, std::size_t intervals);

    /// x_i = L (i/N)^r toward the left end; right mirrors it, both grades
    /// [0, L/2] and mirrors onto [L/2, L] (N must be even).
    static Mesh graded(double length, std::size_t intervals, double r, GradingSide side);

    /// Piecewise uniform: N/2 intervals on [0, tau], tau = min(L/2, 2 eps ln N)
    /// resolving an exponential layer of width eps at x = 0.
    static Mesh shishkin(double length, std::size_t intervals, double eps);

    /// Arbitrary nodes; validated for x_0 = 0 and strict monotonicity.
    static Mesh from_nodes(std::vector<double> nodes);

    std::span<const double> nodes() const noexcept { return nodes_; }
    double operator[](std::size_t i) const { return nodes_[i]; }
    std::size_t intervals() const noexcept { return nodes_.size() - 1; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double length() const noexcept { return nodes_.back(); }
    double step(std::size_t i) const { return nodes_[i + 1] - nodes_[i]; }

    MeshKind kind() const noexcept { return kind_; }
    double grading() const noexcept { return grading_; }
    GradingSide side() const noexcept { return side_; }

    /// Same kind and grading on the nodes scaled by c > 0.
    Mesh scaled(double c) const;

private:
    Mesh(std::vector<double> nodes, MeshKind kind, double grading, GradingSide side);

    std::vector<double> nodes_;
    MeshKind kind_;
    double grading_;
    GradingSide side_;
};

}  // namespace fracbl
