#include "fracbl/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "fracbl/errors.hpp"

namespace fracbl {

namespace {

void require_shape(double length, std::size_t intervals) {
    if (!(length > 0.0) || !std::isfinite(length)) throw ParameterError("mesh: length must be positive and finite");
    if (intervals < 2) throw ParameterError("mesh: at least 2 intervals required");
}

void require_strict(const std::vector<double>& x) {
    if (x.size() < 3) throw ParameterError("mesh: at least 2 intervals required");
    if (x.front() != 0.0) throw ParameterError("mesh: first node must be 0");
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1]) || !std::isfinite(x[i])) {
            throw ParameterError("mesh: nodes must be finite and strictly increasing (node " + std::to_string(i) + ")");
        }
    }
}

}  // namespace

std::string to_string(MeshKind kind) {
    switch (kind) {
        case MeshKind::uniform: return "uniform";
        case MeshKind::graded: return "graded";
        case MeshKind::shishkin: return "shishkin";
        case MeshKind::custom: return "custom";
    }
    return "unknown";
}

std::string to_string(GradingSide side) {
    switch (side) {
        case GradingSide::left: return "left";
        case GradingSide::right: return "right";
        case GradingSide::both: return "both";
    }
    return "unknown";
}

Mesh::Mesh(std::vector<double> nodes, MeshKind kind, double grading, GradingSide side)
    : nodes_(std::move(nodes)), kind_(kind), grading_(grading), side_(side) {
    require_strict(nodes_);
}

Mesh Mesh::uniform(double length, std::size_t intervals) {
    require_shape(length, intervals);
    std::vector<double> x(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) {
        x[i] = length * static_cast<double>(i) / static_cast<double>(intervals);
    }
    x.back() = length;
    return Mesh(std::move(x), MeshKind::uniform, 1.0, GradingSide::left);
}

Mesh Mesh::graded(double length, std::size_t intervals, double r, GradingSide side) {
    require_shape(length, intervals);
    if (!(r >= 1.0) || !std::isfinite(r)) throw ParameterError("mesh: grading exponent must be >= 1");
    const auto n = static_cast<double>(intervals);
    std::vector<double> x(intervals + 1);
    switch (side) {
        case GradingSide::left:
            for (std::size_t i = 0; i <= intervals; ++i) x[i] = length * std::pow(i / n, r);
            break;
        case GradingSide::right:
            for (std::size_t i = 0; i <= intervals; ++i) {
                x[i] = length - length * std::pow((n - static_cast<double>(i)) / n, r);
            }
            break;
        case GradingSide::both: {
            if (intervals % 2 != 0) throw ParameterError("mesh: graded(both) needs an even interval count");
            const std::size_t half = intervals / 2;
            const double h = static_cast<double>(half);
            const double mid = 0.5 * length;
            for (std::size_t i = 0; i <= half; ++i) {
                const double left = mid * std::pow(static_cast<double>(i) / h, r);
                x[i] = left;
                x[intervals - i] = length - left;
            }
            x[half] = mid;
            break;
        }
    }
    x.front() = 0.0;
    x.back() = length;
    return Mesh(std::move(x), MeshKind::graded, r, side);
}

Mesh Mesh::shishkin(double length, std::size_t intervals, double eps) {
    require_shape(length, intervals);
    if (!(eps > 0.0)) throw ParameterError("mesh: shishkin eps must be positive");
    if (intervals % 2 != 0) throw ParameterError("mesh: shishkin needs an even interval count");
    const double tau = std::min(0.5 * length, 2.0 * eps * std::log(static_cast<double>(intervals)));
    const std::size_t half = intervals / 2;
    const double h = static_cast<double>(half);
    std::vector<double> x(intervals + 1);
    for (std::size_t i = 0; i <= half; ++i) x[i] = tau * static_cast<double>(i) / h;
    for (std::size_t i = 1; i <= half; ++i) x[half + i] = tau + (length - tau) * static_cast<double>(i) / h;
    x.back() = length;
    return Mesh(std::move(x), MeshKind::shishkin, 1.0, GradingSide::left);
}

Mesh Mesh::from_nodes(std::vector<double> nodes) {
    return Mesh(std::move(nodes), MeshKind::custom, 1.0, GradingSide::left);
}

Mesh Mesh::scaled(double c) const {
    if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("mesh: scale factor must be positive");
    std::vector<double> x(nodes_);
    for (double& v : x) v *= c;
    return Mesh(std::move(x), kind_, grading_, side_);
}

}  // namespace fracbl
