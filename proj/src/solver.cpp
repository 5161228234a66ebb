#include "fracbl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "fracbl/caputo.hpp"
#include "fracbl/errors.hpp"
#include "fracbl/layers.hpp"

namespace fracbl {

namespace {

bool is_fractional(ProblemKind kind) { return kind != ProblemKind::classical_cd; }

bool is_stretched(ProblemKind kind) {
    return kind == ProblemKind::stretched_layer_conv || kind == ProblemKind::stretched_layer_reac;
}

bool has_convection(ProblemKind kind) {
    return kind == ProblemKind::classical_cd || kind == ProblemKind::convection_diffusion ||
           kind == ProblemKind::stretched_layer_conv;
}

bool rhs_is_constant(const RightHandSide& f, double c) {
    double constant = 0.0;
    for (const auto& t : f.terms()) {
        if (t.coefficient == 0.0) continue;
        if (t.power != 0.0) return false;
        constant += t.coefficient;
    }
    return constant == c;
}

// One interior equation: node weights of the differential operator and f(x_i).
struct RowBuilder {
    const ProblemSpec& p;
    const Mesh& mesh;
    const CaputoOperator* op;
    double diffusion;

    void fill(std::size_t i, LinearSystem& sys) const {
        const std::size_t n = mesh.intervals();
        const std::size_t r = i - 1;
        double b = p.rhs(mesh[i]);
        auto add = [&](std::size_t node, double w) {
            if (node == 0) {
                b -= w * p.left_bc;
            } else if (node == n) {
                b -= w * p.right_bc;
            } else {
                sys.at(r, node - 1) += w;
            }
        };
        if (op != nullptr) {
            const std::vector<double> w = op->row(i);
            for (std::size_t k = 0; k < w.size(); ++k) add(k, diffusion * w[k]);
        } else {
            const double h0 = mesh.step(i - 1);
            const double h1 = mesh.step(i);
            const double span = h0 + h1;
            add(i - 1, diffusion * 2.0 / (h0 * span));
            add(i, -diffusion * 2.0 / (h0 * h1));
            add(i + 1, diffusion * 2.0 / (h1 * span));
        }
        if (has_convection(p.kind)) {
            if (p.scheme == ConvectionScheme::upwind) {
                const double inv = 1.0 / mesh.step(i);
                add(i, inv);
                add(i + 1, -inv);
            } else {
                const double inv = 1.0 / (mesh.step(i - 1) + mesh.step(i));
                add(i - 1, inv);
                add(i + 1, -inv);
            }
        } else {
            add(i, 1.0);
        }
        sys.rhs[r] = b;
    }
};

void check_mesh(const ProblemSpec& p, const Mesh& mesh) {
    const double length = p.domain_length();
    if (std::abs(mesh.length() - length) > 1e-12 * length) {
        std::ostringstream msg;
        msg << "assemble: mesh ends at " << mesh.length() << " but the domain is [0, " << length << "]";
        throw ParameterError(msg.str());
    }
}

LinearSystem empty_system(const Mesh& mesh) {
    LinearSystem sys;
    sys.n = mesh.intervals() - 1;
    sys.matrix.assign(sys.n * sys.n, 0.0);
    sys.rhs.assign(sys.n, 0.0);
    return sys;
}

std::optional<CaputoOperator> operator_for(const ProblemSpec& p, const Mesh& mesh, bool parallel) {
    if (!is_fractional(p.kind)) return std::nullopt;
    return parallel ? build_operator(mesh, 2.0 - p.alpha) : serial::build_operator(mesh, 2.0 - p.alpha);
}

double diffusion_coefficient(const ProblemSpec& p) { return is_stretched(p.kind) ? -1.0 : -p.eps; }

double interpolate(const Mesh& mesh, std::span<const double> values, double x) {
    const auto nodes = mesh.nodes();
    if (x <= nodes.front()) return values.front();
    if (x >= nodes.back()) return values.back();
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    const auto k = static_cast<std::size_t>(it - nodes.begin());
    const double t = (x - nodes[k - 1]) / (nodes[k] - nodes[k - 1]);
    return values[k - 1] + t * (values[k] - values[k - 1]);
}

}  // namespace

std::string to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::classical_cd: return "classical";
        case ProblemKind::convection_diffusion: return "conv";
        case ProblemKind::reaction_diffusion: return "reac";
        case ProblemKind::stretched_layer_conv: return "stretched-conv";
        case ProblemKind::stretched_layer_reac: return "stretched-reac";
    }
    return "unknown";
}

ProblemKind parse_problem_kind(const std::string& name) {
    for (auto kind : {ProblemKind::classical_cd, ProblemKind::convection_diffusion, ProblemKind::reaction_diffusion,
                      ProblemKind::stretched_layer_conv, ProblemKind::stretched_layer_reac}) {
        if (name == to_string(kind)) return kind;
    }
    throw ParameterError("unknown problem kind '" + name + "'");
}

RightHandSide RightHandSide::constant(double c) { return monomials({{c, 0.0}}); }

RightHandSide RightHandSide::monomials(std::vector<Term> terms) {
    for (const auto& t : terms) {
        if (!std::isfinite(t.coefficient) || !std::isfinite(t.power)) {
            throw ParameterError("rhs: coefficients and powers must be finite");
        }
        if (t.power < 0.0) throw ParameterError("rhs: negative powers are not supported");
    }
    RightHandSide f;
    f.terms_ = std::move(terms);
    return f;
}

double RightHandSide::operator()(double x) const {
    double sum = 0.0;
    for (const auto& t : terms_) sum += t.coefficient * (t.power == 0.0 ? 1.0 : std::pow(x, t.power));
    return sum;
}

double ProblemSpec::domain_length() const {
    switch (kind) {
        case ProblemKind::stretched_layer_conv: return std::pow(eps, -1.0 / (1.0 - alpha));
        case ProblemKind::stretched_layer_reac: return std::pow(eps, -1.0 / (2.0 - alpha));
        default: return 1.0;
    }
}

void ProblemSpec::validate() const {
    if (is_fractional(kind) && !(alpha > 0.0 && alpha < 1.0)) {
        throw ParameterError("problem: alpha must lie in (0, 1) for " + to_string(kind));
    }
    if (is_stretched(kind)) {
        if (!(eps > 0.0 && eps <= 1.0)) throw ParameterError("problem: eps must lie in (0, 1]");
    } else if (!(eps >= 0.0 && eps <= 1.0)) {
        throw ParameterError("problem: eps must lie in [0, 1]");
    }
    if (!std::isfinite(left_bc) || !std::isfinite(right_bc)) {
        throw ParameterError("problem: boundary values must be finite");
    }
}

ProblemSpec ProblemSpec::classical(double eps) {
    ProblemSpec p;
    p.kind = ProblemKind::classical_cd;
    p.alpha = 0.0;
    p.eps = eps;
    return p;
}

ProblemSpec ProblemSpec::convection_diffusion(double alpha, double eps) {
    ProblemSpec p;
    p.kind = ProblemKind::convection_diffusion;
    p.alpha = alpha;
    p.eps = eps;
    return p;
}

ProblemSpec ProblemSpec::reaction_diffusion(double alpha, double eps) {
    ProblemSpec p = convection_diffusion(alpha, eps);
    p.kind = ProblemKind::reaction_diffusion;
    return p;
}

ProblemSpec ProblemSpec::stretched_conv(double alpha, double eps) {
    ProblemSpec p = convection_diffusion(alpha, eps);
    p.kind = ProblemKind::stretched_layer_conv;
    p.rhs = RightHandSide::constant(0.0);
    p.left_bc = 1.0;
    return p;
}

ProblemSpec ProblemSpec::stretched_reac(double alpha, double eps) {
    ProblemSpec p = stretched_conv(alpha, eps);
    p.kind = ProblemKind::stretched_layer_reac;
    return p;
}

LinearSystem assemble(const ProblemSpec& p, const Mesh& mesh) {
    p.validate();
    check_mesh(p, mesh);
    const auto op = operator_for(p, mesh, true);
    LinearSystem sys = empty_system(mesh);
    const RowBuilder rows{p, mesh, op ? &*op : nullptr, diffusion_coefficient(p)};
    std::exception_ptr failure = nullptr;
    const auto n = static_cast<std::ptrdiff_t>(mesh.intervals());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 1; i < n; ++i) {
        try {
            rows.fill(static_cast<std::size_t>(i), sys);
        } catch (...) {
#pragma omp critical(fracbl_assemble)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return sys;
}

LinearSystem serial::assemble(const ProblemSpec& p, const Mesh& mesh) {
    p.validate();
    check_mesh(p, mesh);
    const auto op = operator_for(p, mesh, false);
    LinearSystem sys = empty_system(mesh);
    const RowBuilder rows{p, mesh, op ? &*op : nullptr, diffusion_coefficient(p)};
    for (std::size_t i = 1; i < mesh.intervals(); ++i) rows.fill(i, sys);
    return sys;
}

HessenbergResult solve_hessenberg(LinearSystem sys) {
    const std::size_t n = sys.n;
    if (sys.matrix.size() != n * n || sys.rhs.size() != n) throw ParameterError("hessenberg: inconsistent system");
    double scale = 0.0;
    for (double v : sys.matrix) scale = std::max(scale, std::abs(v));
    if (n == 0) return {};
    if (scale == 0.0) throw SingularPivotError("hessenberg: zero matrix", 1);
    auto check_pivot = [](double pivot, std::size_t r) {
        if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot)) {
            throw SingularPivotError("hessenberg: vanishing pivot at node " + std::to_string(r + 1), r + 1);
        }
    };
    double largest = scale;
    for (std::size_t r = n - 1; r >= 1; --r) {
        const double pivot = sys.at(r, r);
        check_pivot(pivot, r);
        const double m = sys.at(r - 1, r) / pivot;
        if (m != 0.0) {
            double* target = &sys.matrix[(r - 1) * n];
            const double* source = &sys.matrix[r * n];
            for (std::size_t c = 0; c < r; ++c) {
                target[c] -= m * source[c];
                largest = std::max(largest, std::abs(target[c]));
            }
            target[r] = 0.0;
            sys.rhs[r - 1] -= m * sys.rhs[r];
        }
    }
    HessenbergResult out;
    out.x.assign(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const double* row = &sys.matrix[r * n];
        double acc = sys.rhs[r];
        for (std::size_t c = 0; c < r; ++c) acc -= row[c] * out.x[c];
        check_pivot(row[r], r);
        out.x[r] = acc / row[r];
    }
    out.growth_factor = largest / scale;
    return out;
}

double residual_norm(const LinearSystem& sys, std::span<const double> x) {
    if (x.size() != sys.n) throw ParameterError("residual: length mismatch");
    double worst = 0.0;
    for (std::size_t r = 0; r < sys.n; ++r) {
        double acc = -sys.rhs[r];
        const std::size_t end = std::min(r + 2, sys.n);
        for (std::size_t c = 0; c < end; ++c) acc += sys.at(r, c) * x[c];
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

Solution solve_bvp(const ProblemSpec& p, const Mesh& mesh) {
    const LinearSystem sys = assemble(p, mesh);
    HessenbergResult solved = solve_hessenberg(sys);
    Solution s{mesh, {}, 0.0, 0.0, 0.0, solved.growth_factor, {}};
    s.values.reserve(mesh.size());
    s.values.push_back(p.left_bc);
    s.values.insert(s.values.end(), solved.x.begin(), solved.x.end());
    s.values.push_back(p.right_bc);
    s.bc_error = std::max(std::abs(s.values.front() - p.left_bc), std::abs(s.values.back() - p.right_bc));
    s.residual_norm = residual_norm(sys, solved.x);
    for (double v : sys.rhs) s.rhs_norm = std::max(s.rhs_norm, std::abs(v));
    if (s.growth_factor > kGrowthWarning) {
        s.warnings.push_back("elimination growth factor " + std::to_string(s.growth_factor));
    }
    if (!s.residual_ok()) {
        std::ostringstream msg;
        msg << "residual " << s.residual_norm << " above " << kResidualTolerance << " * ||b|| = "
            << kResidualTolerance * s.rhs_norm;
        s.warnings.push_back(msg.str());
    }
    return s;
}

std::optional<std::function<double(double)>> reference_solution(const ProblemSpec& p) {
    const bool zero_bc = p.left_bc == 0.0 && p.right_bc == 0.0;
    const bool unit_eps = p.eps > 0.0 && p.eps < 1.0;
    switch (p.kind) {
        case ProblemKind::classical_cd:
            if (!zero_bc || !unit_eps || !rhs_is_constant(p.rhs, -1.0)) return std::nullopt;
            return [eps = p.eps](double x) { return layers::reduced_solution(x) + layers::classical_conv_layer(x, eps); };
        case ProblemKind::convection_diffusion:
            if (!zero_bc || !unit_eps || !rhs_is_constant(p.rhs, -1.0)) return std::nullopt;
            if (!(p.alpha > 0.0 && p.alpha < 1.0)) return std::nullopt;
            return [eps = p.eps, alpha = p.alpha](double x) {
                return layers::reduced_solution(x) + layers::conv_layer_correction(x, eps, alpha);
            };
        case ProblemKind::stretched_layer_conv: {
            if (p.left_bc != 1.0 || p.right_bc != 0.0 || !unit_eps || !rhs_is_constant(p.rhs, 0.0)) {
                return std::nullopt;
            }
            if (!(p.alpha > 0.0 && p.alpha < 1.0)) return std::nullopt;
            const double theta = layers::fit_theta_conv(p.eps, p.alpha);
            const double right = p.domain_length();
            return [theta, right, alpha = p.alpha](double xi) {
                if (xi >= right) return 0.0;
                return layers::conv_layer_ivp(xi, alpha, theta);
            };
        }
        default:
            return std::nullopt;
    }
}

Mesh MeshFamily::make(double length, std::size_t intervals, double eps) const {
    switch (kind) {
        case MeshKind::uniform: return Mesh::uniform(length, intervals);
        case MeshKind::graded: return Mesh::graded(length, intervals, grading, side);
        case MeshKind::shishkin: return Mesh::shishkin(length, intervals, eps);
        case MeshKind::custom: break;
    }
    throw ParameterError("mesh family: custom meshes cannot be generated");
}

MeshFamily default_family(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::classical_cd: return {MeshKind::shishkin, 1.0, GradingSide::left};
        case ProblemKind::reaction_diffusion:
        case ProblemKind::stretched_layer_reac: return {MeshKind::graded, 2.0, GradingSide::both};
        default: return {MeshKind::graded, 2.0, GradingSide::left};
    }
}

std::vector<ConvergenceRow> converge_study(const ProblemSpec& p, const MeshFamily& family,
                                           std::span<const std::size_t> intervals,
                                           std::optional<std::function<double(double)>> oracle,
                                           std::size_t reference_intervals) {
    if (intervals.empty()) throw ParameterError("converge_study: empty N list");
    for (std::size_t k = 1; k < intervals.size(); ++k) {
        if (intervals[k] <= intervals[k - 1]) throw ParameterError("converge_study: N list must increase");
    }
    const double length = p.domain_length();
    if (!oracle) oracle = reference_solution(p);
    std::optional<Solution> reference;
    if (!oracle) reference = solve_bvp(p, family.make(length, reference_intervals, p.eps));

    std::vector<ConvergenceRow> rows;
    for (std::size_t n : intervals) {
        const Solution s = solve_bvp(p, family.make(length, n, p.eps));
        double worst = 0.0;
        for (std::size_t i = 0; i < s.mesh.size(); ++i) {
            const double x = s.mesh[i];
            const double exact = oracle ? (*oracle)(x) : interpolate(reference->mesh, reference->values, x);
            worst = std::max(worst, std::abs(s.values[i] - exact));
        }
        ConvergenceRow row{n, worst, std::numeric_limits<double>::quiet_NaN()};
        if (!rows.empty()) {
            const auto& prev = rows.back();
            row.order = std::log(prev.max_error / worst) /
                        std::log(static_cast<double>(n) / static_cast<double>(prev.intervals));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace fracbl
