// Serial reference kernels against their OpenMP counterparts.

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "fracbl/caputo.hpp"
#include "fracbl/laplace.hpp"
#include "fracbl/layers.hpp"
#include "fracbl/mesh.hpp"
#include "fracbl/solver.hpp"

using namespace fracbl;

namespace {

Mesh bench_mesh(benchmark::State& state) {
    return Mesh::graded(1.0, static_cast<std::size_t>(state.range(0)), 2.0, GradingSide::both);
}

std::vector<double> grid(std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = 0.1 + 10.0 * static_cast<double>(i) / static_cast<double>(n);
    return t;
}

void BM_build_operator_serial(benchmark::State& state) {
    const Mesh m = bench_mesh(state);
    for (auto _ : state) benchmark::DoNotOptimize(serial::build_operator(m, 1.5));
}

void BM_build_operator_omp(benchmark::State& state) {
    const Mesh m = bench_mesh(state);
    for (auto _ : state) benchmark::DoNotOptimize(build_operator(m, 1.5));
}

void BM_apply_serial(benchmark::State& state) {
    const Mesh m = bench_mesh(state);
    const auto op = build_operator(m, 1.5);
    std::vector<double> u(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) u[i] = std::sin(3.0 * m[i]);
    for (auto _ : state) benchmark::DoNotOptimize(serial::apply(op, u));
}

void BM_apply_omp(benchmark::State& state) {
    const Mesh m = bench_mesh(state);
    const auto op = build_operator(m, 1.5);
    std::vector<double> u(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) u[i] = std::sin(3.0 * m[i]);
    for (auto _ : state) benchmark::DoNotOptimize(op.apply(u));
}

void BM_assemble_serial(benchmark::State& state) {
    const Mesh m = bench_mesh(state);
    const auto p = ProblemSpec::reaction_diffusion(0.5, 1e-3);
    for (auto _ : state) benchmark::DoNotOptimize(serial::assemble(p, m));
}

void BM_assemble_omp(benchmark::State& state) {
    const Mesh m = bench_mesh(state);
    const auto p = ProblemSpec::reaction_diffusion(0.5, 1e-3);
    for (auto _ : state) benchmark::DoNotOptimize(assemble(p, m));
}

void BM_talbot_grid_serial(benchmark::State& state) {
    const auto f = laplace::conv_layer_transform(0.5, -0.5);
    const auto t = grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(laplace::serial::talbot_invert_grid(f, t));
}

void BM_talbot_grid_omp(benchmark::State& state) {
    const auto f = laplace::conv_layer_transform(0.5, -0.5);
    const auto t = grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(laplace::talbot_invert_grid(f, t));
}

void BM_layer_grid_serial(benchmark::State& state) {
    const auto xi = grid(static_cast<std::size_t>(state.range(0)));
    const auto f = [](double x) { return layers::reac_layer0(x, 0.5); };
    for (auto _ : state) benchmark::DoNotOptimize(layers::serial::evaluate_on_grid(f, xi));
}

void BM_layer_grid_omp(benchmark::State& state) {
    const auto xi = grid(static_cast<std::size_t>(state.range(0)));
    const auto f = [](double x) { return layers::reac_layer0(x, 0.5); };
    for (auto _ : state) benchmark::DoNotOptimize(layers::evaluate_on_grid(f, xi));
}

}  // namespace

BENCHMARK(BM_build_operator_serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_build_operator_omp)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_apply_serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_apply_omp)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_assemble_serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_assemble_omp)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_talbot_grid_serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_talbot_grid_omp)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_layer_grid_serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_layer_grid_omp)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
