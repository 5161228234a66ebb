#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "fracbl/errors.hpp"
#include "fracbl/laplace.hpp"
#include "oracles.hpp"

using namespace fracbl;
using laplace::Complex;
using laplace::TransformFn;

namespace {

TransformFn power(double p) {
    return TransformFn::on_negative_axis("s^-p", [p](Complex s) { return std::pow(s, -p); });
}

}  // namespace

TEST_CASE("standard transform pairs", "[laplace]") {
    CHECK(laplace::talbot_invert(power(1.0), 3.7) == Catch::Approx(1.0).epsilon(1e-12));
    const auto decay = TransformFn::on_negative_axis("1/(s+1)", [](Complex s) { return 1.0 / (s + 1.0); });
    CHECK(laplace::talbot_invert(decay, 2.0) == Catch::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(laplace::talbot_invert(power(1.5), 4.0) == Catch::Approx(2.0 * std::sqrt(4.0 / std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("accuracy over t in [1e-2, 1e3]", "[laplace]") {
    const auto f = power(1.5);
    for (double t : {1e-2, 0.1, 1.0, 10.0, 100.0, 1e3}) {
        const auto inv = laplace::talbot_invert_checked(f, t);
        const double want = std::sqrt(t) / std::tgamma(1.5);
        CHECK(std::abs(inv.value - want) <= 1e-8 * want);
        CHECK(inv.imag_residue <= 1e-8 * want);
        CHECK(inv.nodes == 2 * laplace::kDefaultNodes);
    }
}

TEST_CASE("node doubling changes results by at most 1e-8", "[laplace]") {
    const auto f = laplace::conv_layer_transform(0.5, -0.3);
    for (double t : {0.1, 1.0, 10.0, 100.0}) {
        const double m64 = laplace::talbot_sum(f, t, 64).value;
        const double m128 = laplace::talbot_sum(f, t, 128).value;
        CHECK(std::abs(m64 - m128) <= 1e-8 * std::abs(m128));
    }
}

TEST_CASE("inversion is linear", "[laplace]") {
    const auto f = power(1.0);
    const auto g = laplace::conv_layer_slope_transform(0.3);
    const auto h = linear_combination(2.5, f, -0.75, g);
    for (double t : {0.5, 3.0}) {
        const double direct = laplace::talbot_invert(h, t);
        const double split = 2.5 * laplace::talbot_invert(f, t) - 0.75 * laplace::talbot_invert(g, t);
        CHECK(std::abs(direct - split) <= 1e-13 * std::abs(direct) + 1e-14);
    }
}

TEST_CASE("a right half-plane pole near the contour fails the refinement check", "[laplace]") {
    const auto growing = TransformFn::on_negative_axis("1/(s-2)", [](Complex s) { return 1.0 / (s - 2.0); });
    CHECK(std::abs(laplace::talbot_invert(growing, 0.5) / std::exp(1.0) - 1.0) <= 1e-12);
    CHECK_THROWS_AS(laplace::talbot_invert(growing, 2.0), NonConvergenceError);
    // far outside the contour the pole is invisible to both node counts
    CHECK(std::abs(laplace::talbot_invert(growing, 30.0)) <= 1e-10);
}

TEST_CASE("convection layer transform", "[laplace]") {
    const auto f = laplace::conv_layer_transform(0.5, 0.0);
    CHECK(std::abs(f(Complex(1.0, 0.0)) - Complex(1.0, 0.0)) <= 1e-15);
    // initial value theorem: s F(s) -> V(0) = 1
    const auto g = laplace::conv_layer_transform(0.5, -0.7);
    const Complex s(1e12, 3e11);
    CHECK(std::abs(s * g(s) - 1.0) <= 1e-5);
    for (double theta : {-1.0, -0.1, 0.0, 0.5}) {
        for (double xi : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            const double want = 1.0 + theta * xi * oracle::ml_taylor(0.5, 2.0, -std::sqrt(xi));
            INFO("theta=" << theta << " xi=" << xi);
            CHECK(std::abs(laplace::talbot_invert(laplace::conv_layer_transform(0.5, theta), xi) - want) <=
                  1e-6 * std::abs(want));
        }
    }
}

TEST_CASE("reduced reaction layer transform", "[laplace]") {
    const auto f = laplace::reac_layer0_transform_reduced(0.5);
    CHECK(std::abs(f(Complex(1.0, 0.0)) - Complex(2.0 / 3.0, 0.0)) <= 1e-15);
    const double v = laplace::talbot_invert(f, 1e4);
    CHECK(v * std::sqrt(std::numbers::pi * 1e4) == Catch::Approx(1.0).epsilon(0.01));
    CHECK(laplace::talbot_invert(f, 1e-6) == Catch::Approx(1.0).epsilon(1e-2));
    // the guarded quotient agrees with the cancelled form next to s = 1
    const auto g = laplace::reac_layer0_transform_reduced(0.5000000001);
    for (const Complex s : {Complex(1.0, 0.0), Complex(1.0 + 1e-7, 1e-8), Complex(1.3, 0.2)}) {
        CHECK(std::abs(g(s) - f(s)) <= 1e-6 * std::abs(f(s)));
    }
}

TEST_CASE("parameter validation", "[laplace]") {
    CHECK_THROWS_AS(laplace::talbot_invert(power(1.0), 0.0), ParameterError);
    CHECK_THROWS_AS(laplace::talbot_invert(power(1.0), 1.0, 8), ParameterError);
    CHECK_THROWS_AS(laplace::conv_layer_transform(1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(laplace::reac_layer0_transform_reduced(0.0), ParameterError);
}

TEST_CASE("parallel grid inversion equals the serial loop", "[laplace][parallel]") {
    const auto f = laplace::conv_layer_slope_transform(0.4);
    std::vector<double> ts;
    for (int k = 1; k <= 40; ++k) ts.push_back(0.25 * k);
    const auto par = laplace::talbot_invert_grid(f, ts);
    const auto ser = laplace::serial::talbot_invert_grid(f, ts);
    CHECK(par == ser);
}
