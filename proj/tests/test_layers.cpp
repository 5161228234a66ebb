#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "fracbl/errors.hpp"
#include "fracbl/layers.hpp"
#include "fracbl/specfun.hpp"
#include "oracles.hpp"

using namespace fracbl;
using Catch::Approx;

TEST_CASE("reduced solution and classical layer", "[layers]") {
    CHECK(layers::reduced_solution(1.0) == 0.0);
    CHECK(layers::reduced_solution(0.0) == -1.0);
    CHECK(layers::reduced_solution(0.5) == -0.5);
    CHECK(layers::classical_conv_layer(0.0, 0.01) == 1.0);
    CHECK(layers::classical_conv_layer(1.0, 0.01) == 0.0);
    const double direct = (std::exp(-5.0) - std::exp(-100.0)) / (1.0 - std::exp(-100.0));
    CHECK(layers::classical_conv_layer(0.05, 0.01) == Approx(direct).epsilon(1e-14));
    CHECK_THROWS_AS(layers::classical_conv_layer(1.5, 0.01), ParameterError);
}

TEST_CASE("V* series against the closed form on [0, 30]", "[layers][vstar]") {
    CHECK(layers::vstar_half_series(0.0, 5).value == 0.0);
    CHECK(layers::vstar_half_series(1.0, 50).value == Approx(oracle::vstar_half(1.0)).epsilon(1e-12));
    CHECK(layers::vstar_half_closed(1.0) == Approx(layers::vstar_half_series(1.0, 50).value).epsilon(1e-12));
    for (int k = 0; k < 300; ++k) {
        const double xi = 30.0 * k / 299.0;
        const auto s = layers::vstar_half_series(xi, 200);
        const double c = layers::vstar_half_closed(xi);
        CHECK(s.converged);
        CHECK(std::abs(s.value - c) <= 1e-8 * (1.0 + std::abs(c)));
    }
    CHECK_FALSE(layers::vstar_half_series(20.0, 10).converged);
    CHECK_THROWS_AS(layers::vstar_half_series(31.0, 200), ParameterError);
    CHECK_THROWS_AS(layers::vstar_half_series(-1.0, 200), ParameterError);
}

TEST_CASE("V* equals xi E_{1/2,2}(-sqrt xi)", "[layers][vstar]") {
    CHECK(layers::vstar_half_series(4.0, 60).value ==
          Approx(4.0 * specfun::mittag_leffler({0.5, 2.0, -2.0})).epsilon(1e-10));
    for (double xi = 0.0; xi <= 25.0; xi += 0.25) {
        const double ml = xi * specfun::mittag_leffler({0.5, 2.0, -std::sqrt(xi)});
        CHECK(std::abs(layers::vstar_half_closed(xi) - ml) <= 1e-9 * (1.0 + std::abs(ml)));
    }
}

TEST_CASE("V* closed form asymptotics", "[layers][vstar]") {
    const double want = 2.0 * 1e4 / std::sqrt(std::numbers::pi) - 1.0;
    CHECK(layers::vstar_half_closed(1e8) == Approx(want).epsilon(1e-4));
    for (double xi : {1e3, 1e5, 1e7}) {
        const double lead = 2.0 * std::sqrt(xi / std::numbers::pi) - 1.0 + 1.0 / std::sqrt(std::numbers::pi * xi);
        CHECK(std::abs(layers::vstar_half_closed(xi) - lead) <= std::pow(xi, -1.5));
    }
}

TEST_CASE("theta scaling", "[layers][theta]") {
    CHECK(layers::fit_theta_conv(1e-4) / 1e-4 == Approx(-std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-3));
    CHECK(layers::fit_theta_conv(1e-2) == Approx(-1.0 / oracle::vstar_half(1e4)).epsilon(1e-12));
    double prev = 1.0;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        const double t = layers::fit_theta_conv(eps);
        CHECK(t < 0.0);
        CHECK(std::abs(t) < prev);
        CHECK(std::abs(t) / eps <= 1.0);
        prev = std::abs(t);
    }
}

TEST_CASE("general-alpha theta reduces to the closed form", "[layers][theta]") {
    for (double eps : {0.3, 1e-2, 1e-3}) {
        CHECK(layers::fit_theta_conv(eps, 0.5 + 1e-9) == Approx(layers::fit_theta_conv(eps)).epsilon(1e-6));
    }
}

TEST_CASE("layer correction", "[layers][conv]") {
    for (double eps : {0.5, 1e-2, 1e-4}) {
        CHECK(layers::conv_layer_correction(0.0, eps) == 1.0);
        CHECK(layers::conv_layer_correction(1.0, eps) == 0.0);
        for (double x = 0.0; x <= 1.0; x += 0.01) {
            const double v = layers::conv_layer_correction(x, eps);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
    CHECK(layers::conv_layer_correction(0.25, 1e-4) == Approx(0.5).margin(1e-3));
    for (double alpha : {0.25, 0.7}) {
        CHECK(layers::conv_layer_correction(0.0, 1e-2, alpha) == 1.0);
        CHECK(layers::conv_layer_correction(1.0, 1e-2, alpha) == 0.0);
    }
    CHECK(layers::conv_layer_correction(0.3, 1e-2, 0.5 + 1e-9) ==
          Approx(layers::conv_layer_correction(0.3, 1e-2)).epsilon(1e-6));
}

TEST_CASE("limit law", "[layers][conv]") {
    CHECK(layers::conv_layer_limit(0.0) == 1.0);
    CHECK(layers::conv_layer_limit(1.0) == 0.0);
    CHECK(layers::conv_layer_limit(0.25) == 0.5);
    for (double x0 : {0.04, 0.25, 0.64}) {
        double prev = 1.0;
        for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
            const double dev = std::abs(layers::conv_layer_correction(x0, eps) - layers::conv_layer_limit(x0));
            CHECK(dev < prev);
            if (eps <= 1e-3) CHECK(dev <= 0.886 * eps * (1.0 - std::sqrt(x0)) * 1.5);
            prev = dev;
        }
    }
}

TEST_CASE("decaying reaction layer", "[layers][reac]") {
    CHECK(layers::reac_layer0(0.0, 0.5) == 1.0);
    CHECK(layers::reac_layer0(1e4, 0.5) == Approx(1.0 / std::sqrt(std::numbers::pi * 1e4)).epsilon(0.01));
    CHECK(std::abs(layers::reac_layer0_ml(4.0, 0.5) - layers::reac_layer0_transform(4.0, 0.5)) <=
          1e-5 * layers::reac_layer0_transform(4.0, 0.5));
    for (double alpha : {0.2, 0.5, 0.8}) {
        double prev = 1.0;
        for (double xi = 0.5; xi <= 2000.0; xi *= 1.5) {
            const double v = layers::reac_layer0(xi, alpha);
            CHECK(v < prev);
            CHECK(v > 0.0);
            prev = v;
        }
        const double tail = layers::reac_layer0(1e6, alpha) * std::pow(1e6, 1.0 - alpha);
        CHECK(tail < 1.0);
    }
    for (double xi = 1e2; xi <= 1e4; xi *= 1.3) {
        CHECK(layers::reac_layer0(xi, 0.5) * std::sqrt(std::numbers::pi * xi) >= 0.99);
        CHECK(layers::reac_layer0(xi, 0.5) * std::sqrt(std::numbers::pi * xi) <= 1.01);
    }
}

TEST_CASE("mu scaling and the right layer model", "[layers][reac]") {
    const double mu6 = layers::mu_reac(1e-6, 0.5);
    CHECK(mu6 * std::pow(1e-6, -1.0 / 3.0) * std::sqrt(std::numbers::pi) == Approx(1.0).epsilon(0.01));
    CHECK(layers::mu_reac(1e-3, 0.5) / mu6 == Approx(10.0).epsilon(0.05));
    const double mu_near_one = layers::mu_reac(0.999999, 0.5);
    CHECK(mu_near_one < 1.0);
    CHECK(mu_near_one > 0.0);
    CHECK(layers::reac_layer1_model(1.0, 1e-2, 0.5, 0.2) == 0.8);
    CHECK(layers::reac_layer1_model(1.0 - std::pow(1e-2, 1.0 / 1.5), 1e-2, 0.5, 0.0) ==
          Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(layers::reac_layer1_model(0.0, 1e-2, 0.5, 0.0) ==
          Approx(std::exp(-std::pow(1e-2, -2.0 / 3.0))).epsilon(1e-12));
}

TEST_CASE("context", "[layers]") {
    const auto c = layers::make_context(0.5, 1e-2);
    CHECK(c.stretch_conv == 2.0);
    CHECK(c.stretch_reac == Approx(2.0 / 3.0));
    CHECK(c.theta == layers::fit_theta_conv(1e-2));
    CHECK(c.mu > 0.0);
    CHECK(c.mu < 1.0);
    const auto classical = layers::make_context(0.0, 1e-2);
    CHECK(classical.theta == Approx(-1.0));
    CHECK_THROWS_AS(layers::make_context(1.0, 1e-2), ParameterError);
    CHECK_THROWS_AS(layers::make_context(0.5, 1.0), ParameterError);
}

TEST_CASE("parallel grid evaluation equals the serial loop", "[layers][parallel]") {
    std::vector<double> xs;
    for (int k = 0; k <= 200; ++k) xs.push_back(k / 200.0);
    auto f = [](double x) { return layers::reac_layer0(x / 0.01, 0.3); };
    CHECK(layers::evaluate_on_grid(f, xs) == layers::serial::evaluate_on_grid(f, xs));
    auto bad = [](double x) { return x > 0.5 ? layers::conv_layer_limit(2.0) : 0.0; };
    CHECK_THROWS_AS(layers::evaluate_on_grid(bad, xs), ParameterError);
}
