#include "doctest.h"

#include <cmath>
#include <vector>

#include "geodiv/quadrature.hpp"
#include "geodiv/simplex.hpp"

using namespace geodiv;

TEST_CASE("integrate_t_weighted on constants and monomials") {
    CHECK(integrate_t_weighted([](double) { return 0.0; }) == doctest::Approx(0.0));
    CHECK(integrate_t_weighted([](double) { return 3.7; }) ==
          doctest::Approx(3.7 / 2.0).epsilon(1e-13));
    CHECK(integrate_t_weighted([](double t) { return t * t; }) ==
          doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("integrate_t_weighted is linear and stable under more points") {
    auto f = [](double t) { return std::exp(t) + 1.0 / (1.0 + t); };
    auto g = [](double t) { return std::cos(3.0 * t); };
    const double a = 2.5, b = -1.25;
    const double lhs =
        integrate_t_weighted([&](double t) { return a * f(t) + b * g(t); });
    const double rhs = a * integrate_t_weighted(f) + b * integrate_t_weighted(g);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));

    QuadratureConfig doubled;
    doubled.base_points = 96;
    CHECK(std::abs(integrate_t_weighted(f, doubled) - integrate_t_weighted(f)) <= 2e-9);
}

TEST_CASE("integrate_t_weighted resolves a near-endpoint spike adaptively") {
    // sharp but analytic: needs subdivision near t = 1
    auto f = [](double t) { return 1.0 / (1e-4 + (1.0 - t) * (1.0 - t)); };
    // closed form of the t-weighted integral with a = 1e-2:
    // int t/(a^2+(1-t)^2) dt = (1/a) atan((1-t)/a)... evaluated by substitution
    // u = 1 - t: int_0^1 (1-u)/(a^2+u^2) du = (1/a) atan(1/a) - 0.5 log(1+1/a^2)
    const double a = 1e-2;
    const double exact = std::atan(1.0 / a) / a - 0.5 * std::log(1.0 + 1.0 / (a * a));
    CHECK(integrate_t_weighted(f) == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("integrate_t_weighted reports the worst interval when refinement fails") {
    // jump at an irrational point: bisection never isolates it
    auto f = [](double t) { return t < 0.31830988618 ? 0.0 : 1.0; };
    QuadratureConfig cfg;
    cfg.max_subdivisions = 12;
    try {
        integrate_t_weighted(f, cfg);
        FAIL("expected QuadratureNotConvergedError");
    } catch (const QuadratureNotConvergedError& e) {
        CHECK(e.interval_begin() <= 0.31830988618);
        CHECK(e.interval_end() >= 0.31830988618);
        CHECK(e.residual() > 0.0);
    }
}

TEST_CASE("invalid quadrature configuration is rejected") {
    QuadratureConfig cfg;
    cfg.tolerance = 0.0;
    CHECK_THROWS_AS(integrate_t_weighted([](double) { return 1.0; }, cfg), DomainError);
    cfg = {};
    cfg.base_points = 1;
    CHECK_THROWS_AS(integrate_t_weighted([](double) { return 1.0; }, cfg), DomainError);
}

TEST_CASE("eguchi check is exact for a quadratic divergence") {
    auto half_sq = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return 0.5 * s;
    };
    auto identity = [](std::size_t i, std::size_t j) { return i == j ? 1.0 : 0.0; };
    CHECK(eguchi_metric_check(half_sq, {0.2, -0.4, 1.0}, identity, 1e-3) <= 1e-6);
}

TEST_CASE("eguchi check recovers the Fisher chart matrix from KL") {
    auto complete = [](const std::vector<double>& xi) {
        return ProbabilityVector({xi[0], xi[1], 1.0 - xi[0] - xi[1]});
    };
    auto d = [&](const std::vector<double>& a, const std::vector<double>& b) {
        return kl(complete(a), complete(b));
    };
    const std::vector<double> point = {0.25, 0.35};
    const double p3 = 0.4;
    auto fisher = [&](std::size_t i, std::size_t j) {
        return (i == j ? 1.0 / point[i] : 0.0) + 1.0 / p3;
    };
    const double dev = eguchi_metric_check(d, point, fisher, 1e-3);
    const double dev_half = eguchi_metric_check(d, point, fisher, 5e-4);
    CHECK(dev <= 1e-5);
    CHECK(dev / dev_half == doctest::Approx(4.0).epsilon(0.2));  // second-order stencil
}

TEST_CASE("eguchi check raises StepTooLarge when a perturbation leaves the manifold") {
    auto d = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return s;
    };
    auto metric = [](std::size_t, std::size_t) { return 0.0; };
    auto in_domain = [](const std::vector<double>& p) { return p[0] > 0.0; };
    CHECK_THROWS_AS(eguchi_metric_check(d, {5e-4, 0.5}, metric, 1e-3, in_domain),
                    StepTooLargeError);
}
