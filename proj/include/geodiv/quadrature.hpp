#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "geodiv/errors.hpp"

namespace geodiv {

struct QuadratureConfig {
    int base_points = 48;
    double tolerance = 1e-9;
    int max_subdivisions = 20;
};

/// Squared geodesic speed t -> ||gamma'(t)||^2 on [0,1].
using SpeedFunction = std::function<double(double)>;

struct GaussLegendreRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

/// Nodes and weights for the n-point rule; results are cached per n.
const GaussLegendreRule& gauss_legendre(int n);

/// Integral of f over [a, b] with the n-point Gauss-Legendre rule.
double gauss_legendre_integrate(const std::function<double(double)>& f, double a, double b, int n);

/// Integral of t * f(t) over [0,1]. Adaptive bisection: an interval is
/// accepted when the whole-interval estimate agrees with the sum over its
/// halves within cfg.tolerance scaled by the interval length.
double integrate_t_weighted(const SpeedFunction& f, const QuadratureConfig& cfg = {});

/// Max-abs deviation over (i, j) between the central mixed second difference
/// -[D(p+h e_i, p+h e_j) - D(p+h e_i, p-h e_j) - D(p-h e_i, p+h e_j)
///   + D(p-h e_i, p-h e_j)] / (4 h^2)
/// and metric(i, j), in chart coordinates. When in_domain is supplied, a
/// perturbed point outside the manifold raises StepTooLargeError.
double eguchi_metric_check(
    const std::function<double(const std::vector<double>&, const std::vector<double>&)>& divergence,
    const std::vector<double>& point,
    const std::function<double(std::size_t, std::size_t)>& metric,
    double h,
    const std::function<bool(const std::vector<double>&)>& in_domain = {});

}  // namespace geodiv
