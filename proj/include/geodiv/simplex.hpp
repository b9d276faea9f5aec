#pragma once

#include <cstddef>
#include <vector>

#include "geodiv/errors.hpp"
#include "geodiv/quadrature.hpp"

namespace geodiv {

/// Strictly positive point on the probability simplex. Weights below 1e-12
/// are rejected rather than clamped: the manifold is the open simplex and
/// divergences blow up at the boundary.
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> w);

    /// Admits |sum - 1| <= admission_tol, then divides by the sum.
    static ProbabilityVector renormalized(std::vector<double> w, double admission_tol = 1e-9);

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    const std::vector<double>& weights() const { return w_; }

private:
    struct Raw {};
    ProbabilityVector(std::vector<double> w, Raw) : w_(std::move(w)) {}
    std::vector<double> w_;
};

/// Tangent vector in the ambient representation: components sum to zero.
class SimplexTangent {
public:
    explicit SimplexTangent(std::vector<double> x);

    std::size_t size() const { return x_.size(); }
    double operator[](std::size_t i) const { return x_[i]; }
    const std::vector<double>& components() const { return x_; }

private:
    std::vector<double> x_;
};

/// Fisher inner product sum_i X_i Y_i / p_i.
double fisher_inner(const ProbabilityVector& p, const SimplexTangent& x, const SimplexTangent& y);

/// Mixture geodesic p + t (q - p), t in [0,1].
ProbabilityVector m_geodesic(const ProbabilityVector& p, const ProbabilityVector& q, double t);

/// Exponential geodesic, normalized geometric interpolation computed in log
/// space: component i proportional to p_i (q_i/p_i)^t.
ProbabilityVector e_geodesic(const ProbabilityVector& p, const ProbabilityVector& q, double t);

/// Velocity of the e-geodesic: gamma_i(t) (log(q_i/p_i) - <log(q/p)>_gamma(t)).
SimplexTangent e_velocity(const ProbabilityVector& p, const ProbabilityVector& q, double t);

/// Kullback-Leibler divergence sum_i p_i log(p_i / q_i), in nats.
double kl(const ProbabilityVector& p, const ProbabilityVector& q);

double shannon_entropy(const ProbabilityVector& p);

/// Canonical divergence: integral of t ||gamma_m'(t)||^2 along the mixture
/// geodesic. Coincides with kl(p, q).
double canonical_divergence_simplex(const ProbabilityVector& p, const ProbabilityVector& q,
                                    const QuadratureConfig& cfg = {});

/// Dual divergence: same integral along the exponential geodesic. Coincides
/// with kl(q, p).
double dual_divergence_simplex(const ProbabilityVector& p, const ProbabilityVector& q,
                               const QuadratureConfig& cfg = {});

}  // namespace geodiv
