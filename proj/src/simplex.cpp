#include "geodiv/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace geodiv {

namespace {

constexpr double kPositivityFloor = 1e-12;

void require_same_size(std::size_t a, std::size_t b, const char* where) {
    if (a != b) {
        throw DimensionMismatchError(std::string(where) + ": lengths " + std::to_string(a) +
                                     " and " + std::to_string(b) + " differ");
    }
}

void require_unit_interval(double t, const char* where) {
    if (!(t >= 0.0 && t <= 1.0))
        throw DomainError(std::string(where) + ": t = " + std::to_string(t) + " outside [0, 1]");
}

std::vector<double> checked_weights(std::vector<double> w, double sum_tol) {
    if (w.empty()) throw DomainError("ProbabilityVector: empty weight vector");
    double sum = 0.0;
    for (double x : w) {
        if (!(x >= kPositivityFloor))
            throw DomainError("ProbabilityVector: weight " + std::to_string(x) +
                              " below positivity floor 1e-12");
        sum += x;
    }
    if (std::abs(sum - 1.0) > sum_tol)
        throw DomainError("ProbabilityVector: weights sum to " + std::to_string(sum));
    return w;
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> w)
    : w_(checked_weights(std::move(w), 1e-12)) {}

ProbabilityVector ProbabilityVector::renormalized(std::vector<double> w, double admission_tol) {
    w = checked_weights(std::move(w), admission_tol);
    double sum = 0.0;
    for (double x : w) sum += x;
    for (double& x : w) x /= sum;
    return ProbabilityVector(std::move(w), Raw{});
}

SimplexTangent::SimplexTangent(std::vector<double> x) : x_(std::move(x)) {
    if (x_.empty()) throw DomainError("SimplexTangent: empty component vector");
    double sum = 0.0;
    for (double v : x_) sum += v;
    if (std::abs(sum) > 1e-12)
        throw DomainError("SimplexTangent: components sum to " + std::to_string(sum));
}

double fisher_inner(const ProbabilityVector& p, const SimplexTangent& x, const SimplexTangent& y) {
    require_same_size(p.size(), x.size(), "fisher_inner");
    require_same_size(p.size(), y.size(), "fisher_inner");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += x[i] * y[i] / p[i];
    return s;
}

ProbabilityVector m_geodesic(const ProbabilityVector& p, const ProbabilityVector& q, double t) {
    require_same_size(p.size(), q.size(), "m_geodesic");
    require_unit_interval(t, "m_geodesic");
    if (t == 0.0) return p;
    if (t == 1.0) return q;
    std::vector<double> w(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) w[i] = p[i] + t * (q[i] - p[i]);
    return ProbabilityVector(std::move(w));
}

ProbabilityVector e_geodesic(const ProbabilityVector& p, const ProbabilityVector& q, double t) {
    require_same_size(p.size(), q.size(), "e_geodesic");
    require_unit_interval(t, "e_geodesic");
    if (t == 0.0) return p;
    if (t == 1.0) return q;
    std::vector<double> logw(p.size());
    double top = -HUGE_VAL;
    for (std::size_t i = 0; i < p.size(); ++i) {
        logw[i] = (1.0 - t) * std::log(p[i]) + t * std::log(q[i]);
        top = std::max(top, logw[i]);
    }
    std::vector<double> w(p.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        w[i] = std::exp(logw[i] - top);
        sum += w[i];
    }
    for (double& x : w) x /= sum;
    return ProbabilityVector(std::move(w));
}

SimplexTangent e_velocity(const ProbabilityVector& p, const ProbabilityVector& q, double t) {
    require_same_size(p.size(), q.size(), "e_velocity");
    const ProbabilityVector gamma = e_geodesic(p, q, t);
    std::vector<double> lr(p.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        lr[i] = std::log(q[i]) - std::log(p[i]);
        mean += gamma[i] * lr[i];
    }
    std::vector<double> v(p.size());
    double drift = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        v[i] = gamma[i] * (lr[i] - mean);
        drift += v[i];
    }
    // distribute the round-off drift so the tangent invariant holds exactly
    v[0] -= drift;
    return SimplexTangent(std::move(v));
}

double kl(const ProbabilityVector& p, const ProbabilityVector& q) {
    require_same_size(p.size(), q.size(), "kl");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * (std::log(p[i]) - std::log(q[i]));
    return s;
}

double shannon_entropy(const ProbabilityVector& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s -= p[i] * std::log(p[i]);
    return s;
}

double canonical_divergence_simplex(const ProbabilityVector& p, const ProbabilityVector& q,
                                    const QuadratureConfig& cfg) {
    require_same_size(p.size(), q.size(), "canonical_divergence_simplex");
    // Fisher speed along the m-geodesic: sum_i (q_i - p_i)^2 / (p_i + t (q_i - p_i))
    auto speed = [&p, &q](double t) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double d = q[i] - p[i];
            s += d * d / (p[i] + t * d);
        }
        return s;
    };
    return integrate_t_weighted(speed, cfg);
}

double dual_divergence_simplex(const ProbabilityVector& p, const ProbabilityVector& q,
                               const QuadratureConfig& cfg) {
    require_same_size(p.size(), q.size(), "dual_divergence_simplex");
    auto speed = [&p, &q](double t) {
        const ProbabilityVector gamma = e_geodesic(p, q, t);
        const SimplexTangent v = e_velocity(p, q, t);
        return fisher_inner(gamma, v, v);
    };
    return integrate_t_weighted(speed, cfg);
}

}  // namespace geodiv
