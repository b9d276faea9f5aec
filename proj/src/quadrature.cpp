#include "geodiv/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stack>
#include <string>

namespace geodiv {

namespace {

GaussLegendreRule compute_rule(int n) {
    // Newton iteration on P_n, seeded with the Chebyshev-like estimate.
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: need at least one point");
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

double gauss_legendre_integrate(const std::function<double(double)>& f, double a, double b, int n) {
    const GaussLegendreRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += rule.weights[i] * f(mid + hw * rule.nodes[i]);
    return hw * s;
}

double integrate_t_weighted(const SpeedFunction& f, const QuadratureConfig& cfg) {
    if (!(cfg.tolerance > 0.0))
        throw DomainError("integrate_t_weighted: tolerance must be positive");
    if (cfg.base_points < 2)
        throw DomainError("integrate_t_weighted: base_points must be >= 2");

    auto g = [&f](double t) { return t * f(t); };

    struct Interval {
        double a, b, estimate;
        int depth;
    };
    std::stack<Interval> work;
    work.push({0.0, 1.0, gauss_legendre_integrate(g, 0.0, 1.0, cfg.base_points), 0});

    double total = 0.0;
    while (!work.empty()) {
        const Interval iv = work.top();
        work.pop();
        const double mid = 0.5 * (iv.a + iv.b);
        const double left = gauss_legendre_integrate(g, iv.a, mid, cfg.base_points);
        const double right = gauss_legendre_integrate(g, mid, iv.b, cfg.base_points);
        const double refined = left + right;
        const double residual = std::abs(refined - iv.estimate);
        if (std::isfinite(residual) && residual <= cfg.tolerance * (iv.b - iv.a)) {
            total += refined;
        } else if (iv.depth >= cfg.max_subdivisions) {
            throw QuadratureNotConvergedError(iv.a, iv.b, residual);
        } else {
            work.push({iv.a, mid, left, iv.depth + 1});
            work.push({mid, iv.b, right, iv.depth + 1});
        }
    }
    return total;
}

double eguchi_metric_check(
    const std::function<double(const std::vector<double>&, const std::vector<double>&)>& divergence,
    const std::vector<double>& point,
    const std::function<double(std::size_t, std::size_t)>& metric,
    double h,
    const std::function<bool(const std::vector<double>&)>& in_domain) {
    if (!(h > 0.0)) throw DomainError("eguchi_metric_check: step must be positive");
    const std::size_t n = point.size();

    auto shifted = [&point, &in_domain](std::size_t i, double delta) {
        std::vector<double> p = point;
        p[i] += delta;
        if (in_domain && !in_domain(p))
            throw StepTooLargeError("eguchi_metric_check: perturbed point left the manifold");
        return p;
    };

    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double> pip = shifted(i, h);
        const std::vector<double> pim = shifted(i, -h);
        for (std::size_t j = 0; j < n; ++j) {
            const std::vector<double> qjp = shifted(j, h);
            const std::vector<double> qjm = shifted(j, -h);
            const double stencil = divergence(pip, qjp) - divergence(pip, qjm) -
                                   divergence(pim, qjp) + divergence(pim, qjm);
            const double fd = -stencil / (4.0 * h * h);
            worst = std::max(worst, std::abs(fd - metric(i, j)));
        }
    }
    return worst;
}

}  // namespace geodiv
