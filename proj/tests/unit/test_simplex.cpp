#include "doctest.h"

#include <cmath>
#include <random>

#include "geodiv/random_states.hpp"
#include "geodiv/simplex.hpp"

using namespace geodiv;

namespace {

// hand-checked by an independent script before the build
constexpr double kKlForward = 0.130812035941;   // kl((.75,.25),(.5,.5))
constexpr double kKlReverse = 0.143841036226;   // kl((.5,.5),(.75,.25))

double max_abs_diff(const ProbabilityVector& a, const ProbabilityVector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("ProbabilityVector validation") {
    CHECK_NOTHROW(ProbabilityVector({0.5, 0.5}));
    CHECK_THROWS_AS(ProbabilityVector({0.6, 0.5}), DomainError);              // sum != 1
    CHECK_THROWS_AS(ProbabilityVector({1.0 - 1e-13, 1e-13}), DomainError);    // below floor
    CHECK_THROWS_AS(ProbabilityVector({}), DomainError);
    // admission tolerance then renormalization
    const ProbabilityVector p = ProbabilityVector::renormalized({0.5 + 3e-10, 0.5}, 1e-9);
    CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(ProbabilityVector::renormalized({0.6, 0.5}, 1e-9), DomainError);
}

TEST_CASE("SimplexTangent must sum to zero") {
    CHECK_NOTHROW(SimplexTangent({1.0, -1.0}));
    CHECK_THROWS_AS(SimplexTangent({1.0, -0.5}), DomainError);
}

TEST_CASE("fisher_inner on worked examples") {
    const ProbabilityVector half({0.5, 0.5});
    const SimplexTangent x({1.0, -1.0});
    CHECK(fisher_inner(half, x, x) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(fisher_inner(half, SimplexTangent({0.0, 0.0}), x) == doctest::Approx(0.0));
    const ProbabilityVector p({0.25, 0.75});
    const SimplexTangent y({2.0, -2.0});
    CHECK(fisher_inner(p, x, y) == doctest::Approx(32.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(fisher_inner(ProbabilityVector({0.3, 0.3, 0.4}), x, y),
                    DimensionMismatchError);
}

TEST_CASE("geodesic endpoints are exact and constant curves stay put") {
    std::mt19937_64 rng(11);
    const ProbabilityVector p = random_simplex(4, rng);
    const ProbabilityVector q = random_simplex(4, rng);
    CHECK(max_abs_diff(m_geodesic(p, q, 0.0), p) <= 1e-14);
    CHECK(max_abs_diff(m_geodesic(p, q, 1.0), q) <= 1e-14);
    CHECK(max_abs_diff(e_geodesic(p, q, 0.0), p) <= 1e-14);
    CHECK(max_abs_diff(e_geodesic(p, q, 1.0), q) <= 1e-14);
    for (double t : {0.0, 0.3, 0.7, 1.0}) {
        CHECK(max_abs_diff(m_geodesic(p, p, t), p) <= 1e-14);
        CHECK(max_abs_diff(e_geodesic(p, p, t), p) <= 1e-13);
    }
    CHECK_THROWS_AS(m_geodesic(p, q, 1.5), DomainError);
}

TEST_CASE("geodesic midpoints") {
    const ProbabilityVector p({0.75, 0.25});
    const ProbabilityVector q({0.5, 0.5});
    const ProbabilityVector mid_m = m_geodesic(p, q, 0.5);
    CHECK(mid_m[0] == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(mid_m[1] == doctest::Approx(0.375).epsilon(1e-15));
    // unnormalized (sqrt(.375), sqrt(.125)), then normalized
    const ProbabilityVector mid_e = e_geodesic(p, q, 0.5);
    CHECK(mid_e[0] == doctest::Approx(0.6339745962155614).epsilon(1e-12));
    CHECK(mid_e[1] == doctest::Approx(0.3660254037844386).epsilon(1e-12));
}

TEST_CASE("e_velocity matches central finite differences on S_5") {
    std::mt19937_64 rng(12);
    const ProbabilityVector p = random_simplex(5, rng);
    const ProbabilityVector q = random_simplex(5, rng);
    const double h = 1e-6;
    for (double t : {0.2, 0.5, 0.8}) {
        const SimplexTangent v = e_velocity(p, q, t);
        double sum = 0.0;
        const ProbabilityVector up = e_geodesic(p, q, t + h);
        const ProbabilityVector dn = e_geodesic(p, q, t - h);
        double worst = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            worst = std::max(worst, std::abs((up[i] - dn[i]) / (2.0 * h) - v[i]));
            sum += v[i];
        }
        CHECK(worst <= 1e-7);
        CHECK(std::abs(sum) <= 1e-12);
    }
    const SimplexTangent still = e_velocity(p, p, 0.4);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(still[i]) <= 1e-14);
}

TEST_CASE("kl on worked examples") {
    const ProbabilityVector p({0.75, 0.25});
    const ProbabilityVector q({0.5, 0.5});
    CHECK(kl(p, p) == doctest::Approx(0.0));
    CHECK(kl(p, q) == doctest::Approx(kKlForward).epsilon(1e-9));
    CHECK(kl(q, p) == doctest::Approx(kKlReverse).epsilon(1e-9));
    CHECK(kl(p, q) != doctest::Approx(kl(q, p)).epsilon(1e-3));
}

TEST_CASE("kl non-negativity and identity of indiscernibles") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        const ProbabilityVector p = random_simplex(6, rng);
        const ProbabilityVector q = random_simplex(6, rng);
        CHECK(kl(p, q) >= -1e-14);
        CHECK(std::abs(kl(p, p)) <= 1e-15);
    }
}

TEST_CASE("canonical divergence reproduces KL") {
    const ProbabilityVector p({0.75, 0.25});
    const ProbabilityVector q({0.5, 0.5});
    CHECK(canonical_divergence_simplex(p, p) == doctest::Approx(0.0));
    CHECK(std::abs(canonical_divergence_simplex(p, q) - kKlForward) <= 1e-8);

    std::mt19937_64 rng(14);
    for (int i = 0; i < 10; ++i) {
        const ProbabilityVector a = random_simplex(10, rng);
        const ProbabilityVector b = random_simplex(10, rng);
        CHECK(std::abs(canonical_divergence_simplex(a, b) - kl(a, b)) <= 1e-8);
    }
}

TEST_CASE("dual divergence reproduces reversed KL and the duality relation") {
    const ProbabilityVector p({0.75, 0.25});
    const ProbabilityVector q({0.5, 0.5});
    CHECK(dual_divergence_simplex(p, p) == doctest::Approx(0.0));
    CHECK(std::abs(dual_divergence_simplex(p, q) - kKlReverse) <= 1e-8);

    std::mt19937_64 rng(15);
    for (int i = 0; i < 10; ++i) {
        const ProbabilityVector a = random_simplex(7, rng);
        const ProbabilityVector b = random_simplex(7, rng);
        CHECK(std::abs(dual_divergence_simplex(a, b) - kl(b, a)) <= 1e-8);
        CHECK(std::abs(dual_divergence_simplex(a, b) - canonical_divergence_simplex(b, a)) <=
              2e-8);
    }
}

TEST_CASE("dual speed equals the Fisher norm of the e-velocity") {
    // the quadrature integrand is assembled from the same operations it quotes
    std::mt19937_64 rng(16);
    const ProbabilityVector p = random_simplex(4, rng);
    const ProbabilityVector q = random_simplex(4, rng);
    for (double t : {0.1, 0.6}) {
        const ProbabilityVector g = e_geodesic(p, q, t);
        const SimplexTangent v = e_velocity(p, q, t);
        double variance = 0.0;
        double mean = 0.0;
        for (std::size_t i = 0; i < 4; ++i) mean += g[i] * std::log(q[i] / p[i]);
        for (std::size_t i = 0; i < 4; ++i) {
            const double c = std::log(q[i] / p[i]) - mean;
            variance += g[i] * c * c;
        }
        CHECK(fisher_inner(g, v, v) == doctest::Approx(variance).epsilon(1e-12));
    }
}
