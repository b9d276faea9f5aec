#include "doctest.h"

#include <cmath>
#include <random>

#include "geodiv/classical_complexity.hpp"

using namespace geodiv;

namespace {

JointDistribution correlated_bits(double eps) {
    // p(00) = p(11) = 1/2 - eps, p(01) = p(10) = eps
    return JointDistribution(ConfigurationSpace({2, 2}),
                             ProbabilityVector({0.5 - eps, eps, eps, 0.5 - eps}));
}

JointDistribution random_joint(const std::vector<std::size_t>& cards, std::mt19937_64& rng) {
    ConfigurationSpace space(cards);
    std::uniform_real_distribution<double> uni(0.1, 1.0);
    std::vector<double> w(space.total());
    double sum = 0.0;
    for (double& x : w) sum += (x = uni(rng));
    for (double& x : w) x /= sum;
    return JointDistribution(std::move(space),
                             ProbabilityVector::renormalized(std::move(w), 1e-9));
}

JointDistribution three_bit_mixture() {
    std::vector<double> w(8);
    for (std::size_t i = 0; i < 8; ++i) {
        const bool even = ((i ^ (i >> 1) ^ (i >> 2)) & 1u) == 0;
        w[i] = even ? 0.9 / 4.0 + 0.1 / 8.0 : 0.1 / 8.0;
    }
    return JointDistribution(ConfigurationSpace({2, 2, 2}), ProbabilityVector(std::move(w)));
}

double max_cell_diff(const JointDistribution& a, const JointDistribution& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("ConfigurationSpace indexing is site-major") {
    ConfigurationSpace space({2, 3, 2});
    CHECK(space.total() == 12);
    CHECK(space.stride(0) == 6);
    CHECK(space.stride(1) == 2);
    CHECK(space.stride(2) == 1);
    CHECK(space.digit(7, 0) == 1);  // 7 = 1*6 + 0*2 + 1
    CHECK(space.digit(7, 1) == 0);
    CHECK(space.digit(7, 2) == 1);
    CHECK_THROWS_AS(ConfigurationSpace({1, 2}), DomainError);
    CHECK_THROWS_AS(ConfigurationSpace(std::vector<std::size_t>(21, 2)), DomainError);
}

TEST_CASE("MarginalFamily antichain reduction and coverage") {
    const MarginalFamily f(3, {{0}, {0, 1}, {2}, {1, 0}});
    REQUIRE(f.subsets().size() == 2);
    CHECK(f.subsets()[0] == std::vector<std::size_t>{0, 1});
    CHECK(f.subsets()[1] == std::vector<std::size_t>{2});
    CHECK_THROWS_AS(MarginalFamily(3, {{0, 1}}), InvalidSubsetError);  // site 2 uncovered
    CHECK_THROWS_AS(MarginalFamily(2, {{0, 5}}), InvalidSubsetError);
    CHECK_THROWS_AS(MarginalFamily(2, {{}}), InvalidSubsetError);
    CHECK(MarginalFamily::pairs(3).subsets().size() == 3);
    CHECK_THROWS_AS(MarginalFamily::pairs(1), InvalidSubsetError);
}

TEST_CASE("marginal of worked examples") {
    std::mt19937_64 rng(41);
    const JointDistribution p = random_joint({2, 3}, rng);
    CHECK(max_cell_diff(marginal(p, {0, 1}), p) <= 1e-15);

    // product distribution factors
    const std::vector<double> q1 = {0.3, 0.7};
    const std::vector<double> q2 = {0.2, 0.5, 0.3};
    std::vector<double> w(6);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) w[i * 3 + j] = q1[i] * q2[j];
    const JointDistribution prod(ConfigurationSpace({2, 3}), ProbabilityVector(std::move(w)));
    const JointDistribution m1 = marginal(prod, {0});
    CHECK(m1[0] == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(m1[1] == doctest::Approx(0.7).epsilon(1e-14));

    const JointDistribution bits = correlated_bits(0.05);
    const JointDistribution mb = marginal(bits, {0});
    CHECK(mb[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mb[1] == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(marginal(p, {}), InvalidSubsetError);
    CHECK_THROWS_AS(marginal(p, {4}), InvalidSubsetError);
}

TEST_CASE("product_of_marginals") {
    std::mt19937_64 rng(42);
    const JointDistribution p = random_joint({2, 2, 3}, rng);
    const JointDistribution prod = product_of_marginals(p);
    CHECK(max_cell_diff(product_of_marginals(prod), prod) <= 1e-14);  // idempotent

    const JointDistribution bits = correlated_bits(0.05);
    const JointDistribution uniform_bits = product_of_marginals(bits);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(uniform_bits[i] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("multi_information: products, correlated bits, mutual information") {
    std::mt19937_64 rng(43);
    const JointDistribution p = random_joint({2, 3}, rng);
    CHECK(multi_information(product_of_marginals(p)) <= 1e-12);

    // near-perfect correlation approaches ln 2
    CHECK(std::abs(multi_information(correlated_bits(1e-9)) - std::log(2.0)) <= 1e-7);

    // equals KL from the product of marginals
    CHECK(multi_information(p) ==
          doctest::Approx(kl(p.probabilities(), product_of_marginals(p).probabilities()))
              .epsilon(1e-10));

    // n = 2: mutual information by the double-sum formula, independent route
    const JointDistribution table = random_joint({3, 3}, rng);
    const JointDistribution mx = marginal(table, {0});
    const JointDistribution my = marginal(table, {1});
    double mi = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            mi += table[i * 3 + j] * std::log(table[i * 3 + j] / (mx[i] * my[j]));
    CHECK(multi_information(table) == doctest::Approx(mi).epsilon(1e-10));

    // frozen oracle computed by an independent script
    const JointDistribution fixed(
        ConfigurationSpace({3, 3}),
        ProbabilityVector({0.18, 0.04, 0.08, 0.06, 0.20, 0.05, 0.07, 0.09, 0.23}));
    CHECK(multi_information(fixed) == doctest::Approx(0.167361074334469).epsilon(1e-12));
}

TEST_CASE("ipf_project on the trivial and singleton families") {
    std::mt19937_64 rng(44);
    const JointDistribution p = random_joint({2, 3, 2}, rng);

    const ProjectionReport full = ipf_project(p, MarginalFamily(3, {{0, 1, 2}}));
    CHECK(full.converged);
    CHECK(max_cell_diff(full.projection, p) <= 1e-12);
    CHECK(std::abs(full.divergence) <= 1e-12);

    const ProjectionReport singles = ipf_project(p, MarginalFamily::singletons(3));
    CHECK(singles.converged);
    CHECK(max_cell_diff(singles.projection, product_of_marginals(p)) <= 1e-9);
    CHECK(std::abs(singles.divergence - multi_information(p)) <= 1e-9);
}

TEST_CASE("ipf_project on the pairwise family: convergence, Pythagoras, idempotence") {
    const JointDistribution p = three_bit_mixture();
    const MarginalFamily family = MarginalFamily::pairs(3);
    const ProjectionReport rep = ipf_project(p, family, {1e-9, 2000});
    CHECK(rep.converged);
    CHECK(rep.residual <= 1e-9);
    CHECK(rep.iterations <= 2000);

    // the parity mixture has uniform pair marginals, so the projection is uniform
    CHECK(max_cell_diff(rep.projection,
                        JointDistribution(ConfigurationSpace({2, 2, 2}),
                                          ProbabilityVector(std::vector<double>(8, 0.125)))) <=
          1e-9);

    // Pythagorean identity against family members built from random pair potentials
    std::mt19937_64 rng(45);
    std::uniform_real_distribution<double> uni(-0.5, 0.5);
    for (int rep_i = 0; rep_i < 5; ++rep_i) {
        double pot01[4], pot02[4], pot12[4];
        for (int c = 0; c < 4; ++c) {
            pot01[c] = uni(rng);
            pot02[c] = uni(rng);
            pot12[c] = uni(rng);
        }
        std::vector<double> w(8);
        double sum = 0.0;
        for (std::size_t x = 0; x < 8; ++x) {
            const std::size_t b0 = (x >> 2) & 1, b1 = (x >> 1) & 1, b2 = x & 1;
            w[x] = std::exp(pot01[b0 * 2 + b1] + pot02[b0 * 2 + b2] + pot12[b1 * 2 + b2]);
            sum += w[x];
        }
        for (double& v : w) v /= sum;
        const JointDistribution q(ConfigurationSpace({2, 2, 2}),
                                  ProbabilityVector::renormalized(std::move(w), 1e-9));
        const double gap = kl(p.probabilities(), q.probabilities()) - rep.divergence -
                           kl(rep.projection.probabilities(), q.probabilities());
        CHECK(std::abs(gap) <= 1e-7);
    }

    // projecting the projection returns it unchanged
    const ProjectionReport again = ipf_project(rep.projection, family, {1e-9, 2000});
    CHECK(max_cell_diff(again.projection, rep.projection) <= 1e-8);
    CHECK(std::abs(again.divergence) <= 1e-12);
}

TEST_CASE("complexity_classical values and refinement monotonicity") {
    const JointDistribution bits = correlated_bits(0.025);  // cells (0.475, 0.025)
    const ProjectionReport rep = complexity_classical(bits, MarginalFamily::singletons(2));
    // independent entropy-arithmetic oracle: 2 ln 2 - H(joint)
    const double h_joint = -2.0 * (0.475 * std::log(0.475) + 0.025 * std::log(0.025));
    CHECK(std::abs(rep.divergence - (2.0 * std::log(2.0) - h_joint)) <= 1e-6);
    CHECK(rep.divergence == doctest::Approx(0.4946319372139764).epsilon(1e-9));

    std::mt19937_64 rng(46);
    const JointDistribution p = three_bit_mixture();
    const double d1 = complexity_classical(p, MarginalFamily::singletons(3)).divergence;
    const double d2 = complexity_classical(p, MarginalFamily::pairs(3)).divergence;
    const double d3 = complexity_classical(p, MarginalFamily(3, {{0, 1, 2}})).divergence;
    CHECK(d1 >= d2 - 1e-9);
    CHECK(d2 >= d3 - 1e-9);
    CHECK(d3 <= 1e-12);
}

TEST_CASE("ipf_project reports non-convergence with the best iterate") {
    const JointDistribution p = three_bit_mixture();
    const ProjectionReport rep = ipf_project(p, MarginalFamily::pairs(3), {1e-14, 1});
    CHECK_FALSE(rep.converged);
    CHECK(rep.iterations == 1);
    CHECK(rep.residual > 1e-14);
    CHECK(rep.divergence >= 0.0);  // best iterate still reported
}
