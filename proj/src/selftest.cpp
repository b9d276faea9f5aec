#include "geodiv/selftest.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "geodiv/classical_complexity.hpp"
#include "geodiv/quadrature.hpp"
#include "geodiv/quantum.hpp"
#include "geodiv/quantum_complexity.hpp"
#include "geodiv/random_states.hpp"
#include "geodiv/simplex.hpp"
#include "geodiv/state_io.hpp"

namespace geodiv {

namespace {

class Checker {
public:
    explicit Checker(std::string name) { result_.name = std::move(name); }

    void check(const std::string& what, double error, double tolerance,
               const std::function<std::string()>& replay = {}) {
        ++result_.checks;
        const double ratio = std::abs(error) / tolerance;
        result_.worst_ratio = std::max(result_.worst_ratio, ratio);
        if (!(std::abs(error) <= tolerance)) {
            result_.passed = false;
            std::ostringstream os;
            os << "  FAIL " << what << ": error " << error << " exceeds " << tolerance << "\n";
            if (replay) os << "  replay: " << replay() << "\n";
            result_.detail += os.str();
        }
    }

    void check_true(const std::string& what, bool ok,
                    const std::function<std::string()>& replay = {}) {
        ++result_.checks;
        if (!ok) {
            result_.passed = false;
            result_.detail += "  FAIL " + what + "\n";
            if (replay) result_.detail += "  replay: " + replay() + "\n";
        }
    }

    SuiteResult take() { return std::move(result_); }

private:
    SuiteResult result_;
};

int count_or(int trials, int def) { return trials < 0 ? def : trials; }

std::string replay_pair(const ProbabilityVector& p, const ProbabilityVector& q) {
    return serialize_simplex(p) + " | " + serialize_simplex(q);
}

std::string replay_pair(const DensityMatrix& a, const DensityMatrix& b) {
    return serialize_density(a) + " | " + serialize_density(b);
}

// -- suite 1: canonical/dual simplex divergence vs closed-form KL ------------

SuiteResult suite_simplex_identity(std::uint64_t seed, int trials) {
    Checker c("simplex-identity");
    std::mt19937_64 rng(seed + 1);
    const std::size_t sizes[] = {2, 3, 5, 10};
    const int cases = count_or(trials, 100);
    for (int i = 0; i < cases; ++i) {
        const std::size_t n = sizes[i % 4];
        const ProbabilityVector p = random_simplex(n, rng);
        const ProbabilityVector q = random_simplex(n, rng);
        const double kl_pq = kl(p, q);
        const double kl_qp = kl(q, p);
        c.check("canonical vs kl, n=" + std::to_string(n),
                canonical_divergence_simplex(p, q) - kl_pq, 1e-8,
                [&] { return replay_pair(p, q); });
        c.check("dual vs kl(q,p), n=" + std::to_string(n),
                dual_divergence_simplex(p, q) - kl_qp, 1e-8,
                [&] { return replay_pair(p, q); });
    }
    return c.take();
}

// -- suite 2: canonical/dual quantum divergence vs relative entropy ----------

SuiteResult suite_quantum_identity(std::uint64_t seed, int trials) {
    Checker c("quantum-identity");
    std::mt19937_64 rng(seed + 2);
    const std::size_t dims[] = {2, 3, 4, 8};
    const int cases = count_or(trials, 50);
    for (int i = 0; i < cases; ++i) {
        const std::size_t d = dims[i % 4];
        const DensityMatrix r1 = random_density(d, rng);
        const DensityMatrix r2 = random_density(d, rng);
        c.check("canonical vs qre, dim=" + std::to_string(d),
                canonical_divergence_quantum(r1, r2) - quantum_relative_entropy(r1, r2), 1e-7,
                [&] { return replay_pair(r1, r2); });
        c.check("dual vs qre(b,a), dim=" + std::to_string(d),
                dual_divergence_quantum(r1, r2) - quantum_relative_entropy(r2, r1), 1e-7,
                [&] { return replay_pair(r1, r2); });
    }
    return c.take();
}

// -- suite 3: diagonal pairs reduce to the classical quantities --------------

SuiteResult suite_commuting_reduction(std::uint64_t seed, int trials) {
    Checker c("commuting-reduction");
    std::mt19937_64 rng(seed + 3);
    const std::size_t sizes[] = {2, 3, 4, 6};
    const int cases = count_or(trials, 20);
    for (int i = 0; i < cases; ++i) {
        const std::size_t n = sizes[i % 4];
        const ProbabilityVector p = random_simplex(n, rng, 1.0);
        const ProbabilityVector q = random_simplex(n, rng, 1.0);
        const DensityMatrix rp = DensityMatrix::diagonal(p);
        const DensityMatrix rq = DensityMatrix::diagonal(q);
        auto replay = [&] { return replay_pair(p, q); };
        c.check("qre vs kl", quantum_relative_entropy(rp, rq) - kl(p, q), 1e-9, replay);
        c.check("canonical-q vs kl", canonical_divergence_quantum(rp, rq) - kl(p, q), 1e-9,
                replay);
        c.check("dual-q vs kl(q,p)", dual_divergence_quantum(rp, rq) - kl(q, p), 1e-9, replay);
        c.check("entropy vs shannon", von_neumann_entropy(rp) - shannon_entropy(p), 1e-9,
                replay);
    }
    return c.take();
}

// -- suite 4: Eguchi metric recovery from KL on the S_3 chart ----------------

SuiteResult suite_eguchi_recovery(std::uint64_t seed, int trials) {
    Checker c("eguchi-recovery");
    (void)seed;
    if (count_or(trials, 1) == 0) return c.take();

    // chart: first two coordinates, third weight eliminated
    auto complete = [](const std::vector<double>& xi) {
        return ProbabilityVector({xi[0], xi[1], 1.0 - xi[0] - xi[1]});
    };
    auto divergence = [&](const std::vector<double>& a, const std::vector<double>& b) {
        return kl(complete(a), complete(b));
    };
    auto in_domain = [](const std::vector<double>& xi) {
        return xi[0] > 0.0 && xi[1] > 0.0 && xi[0] + xi[1] < 1.0;
    };
    const std::vector<double> point = {0.3, 0.45};
    const double p3 = 1.0 - point[0] - point[1];
    auto fisher_chart = [&](std::size_t i, std::size_t j) {
        return (i == j ? 1.0 / point[i] : 0.0) + 1.0 / p3;
    };

    const double dev_h = eguchi_metric_check(divergence, point, fisher_chart, 1e-3, in_domain);
    const double dev_h2 = eguchi_metric_check(divergence, point, fisher_chart, 5e-4, in_domain);
    c.check("fd metric vs Fisher chart at h=1e-3", dev_h, 1e-5);
    const double ratio = dev_h / dev_h2;
    c.check_true("second-order decay, ratio " + std::to_string(ratio) + " in [3.2, 4.8]",
                 ratio > 3.2 && ratio < 4.8);
    return c.take();
}

// -- suite 5: classical complexity ------------------------------------------

// independent entropy-arithmetic oracle for the correlated-bits family
double correlated_bits_oracle(double eps) {
    const double a = (1.0 - eps) / 2.0, b = eps / 2.0;
    const double joint_entropy = -2.0 * (a * std::log(a) + b * std::log(b));
    return 2.0 * std::log(2.0) - joint_entropy;
}

JointDistribution correlated_bits(double eps) {
    const double a = (1.0 - eps) / 2.0, b = eps / 2.0;
    return JointDistribution(ConfigurationSpace({2, 2}), ProbabilityVector({a, b, b, a}));
}

JointDistribution three_bit_parity_mixture() {
    std::vector<double> w(8);
    for (std::size_t i = 0; i < 8; ++i) {
        const int parity = (static_cast<int>(i) ^ (static_cast<int>(i) >> 1) ^
                            (static_cast<int>(i) >> 2)) & 1;
        w[i] = parity == 0 ? 0.9 / 4.0 + 0.1 / 8.0 : 0.1 / 8.0;
    }
    return JointDistribution(ConfigurationSpace({2, 2, 2}), ProbabilityVector(std::move(w)));
}

// random member of the family: normalized product of per-subset potentials
JointDistribution random_family_member(const ConfigurationSpace& space,
                                       const MarginalFamily& family, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-0.5, 0.5);
    std::vector<double> logw(space.total(), 0.0);
    for (const auto& subset : family.subsets()) {
        std::size_t cells = 1;
        for (std::size_t s : subset) cells *= space.cardinality(s);
        std::vector<double> pot(cells);
        for (double& v : pot) v = uni(rng);
        std::vector<std::size_t> mstride(subset.size(), 1);
        for (std::size_t k = subset.size(); k-- > 1;)
            mstride[k - 1] = mstride[k] * space.cardinality(subset[k]);
        for (std::size_t idx = 0; idx < space.total(); ++idx) {
            std::size_t cell = 0;
            for (std::size_t k = 0; k < subset.size(); ++k)
                cell += space.digit(idx, subset[k]) * mstride[k];
            logw[idx] += pot[cell];
        }
    }
    std::vector<double> w(space.total());
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) sum += (w[i] = std::exp(logw[i]));
    for (double& v : w) v /= sum;
    return JointDistribution(space, ProbabilityVector::renormalized(std::move(w), 1e-9));
}

SuiteResult suite_classical_complexity(std::uint64_t seed, int trials) {
    Checker c("classical-complexity");
    std::mt19937_64 rng(seed + 5);
    const int cases = count_or(trials, 20);
    if (cases == 0) return c.take();

    // singleton family reproduces the product of marginals and multi-information
    {
        ConfigurationSpace space({2, 3, 2});
        std::vector<double> w(space.total());
        std::uniform_real_distribution<double> uni(0.2, 1.0);
        double sum = 0.0;
        for (double& x : w) sum += (x = uni(rng));
        for (double& x : w) x /= sum;
        JointDistribution p(space, ProbabilityVector::renormalized(std::move(w), 1e-9));
        const ProjectionReport rep = ipf_project(p, MarginalFamily::singletons(3));
        const JointDistribution prod = product_of_marginals(p);
        double cell_dev = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            cell_dev = std::max(cell_dev, std::abs(rep.projection[i] - prod[i]));
        c.check("singleton projection vs product of marginals", cell_dev, 1e-9,
                [&] { return serialize_joint(p); });
        c.check("singleton divergence vs multi-information",
                rep.divergence - multi_information(p), 1e-9, [&] { return serialize_joint(p); });
        c.check_true("singleton projection converged", rep.converged);
    }

    // correlated bits against the entropy-arithmetic oracle
    {
        const JointDistribution p = correlated_bits(0.05);
        const ProjectionReport rep = complexity_classical(p, MarginalFamily::singletons(2));
        c.check("correlated-bits divergence vs oracle",
                rep.divergence - correlated_bits_oracle(0.05), 1e-6,
                [&] { return serialize_joint(p); });
    }

    // pairwise family on the 3-bit parity mixture: convergence + Pythagoras
    {
        const JointDistribution p = three_bit_parity_mixture();
        const MarginalFamily family = MarginalFamily::pairs(3);
        const ProjectionReport rep = ipf_project(p, family, {1e-9, 2000});
        c.check_true("pairwise IPF converged within 2000 sweeps", rep.converged,
                     [&] { return serialize_joint(p); });
        c.check("pairwise marginal residual", rep.residual, 1e-9,
                [&] { return serialize_joint(p); });
        for (int i = 0; i < cases; ++i) {
            const JointDistribution q = random_family_member(p.space(), family, rng);
            const double gap = kl(p.probabilities(), q.probabilities()) - rep.divergence -
                               kl(rep.projection.probabilities(), q.probabilities());
            c.check("Pythagorean residual", gap, 1e-7, [&] { return serialize_joint(q); });
        }
    }
    return c.take();
}

// -- suite 6: quantum complexity ---------------------------------------------

MultiQubitState noisy_bell(double eps) {
    ComplexMatrix m(4);
    m(0, 0) = m(3, 3) = (1.0 - eps) / 2.0 + eps / 4.0;
    m(0, 3) = m(3, 0) = (1.0 - eps) / 2.0;
    m(1, 1) = m(2, 2) = eps / 4.0;
    return MultiQubitState(2, DensityMatrix(HermitianMatrix(std::move(m))));
}

SuiteResult suite_quantum_complexity(std::uint64_t seed, int trials) {
    Checker c("quantum-complexity");
    std::mt19937_64 rng(seed + 6);
    const int cases = count_or(trials, 10);
    if (cases == 0) return c.take();

    // Gibbs round trip: states generated inside the family project to zero
    {
        std::uniform_real_distribution<double> uni(-0.3, 0.3);
        for (const auto& [n, k] : {std::pair<std::size_t, std::size_t>{2, 1}, {3, 2}}) {
            const KLocalBasis basis(n, k);
            GibbsParameters theta;
            theta.theta.resize(basis.size());
            for (double& t : theta.theta) t = uni(rng);
            const MultiQubitState rho = gibbs_state(theta, basis);
            const QuantumProjectionReport rep = maxent_project_quantum(rho, k);
            c.check("Gibbs round-trip divergence, n=" + std::to_string(n) +
                        " k=" + std::to_string(k),
                    rep.divergence, 1e-8, [&] { return serialize_multiqubit(rho); });
            c.check_true("Gibbs round-trip converged", rep.converged);
        }
    }

    // k = 1 projection equals the quantum multi-information
    for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
        const MultiQubitState rho = random_multiqubit(n, rng);
        const QuantumProjectionReport rep = many_party_correlation(rho, 1);
        c.check("Q(rho,E1) vs quantum multi-information, n=" + std::to_string(n),
                rep.divergence - quantum_multi_information(rho), 1e-5,
                [&] { return serialize_multiqubit(rho); });
    }

    // noisy Bell pair: multi-information near 2 ln 2
    {
        const MultiQubitState bell = noisy_bell(1e-6);
        c.check("noisy Bell multi-information vs 2 ln 2",
                quantum_multi_information(bell) - 2.0 * std::log(2.0), 1e-4,
                [&] { return serialize_multiqubit(bell); });
    }

    // monotonicity in k on random 3-qubit states
    for (int i = 0; i < cases; ++i) {
        const MultiQubitState rho = random_multiqubit(3, rng);
        const double q1 = many_party_correlation(rho, 1).divergence;
        const double q2 = many_party_correlation(rho, 2).divergence;
        auto replay = [&] { return serialize_multiqubit(rho); };
        c.check_true("Q(rho,E1) >= Q(rho,E2), got " + std::to_string(q1) + " vs " +
                         std::to_string(q2),
                     q1 >= q2 - 1e-7, replay);
        c.check_true("Q(rho,E2) >= 0", q2 >= -1e-9, replay);
    }
    return c.take();
}

// -- suite 7: numerics substrate ---------------------------------------------

SuiteResult suite_numerics_substrate(std::uint64_t seed, int trials) {
    Checker c("numerics-substrate");
    std::mt19937_64 rng(seed + 7);
    const int cases = count_or(trials, 20);
    if (cases == 0) return c.take();

    // dlog_frechet against forward differences: O(h) error, ratio ~ 10
    for (int rep = 0; rep < 3; ++rep) {
        const std::size_t d = 3 + rep;
        ComplexMatrix shifted = random_density(d, rng).mat();
        shifted += Complex(0.3) * ComplexMatrix::identity(d);
        const HermitianMatrix p = HermitianMatrix(std::move(shifted));
        const HermitianMatrix v = random_hermitian(d, rng);
        const HermitianMatrix dl = dlog_frechet(p, v);
        const HermitianMatrix logp = matrix_log(p);
        double err[2];
        const double hs[2] = {1e-4, 1e-5};
        for (int hi = 0; hi < 2; ++hi) {
            const HermitianMatrix logph =
                matrix_log(HermitianMatrix(p.mat() + Complex(hs[hi]) * v.mat()));
            ComplexMatrix fd = logph.mat() - logp.mat();
            fd *= Complex(1.0 / hs[hi]);
            err[hi] = (fd - dl.mat()).max_abs();
        }
        const double ratio = err[0] / err[1];
        c.check_true("dlog fd error ratio " + std::to_string(ratio) + " in [8, 12]",
                     ratio > 8.0 && ratio < 12.0);
        c.check("dlog fd error at h=1e-5", err[1], 1e-3);
    }

    // Bogoliubov closed form against 64-point quadrature over the power
    for (int i = 0; i < cases; ++i) {
        const std::size_t d = 2 + (i % 3);
        const DensityMatrix rho = random_density(d, rng);
        const HermitianMatrix a = random_hermitian(d, rng);
        const HermitianMatrix b = random_hermitian(d, rng);
        const SpectralDecomposition dec = eig_hermitian(rho.hermitian());
        auto power = [&](double s) {
            ComplexMatrix core(d);
            for (std::size_t j = 0; j < d; ++j) core(j, j) = std::pow(dec.eigenvalues[j], s);
            return from_eigenbasis(dec, core);
        };
        auto integrand = [&](double s) {
            return real_trace_product(power(s) * a.mat() * power(1.0 - s), b.mat());
        };
        const double quad = gauss_legendre_integrate(integrand, 0.0, 1.0, 64);
        c.check("Bogoliubov closed form vs 64-point quadrature, dim=" + std::to_string(d),
                bogoliubov_inner(rho, a, b) - quad, 1e-9,
                [&] { return serialize_density(rho); });
    }
    return c.take();
}

}  // namespace

std::vector<SuiteResult> run_selftest_suites(const SelftestOptions& options) {
    std::vector<SuiteResult> results;
    results.push_back(suite_simplex_identity(options.seed, options.trials));
    results.push_back(suite_quantum_identity(options.seed, options.trials));
    results.push_back(suite_commuting_reduction(options.seed, options.trials));
    results.push_back(suite_eguchi_recovery(options.seed, options.trials));
    results.push_back(suite_classical_complexity(options.seed, options.trials));
    results.push_back(suite_quantum_complexity(options.seed, options.trials));
    results.push_back(suite_numerics_substrate(options.seed, options.trials));
    return results;
}

bool all_passed(const std::vector<SuiteResult>& results) {
    for (const SuiteResult& r : results)
        if (!r.passed) return false;
    return true;
}

}  // namespace geodiv
