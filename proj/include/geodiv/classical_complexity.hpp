#pragma once

#include <cstddef>
#include <vector>

#include "geodiv/errors.hpp"
#include "geodiv/simplex.hpp"

namespace geodiv {

/// Product configuration set over n sites, site 0 the most significant digit
/// of the lexicographic (site-major) index.
class ConfigurationSpace {
public:
    explicit ConfigurationSpace(std::vector<std::size_t> cards);

    std::size_t n_sites() const { return cards_.size(); }
    std::size_t total() const { return total_; }
    const std::vector<std::size_t>& cardinalities() const { return cards_; }
    std::size_t cardinality(std::size_t site) const { return cards_[site]; }
    std::size_t stride(std::size_t site) const { return strides_[site]; }
    std::size_t digit(std::size_t index, std::size_t site) const {
        return (index / strides_[site]) % cards_[site];
    }

private:
    std::vector<std::size_t> cards_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 0;
};

/// Strictly positive joint distribution over a configuration space.
class JointDistribution {
public:
    JointDistribution(ConfigurationSpace space, ProbabilityVector weights);

    const ConfigurationSpace& space() const { return space_; }
    const ProbabilityVector& probabilities() const { return weights_; }
    double operator[](std::size_t idx) const { return weights_[idx]; }
    std::size_t size() const { return weights_.size(); }

private:
    ConfigurationSpace space_;
    ProbabilityVector weights_;
};

/// Antichain of site subsets covering every site; subsets contained in
/// others are dropped silently (they impose no extra marginal constraints).
class MarginalFamily {
public:
    MarginalFamily(std::size_t n_sites, std::vector<std::vector<std::size_t>> subsets);

    static MarginalFamily singletons(std::size_t n_sites);
    static MarginalFamily pairs(std::size_t n_sites);

    std::size_t n_sites() const { return n_sites_; }
    const std::vector<std::vector<std::size_t>>& subsets() const { return subsets_; }

private:
    std::size_t n_sites_;
    std::vector<std::vector<std::size_t>> subsets_;
};

struct OptimizerConfig {
    double tolerance = 1e-9;
    int max_iterations = 10000;
};

struct ProjectionReport {
    JointDistribution projection;
    double divergence = 0.0;  // nats
    int iterations = 0;       // IPF sweeps
    double residual = 0.0;    // max marginal mismatch
    bool converged = false;
};

/// Marginal of p on the given sites (ascending site order).
JointDistribution marginal(const JointDistribution& p, const std::vector<std::size_t>& sites);

/// Product of the single-site marginals; the maximum-entropy projection for
/// the singleton family.
JointDistribution product_of_marginals(const JointDistribution& p);

/// Multi-information sum_i H(X_i) - H(X_1..X_n); equals the KL distance from
/// the product of marginals.
double multi_information(const JointDistribution& p);

/// Iterative proportional fitting: cycles over the family, rescaling p_hat by
/// p_A / p_hat_A until every family marginal matches within cfg.tolerance.
/// On iteration exhaustion the report carries the best iterate with
/// converged = false.
ProjectionReport ipf_project(const JointDistribution& p, const MarginalFamily& family,
                             const OptimizerConfig& cfg = {});

/// KL(p, E_family) = KL(p, p_hat) with p_hat the IPF projection.
ProjectionReport complexity_classical(const JointDistribution& p, const MarginalFamily& family,
                                      const OptimizerConfig& cfg = {});

}  // namespace geodiv
