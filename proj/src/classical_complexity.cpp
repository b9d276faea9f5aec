#include "geodiv/classical_complexity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace geodiv {

namespace {

std::vector<std::size_t> normalized_subset(std::vector<std::size_t> sites, std::size_t n_sites,
                                           const char* where) {
    if (sites.empty()) throw InvalidSubsetError(std::string(where) + ": empty subset");
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    if (sites.back() >= n_sites)
        throw InvalidSubsetError(std::string(where) + ": site index " +
                                 std::to_string(sites.back()) + " out of range");
    return sites;
}

// raw marginal over `sites` (sorted), result in the sub-space's site-major order
std::vector<double> marginal_raw(const ConfigurationSpace& space, const std::vector<double>& w,
                                 const std::vector<std::size_t>& sites) {
    std::size_t count = 1;
    for (std::size_t s : sites) count *= space.cardinality(s);

    // stride of each kept site inside the marginal table
    std::vector<std::size_t> mstride(sites.size(), 1);
    for (std::size_t k = sites.size(); k-- > 1;)
        mstride[k - 1] = mstride[k] * space.cardinality(sites[k]);

    std::vector<double> out(count, 0.0);
    for (std::size_t idx = 0; idx < space.total(); ++idx) {
        std::size_t cell = 0;
        for (std::size_t k = 0; k < sites.size(); ++k)
            cell += space.digit(idx, sites[k]) * mstride[k];
        out[cell] += w[idx];
    }
    return out;
}

}  // namespace

ConfigurationSpace::ConfigurationSpace(std::vector<std::size_t> cards) : cards_(std::move(cards)) {
    if (cards_.empty()) throw DomainError("ConfigurationSpace: no sites");
    total_ = 1;
    for (std::size_t c : cards_) {
        if (c < 2) throw DomainError("ConfigurationSpace: site cardinality must be >= 2");
        total_ *= c;
        if (total_ > (std::size_t{1} << 20))
            throw DomainError("ConfigurationSpace: more than 2^20 configurations");
    }
    strides_.assign(cards_.size(), 1);
    for (std::size_t s = cards_.size(); s-- > 1;) strides_[s - 1] = strides_[s] * cards_[s];
}

JointDistribution::JointDistribution(ConfigurationSpace space, ProbabilityVector weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
    if (weights_.size() != space_.total())
        throw DimensionMismatchError("JointDistribution: " + std::to_string(weights_.size()) +
                                     " weights for " + std::to_string(space_.total()) +
                                     " configurations");
}

MarginalFamily::MarginalFamily(std::size_t n_sites,
                               std::vector<std::vector<std::size_t>> subsets)
    : n_sites_(n_sites) {
    if (n_sites_ == 0) throw DomainError("MarginalFamily: no sites");
    std::vector<std::vector<std::size_t>> cleaned;
    for (auto& s : subsets) cleaned.push_back(normalized_subset(std::move(s), n_sites_, "MarginalFamily"));

    // antichain reduction: drop subsets contained in another
    for (std::size_t i = 0; i < cleaned.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < cleaned.size() && !dominated; ++j) {
            if (i == j || cleaned[j].size() < cleaned[i].size()) continue;
            if (i > j && cleaned[i] == cleaned[j]) {
                dominated = true;  // duplicate, keep the first occurrence
                break;
            }
            if (cleaned[i] != cleaned[j] &&
                std::includes(cleaned[j].begin(), cleaned[j].end(), cleaned[i].begin(),
                              cleaned[i].end()))
                dominated = true;
        }
        if (!dominated) subsets_.push_back(cleaned[i]);
    }

    std::vector<bool> covered(n_sites_, false);
    for (const auto& s : subsets_)
        for (std::size_t v : s) covered[v] = true;
    for (std::size_t v = 0; v < n_sites_; ++v)
        if (!covered[v])
            throw InvalidSubsetError("MarginalFamily: site " + std::to_string(v) +
                                     " not covered by any subset");
}

MarginalFamily MarginalFamily::singletons(std::size_t n_sites) {
    std::vector<std::vector<std::size_t>> subsets;
    for (std::size_t v = 0; v < n_sites; ++v) subsets.push_back({v});
    return MarginalFamily(n_sites, std::move(subsets));
}

MarginalFamily MarginalFamily::pairs(std::size_t n_sites) {
    if (n_sites < 2) throw InvalidSubsetError("MarginalFamily::pairs: need at least two sites");
    std::vector<std::vector<std::size_t>> subsets;
    for (std::size_t a = 0; a < n_sites; ++a)
        for (std::size_t b = a + 1; b < n_sites; ++b) subsets.push_back({a, b});
    return MarginalFamily(n_sites, std::move(subsets));
}

JointDistribution marginal(const JointDistribution& p, const std::vector<std::size_t>& sites) {
    const std::vector<std::size_t> subset =
        normalized_subset(sites, p.space().n_sites(), "marginal");
    std::vector<std::size_t> cards;
    for (std::size_t s : subset) cards.push_back(p.space().cardinality(s));
    std::vector<double> w = marginal_raw(p.space(), p.probabilities().weights(), subset);
    return JointDistribution(ConfigurationSpace(std::move(cards)),
                             ProbabilityVector::renormalized(std::move(w), 1e-9));
}

JointDistribution product_of_marginals(const JointDistribution& p) {
    const ConfigurationSpace& space = p.space();
    std::vector<std::vector<double>> site_marginals;
    for (std::size_t s = 0; s < space.n_sites(); ++s)
        site_marginals.push_back(marginal_raw(space, p.probabilities().weights(), {s}));

    std::vector<double> w(space.total());
    for (std::size_t idx = 0; idx < space.total(); ++idx) {
        double v = 1.0;
        for (std::size_t s = 0; s < space.n_sites(); ++s)
            v *= site_marginals[s][space.digit(idx, s)];
        w[idx] = v;
    }
    return JointDistribution(space, ProbabilityVector::renormalized(std::move(w), 1e-9));
}

double multi_information(const JointDistribution& p) {
    double s = -shannon_entropy(p.probabilities());
    for (std::size_t v = 0; v < p.space().n_sites(); ++v)
        s += shannon_entropy(marginal(p, {v}).probabilities());
    return s;
}

ProjectionReport ipf_project(const JointDistribution& p, const MarginalFamily& family,
                             const OptimizerConfig& cfg) {
    if (family.n_sites() != p.space().n_sites())
        throw DimensionMismatchError("ipf_project: family is over " +
                                     std::to_string(family.n_sites()) + " sites, state over " +
                                     std::to_string(p.space().n_sites()));
    if (!(cfg.tolerance > 0.0)) throw DomainError("ipf_project: tolerance must be positive");

    const ConfigurationSpace& space = p.space();
    const std::vector<std::vector<std::size_t>>& subsets = family.subsets();

    std::vector<std::vector<double>> targets;
    std::vector<std::vector<std::size_t>> cell_of_idx;  // per subset: index -> marginal cell
    for (const auto& a : subsets) {
        targets.push_back(marginal_raw(space, p.probabilities().weights(), a));
        std::vector<std::size_t> mstride(a.size(), 1);
        for (std::size_t k = a.size(); k-- > 1;)
            mstride[k - 1] = mstride[k] * space.cardinality(a[k]);
        std::vector<std::size_t> cells(space.total());
        for (std::size_t idx = 0; idx < space.total(); ++idx) {
            std::size_t cell = 0;
            for (std::size_t k = 0; k < a.size(); ++k)
                cell += space.digit(idx, a[k]) * mstride[k];
            cells[idx] = cell;
        }
        cell_of_idx.push_back(std::move(cells));
    }

    // start at the uniform distribution, the empty-interaction member of the family
    std::vector<double> hat(space.total(), 1.0 / static_cast<double>(space.total()));

    auto worst_residual = [&]() {
        double worst = 0.0;
        for (std::size_t a = 0; a < subsets.size(); ++a) {
            const std::vector<double> cur = marginal_raw(space, hat, subsets[a]);
            for (std::size_t c = 0; c < cur.size(); ++c)
                worst = std::max(worst, std::abs(cur[c] - targets[a][c]));
        }
        return worst;
    };

    int sweep = 0;
    double residual = worst_residual();
    while (residual > cfg.tolerance && sweep < cfg.max_iterations) {
        ++sweep;
        for (std::size_t a = 0; a < subsets.size(); ++a) {
            const std::vector<double> cur = marginal_raw(space, hat, subsets[a]);
            std::vector<double> ratio(cur.size());
            for (std::size_t c = 0; c < cur.size(); ++c) ratio[c] = targets[a][c] / cur[c];
            for (std::size_t idx = 0; idx < space.total(); ++idx)
                hat[idx] *= ratio[cell_of_idx[a][idx]];
        }
        residual = worst_residual();
    }

    JointDistribution projection(space, ProbabilityVector::renormalized(std::move(hat), 1e-9));
    ProjectionReport report{std::move(projection), 0.0, sweep, residual,
                            residual <= cfg.tolerance};
    report.divergence = kl(p.probabilities(), report.projection.probabilities());
    return report;
}

ProjectionReport complexity_classical(const JointDistribution& p, const MarginalFamily& family,
                                      const OptimizerConfig& cfg) {
    return ipf_project(p, family, cfg);
}

}  // namespace geodiv
