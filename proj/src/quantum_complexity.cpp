#include "geodiv/quantum_complexity.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <string>

namespace geodiv {

namespace {

constexpr std::size_t kMaxSites = 8;

struct PauliAction {
    std::size_t flip_mask = 0;       // XOR mask from X/Y factors
    std::vector<Complex> phase;      // per column j
};

PauliAction action_of(const PauliString& s) {
    const std::size_t n = s.n_sites();
    const std::size_t dim = std::size_t{1} << n;
    PauliAction act;
    act.phase.assign(dim, Complex(1.0, 0.0));
    for (std::size_t site = 0; site < n; ++site) {
        const std::size_t bitpos = n - 1 - site;  // site 0 is the most significant bit
        const std::uint8_t axis = s.axes[site];
        if (axis == 1 || axis == 2) act.flip_mask |= (std::size_t{1} << bitpos);
        if (axis == 1) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            const bool bit = (j >> bitpos) & 1u;
            if (axis == 2) act.phase[j] *= bit ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
            else if (axis == 3) act.phase[j] *= bit ? -1.0 : 1.0;
        }
    }
    return act;
}

std::size_t dim_of(const PauliString& s) { return std::size_t{1} << s.n_sites(); }

struct FreeEnergyPoint {
    double value = 0.0;
    std::vector<double> gradient;     // Tr(sigma T_a) - m_a
    double gradient_norm = 0.0;       // max-abs
    ComplexMatrix sigma;              // Gibbs state of the current theta
    std::vector<double> expectations; // Tr(sigma T_a)
};

ComplexMatrix hamiltonian_of(const std::vector<double>& theta,
                             const std::vector<PauliAction>& actions, std::size_t dim) {
    ComplexMatrix h(dim);
    for (std::size_t a = 0; a < theta.size(); ++a) {
        if (theta[a] == 0.0) continue;
        const PauliAction& act = actions[a];
        for (std::size_t j = 0; j < dim; ++j) h(j ^ act.flip_mask, j) += theta[a] * act.phase[j];
    }
    return h;
}

double sparse_expectation(const ComplexMatrix& rho, const PauliAction& act) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < rho.dim(); ++j) s += act.phase[j] * rho(j, j ^ act.flip_mask);
    return s.real();
}

FreeEnergyPoint evaluate_free_energy(const std::vector<double>& theta,
                                     const std::vector<PauliAction>& actions, std::size_t dim,
                                     const std::vector<double>& targets) {
    FreeEnergyPoint pt;
    const HermitianMatrix h = HermitianMatrix(hamiltonian_of(theta, actions, dim));
    const SpectralDecomposition dec = eig_hermitian(h);
    const double top = dec.eigenvalues.back();
    double z = 0.0;
    for (double lam : dec.eigenvalues) z += std::exp(lam - top);
    pt.value = top + std::log(z);
    for (std::size_t a = 0; a < theta.size(); ++a) pt.value -= theta[a] * targets[a];

    ComplexMatrix core(dim);
    for (std::size_t i = 0; i < dim; ++i) core(i, i) = std::exp(dec.eigenvalues[i] - top) / z;
    pt.sigma = from_eigenbasis(dec, core);

    pt.expectations.resize(theta.size());
    pt.gradient.resize(theta.size());
    for (std::size_t a = 0; a < theta.size(); ++a) {
        pt.expectations[a] = sparse_expectation(pt.sigma, actions[a]);
        pt.gradient[a] = pt.expectations[a] - targets[a];
        pt.gradient_norm = std::max(pt.gradient_norm, std::abs(pt.gradient[a]));
    }
    return pt;
}

}  // namespace

MultiQubitState::MultiQubitState(std::size_t n, DensityMatrix s)
    : n_sites(n), state(std::move(s)) {
    if (n < 1 || n > kMaxSites)
        throw OutOfRangeError("MultiQubitState: need 1 <= n_sites <= 8, got " + std::to_string(n));
    if (state.dim() != (std::size_t{1} << n))
        throw DimensionMismatchError("MultiQubitState: dimension " + std::to_string(state.dim()) +
                                     " is not 2^" + std::to_string(n));
}

int PauliString::weight() const {
    int w = 0;
    for (std::uint8_t a : axes) w += (a != 0);
    return w;
}

std::string PauliString::label() const {
    static const char kNames[] = "IXYZ";
    std::string out;
    for (std::uint8_t a : axes) out.push_back(kNames[a]);
    return out;
}

HermitianMatrix pauli_dense(const PauliString& s) {
    const std::size_t dim = dim_of(s);
    const PauliAction act = action_of(s);
    ComplexMatrix m(dim);
    for (std::size_t j = 0; j < dim; ++j) m(j ^ act.flip_mask, j) = act.phase[j];
    return HermitianMatrix(std::move(m));
}

double pauli_expectation(const DensityMatrix& rho, const PauliString& s) {
    if (rho.dim() != dim_of(s))
        throw DimensionMismatchError("pauli_expectation: state dimension " +
                                     std::to_string(rho.dim()) + " does not match string on " +
                                     std::to_string(s.n_sites()) + " sites");
    return sparse_expectation(rho.mat(), action_of(s));
}

void pauli_accumulate(ComplexMatrix& h, double coeff, const PauliString& s) {
    if (h.dim() != dim_of(s))
        throw DimensionMismatchError("pauli_accumulate: dimension mismatch");
    const PauliAction act = action_of(s);
    for (std::size_t j = 0; j < h.dim(); ++j) h(j ^ act.flip_mask, j) += coeff * act.phase[j];
}

KLocalBasis::KLocalBasis(std::size_t n_sites, std::size_t k) : n_sites_(n_sites), k_(k) {
    if (n_sites < 1 || n_sites > kMaxSites || k < 1 || k > n_sites)
        throw OutOfRangeError("KLocalBasis: need 1 <= k <= n <= 8, got n = " +
                              std::to_string(n_sites) + ", k = " + std::to_string(k));

    // all site subsets of size 1..k, lexicographic, then the 3^|subset|
    // axis assignments per subset
    std::vector<std::size_t> combo;
    auto emit = [&]() {
        std::vector<std::uint8_t> axes(combo.size(), 1);
        while (true) {
            PauliString s;
            s.axes.assign(n_sites_, 0);
            for (std::size_t i = 0; i < combo.size(); ++i) s.axes[combo[i]] = axes[i];
            strings_.push_back(std::move(s));
            std::size_t i = combo.size();
            while (i > 0 && axes[i - 1] == 3) axes[--i] = 1;
            if (i == 0) break;
            ++axes[i - 1];
        }
    };
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start,
                                                               std::size_t remaining) {
        if (remaining == 0) {
            emit();
            return;
        }
        for (std::size_t s = start; s + remaining <= n_sites_; ++s) {
            combo.push_back(s);
            choose(s + 1, remaining - 1);
            combo.pop_back();
        }
    };
    for (std::size_t w = 1; w <= k_; ++w) choose(0, w);
}

KLocalBasis klocal_basis(std::size_t n_sites, std::size_t k) { return KLocalBasis(n_sites, k); }

MultiQubitState gibbs_state(const GibbsParameters& theta, const KLocalBasis& basis) {
    if (theta.theta.size() != basis.size())
        throw DimensionMismatchError("gibbs_state: " + std::to_string(theta.theta.size()) +
                                     " coefficients for " + std::to_string(basis.size()) +
                                     " operators");
    const std::size_t dim = std::size_t{1} << basis.n_sites();
    std::vector<PauliAction> actions;
    actions.reserve(basis.size());
    for (const PauliString& s : basis.strings()) actions.push_back(action_of(s));

    const HermitianMatrix h = HermitianMatrix(hamiltonian_of(theta.theta, actions, dim));
    const SpectralDecomposition dec = eig_hermitian(h);
    const double top = dec.eigenvalues.back();
    double z = 0.0;
    for (double lam : dec.eigenvalues) z += std::exp(lam - top);
    ComplexMatrix core(dim);
    for (std::size_t i = 0; i < dim; ++i) core(i, i) = std::exp(dec.eigenvalues[i] - top) / z;
    return MultiQubitState(basis.n_sites(),
                           DensityMatrix(HermitianMatrix(from_eigenbasis(dec, core))));
}

QuantumProjectionReport maxent_project_quantum(const MultiQubitState& rho, std::size_t k,
                                               const OptimizerConfig& cfg) {
    const KLocalBasis basis(rho.n_sites, k);
    const std::size_t dim = rho.state.dim();
    if (!(cfg.tolerance > 0.0))
        throw DomainError("maxent_project_quantum: tolerance must be positive");

    std::vector<PauliAction> actions;
    actions.reserve(basis.size());
    for (const PauliString& s : basis.strings()) actions.push_back(action_of(s));

    std::vector<double> targets(basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a)
        targets[a] = sparse_expectation(rho.state.mat(), actions[a]);

    std::vector<double> theta(basis.size(), 0.0);
    FreeEnergyPoint cur = evaluate_free_energy(theta, actions, dim, targets);

    int iterations = 0;
    double step = 1.0;
    while (cur.gradient_norm > cfg.tolerance && iterations < cfg.max_iterations) {
        ++iterations;
        // descent direction preconditioned by Pauli variances 1 - <T_a>^2
        std::vector<double> dir(theta.size());
        double slope = 0.0;
        for (std::size_t a = 0; a < theta.size(); ++a) {
            const double var = std::max(1.0 - cur.expectations[a] * cur.expectations[a], 1e-2);
            dir[a] = -cur.gradient[a] / var;
            slope += cur.gradient[a] * dir[a];
        }

        double alpha = std::min(2.0 * step, 1.0);
        bool accepted = false;
        while (alpha >= 1e-14) {
            std::vector<double> cand(theta.size());
            for (std::size_t a = 0; a < theta.size(); ++a) cand[a] = theta[a] + alpha * dir[a];
            FreeEnergyPoint ev = evaluate_free_energy(cand, actions, dim, targets);
            if (ev.value <= cur.value + 1e-4 * alpha * slope) {
                theta = std::move(cand);
                cur = std::move(ev);
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) break;  // stalled at the numerical floor of F
        step = alpha;
    }

    const DensityMatrix sigma_hat = DensityMatrix(HermitianMatrix(cur.sigma));
    QuantumProjectionReport report{MultiQubitState(rho.n_sites, sigma_hat),
                                   GibbsParameters{std::move(theta)},
                                   quantum_relative_entropy(rho.state, sigma_hat),
                                   iterations,
                                   cur.gradient_norm,
                                   cur.gradient_norm <= cfg.tolerance};
    return report;
}

QuantumProjectionReport many_party_correlation(const MultiQubitState& rho, std::size_t k,
                                               const OptimizerConfig& cfg) {
    return maxent_project_quantum(rho, k, cfg);
}

double quantum_multi_information(const MultiQubitState& rho) {
    const std::vector<std::size_t> site_dims(rho.n_sites, 2);
    double s = -von_neumann_entropy(rho.state);
    for (std::size_t site = 0; site < rho.n_sites; ++site)
        s += von_neumann_entropy(partial_trace(rho.state, site_dims, {site}));
    return s;
}

}  // namespace geodiv
