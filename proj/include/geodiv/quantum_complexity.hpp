#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "geodiv/classical_complexity.hpp"
#include "geodiv/quantum.hpp"

namespace geodiv {

/// State of n qubits; dim = 2^n, site 0 the most significant tensor factor.
struct MultiQubitState {
    std::size_t n_sites;
    DensityMatrix state;

    MultiQubitState(std::size_t n, DensityMatrix s);
};

/// Tensor product of single-site Pauli operators, one axis per site
/// (0 = I, 1 = X, 2 = Y, 3 = Z). Acts as a signed permutation on basis
/// states, so expectations cost O(dim).
struct PauliString {
    std::vector<std::uint8_t> axes;

    std::size_t n_sites() const { return axes.size(); }
    int weight() const;
    std::string label() const;  // e.g. "XIZ"
};

/// Dense 2^n x 2^n matrix of the string.
HermitianMatrix pauli_dense(const PauliString& s);

/// Re Tr(rho T) for the string T; O(dim).
double pauli_expectation(const DensityMatrix& rho, const PauliString& s);

/// H += coeff * T, accumulated column-wise; O(dim).
void pauli_accumulate(ComplexMatrix& h, double coeff, const PauliString& s);

/// Orthogonal basis of all Pauli strings with 1..k non-identity factors,
/// identity string excluded: Tr(T_a T_b) = 2^n delta_ab,
/// count = sum_j C(n,j) 3^j.
class KLocalBasis {
public:
    KLocalBasis(std::size_t n_sites, std::size_t k);

    std::size_t n_sites() const { return n_sites_; }
    std::size_t locality() const { return k_; }
    std::size_t size() const { return strings_.size(); }
    const PauliString& string_at(std::size_t a) const { return strings_[a]; }
    const std::vector<PauliString>& strings() const { return strings_; }
    HermitianMatrix dense_operator(std::size_t a) const { return pauli_dense(strings_[a]); }

private:
    std::size_t n_sites_;
    std::size_t k_;
    std::vector<PauliString> strings_;
};

KLocalBasis klocal_basis(std::size_t n_sites, std::size_t k);

struct GibbsParameters {
    std::vector<double> theta;  // one coefficient per basis operator
};

/// exp(H)/Tr exp(H) with H = sum_a theta_a T_a; the top eigenvalue is
/// subtracted before exponentiating to guard against overflow.
MultiQubitState gibbs_state(const GibbsParameters& theta, const KLocalBasis& basis);

struct QuantumProjectionReport {
    MultiQubitState sigma_hat;
    GibbsParameters theta;
    double divergence = 0.0;  // nats
    int iterations = 0;
    double gradient_residual = 0.0;
    bool converged = false;
};

/// Minimizes the free energy F(theta) = log Tr exp(H(theta)) - theta . m over
/// the k-local Gibbs family, m_a = Tr(rho T_a), by gradient descent with
/// backtracking line search and diagonal preconditioning by operator
/// variances. The minimizer matches all k-local expectations of rho.
QuantumProjectionReport maxent_project_quantum(const MultiQubitState& rho, std::size_t k,
                                               const OptimizerConfig& cfg = {1e-7, 20000});

/// Many-party correlation Q(rho, E_k): quantum relative entropy from rho to
/// its max-entropy projection onto the k-local Gibbs family.
QuantumProjectionReport many_party_correlation(const MultiQubitState& rho, std::size_t k,
                                               const OptimizerConfig& cfg = {1e-7, 20000});

/// sum_i S(rho_i) - S(rho) over single-site reductions; equals Q(rho, E_1).
double quantum_multi_information(const MultiQubitState& rho);

}  // namespace geodiv
