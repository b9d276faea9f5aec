#pragma once

#include <cstddef>
#include <vector>

#include "geodiv/hermitian.hpp"
#include "geodiv/quadrature.hpp"
#include "geodiv/simplex.hpp"

namespace geodiv {

/// Strictly positive unit-trace Hermitian matrix. Admission requires all
/// eigenvalues above 1e-12 and trace 1 within 1e-10; states closer to the
/// boundary are rejected (log rho blows up there).
class DensityMatrix {
public:
    explicit DensityMatrix(HermitianMatrix m);

    /// Admits |trace - 1| <= admission_tol, then divides by the trace.
    static DensityMatrix renormalized(HermitianMatrix m, double admission_tol = 1e-9);
    static DensityMatrix diagonal(const ProbabilityVector& p);

    std::size_t dim() const { return mat_.dim(); }
    const HermitianMatrix& hermitian() const { return mat_; }
    const ComplexMatrix& mat() const { return mat_.mat(); }

private:
    HermitianMatrix mat_;
};

/// Mixture representation of a tangent vector: traceless Hermitian.
class MTangent {
public:
    explicit MTangent(HermitianMatrix m);

    std::size_t dim() const { return mat_.dim(); }
    const HermitianMatrix& hermitian() const { return mat_; }
    const ComplexMatrix& mat() const { return mat_.mat(); }

private:
    HermitianMatrix mat_;
};

/// Exponential representation of a tangent vector at a basepoint:
/// Hermitian with Tr(rho X) = 0.
class ETangent {
public:
    ETangent(HermitianMatrix m, DensityMatrix basepoint);

    std::size_t dim() const { return mat_.dim(); }
    const HermitianMatrix& hermitian() const { return mat_; }
    const ComplexMatrix& mat() const { return mat_.mat(); }
    const DensityMatrix& basepoint() const { return basepoint_; }

private:
    HermitianMatrix mat_;
    DensityMatrix basepoint_;
};

/// Bogoliubov inner product <A,B>_rho = integral over s of Tr(rho^s A rho^(1-s) B),
/// evaluated in closed form in the eigenbasis of rho through the logarithmic
/// mean of eigenvalue pairs.
double bogoliubov_inner(const DensityMatrix& rho, const HermitianMatrix& a,
                        const HermitianMatrix& b);

/// The Hermitian X with integral of rho^s X rho^(1-s) equal to V; the inverse
/// of the Bogoliubov pairing, entrywise division by the logarithmic mean.
ETangent e_representation(const DensityMatrix& rho, const MTangent& v);

/// Quantum Fisher metric Tr(D1 e_representation(rho, D2)).
double quantum_fisher(const DensityMatrix& rho, const MTangent& d1, const MTangent& d2);

/// Tr rho1 (log rho1 - log rho2), in nats.
double quantum_relative_entropy(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Mixture geodesic (1-t) rho1 + t rho2.
DensityMatrix m_geodesic_q(const DensityMatrix& rho1, const DensityMatrix& rho2, double t);

/// Exponential geodesic exp(H + tA)/Tr exp(H + tA), H = log rho1,
/// A = log rho2 - log rho1.
DensityMatrix e_geodesic_q(const DensityMatrix& rho1, const DensityMatrix& rho2, double t);

/// Canonical divergence: integral of t Tr(gamma_m' dlog_frechet(gamma_m, gamma_m'))
/// along the mixture geodesic. Coincides with quantum_relative_entropy(rho1, rho2).
double canonical_divergence_quantum(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                    const QuadratureConfig& cfg = {});

/// Dual divergence along the exponential geodesic: integral of
/// t * d/dt <A>_t, the Bogoliubov variance of A = log rho2 - log rho1 under
/// gamma_e(t). Coincides with quantum_relative_entropy(rho2, rho1).
double dual_divergence_quantum(const DensityMatrix& rho1, const DensityMatrix& rho2,
                               const QuadratureConfig& cfg = {});

/// Von Neumann entropy -Tr(rho log rho) = Shannon entropy of the spectrum.
double von_neumann_entropy(const DensityMatrix& rho);

/// Reduced state on the kept sites: the unique state with
/// Tr(sigma a) = Tr(rho (a tensor I)) for all observables a on the kept
/// factors. Sites are 0-based, site 0 the most significant factor.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& site_dims,
                            const std::vector<std::size_t>& keep);

}  // namespace geodiv
