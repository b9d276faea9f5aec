#include "geodiv/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace geodiv {

namespace {

constexpr double kEigenvalueFloor = 1e-12;

void require_same_dim(std::size_t a, std::size_t b, const char* where) {
    if (a != b) {
        throw DimensionMismatchError(std::string(where) + ": dimensions " + std::to_string(a) +
                                     " and " + std::to_string(b) + " differ");
    }
}

void require_unit_interval(double t, const char* where) {
    if (!(t >= 0.0 && t <= 1.0))
        throw DomainError(std::string(where) + ": t = " + std::to_string(t) + " outside [0, 1]");
}

void check_spectrum_positive(const SpectralDecomposition& dec, const char* where) {
    if (dec.eigenvalues.front() <= kEigenvalueFloor) {
        throw NotPositiveError(std::string(where) + ": eigenvalue " +
                               std::to_string(dec.eigenvalues.front()) +
                               " at or below floor 1e-12");
    }
}

// sum_ij L(lam_i, lam_j) A~_ij B~_ji with A~, B~ already in the eigenbasis.
double bogoliubov_kernel_sum(const std::vector<double>& lam, const ComplexMatrix& at,
                             const ComplexMatrix& bt) {
    const std::size_t n = lam.size();
    Complex s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            s += log_mean_kernel(lam[i], lam[j]) * at(i, j) * bt(j, i);
    return s.real();
}

}  // namespace

DensityMatrix::DensityMatrix(HermitianMatrix m) : mat_(std::move(m)) {
    if (std::abs(mat_.real_trace() - 1.0) > 1e-10)
        throw DomainError("DensityMatrix: trace " + std::to_string(mat_.real_trace()) +
                          " differs from 1");
    check_spectrum_positive(eig_hermitian(mat_), "DensityMatrix");
}

DensityMatrix DensityMatrix::renormalized(HermitianMatrix m, double admission_tol) {
    const double tr = m.real_trace();
    if (std::abs(tr - 1.0) > admission_tol)
        throw DomainError("DensityMatrix: trace " + std::to_string(tr) +
                          " outside admission tolerance");
    return DensityMatrix(HermitianMatrix(Complex(1.0 / tr) * m.mat()));
}

DensityMatrix DensityMatrix::diagonal(const ProbabilityVector& p) {
    return DensityMatrix(HermitianMatrix::diagonal(p.weights()));
}

MTangent::MTangent(HermitianMatrix m) : mat_(std::move(m)) {
    if (std::abs(mat_.real_trace()) > 1e-10)
        throw DomainError("MTangent: trace " + std::to_string(mat_.real_trace()) +
                          " is not zero");
}

ETangent::ETangent(HermitianMatrix m, DensityMatrix basepoint)
    : mat_(std::move(m)), basepoint_(std::move(basepoint)) {
    require_same_dim(mat_.dim(), basepoint_.dim(), "ETangent");
    const double centered = real_trace_product(basepoint_.mat(), mat_.mat());
    if (std::abs(centered) > 1e-9)
        throw DomainError("ETangent: Tr(rho X) = " + std::to_string(centered) + " is not zero");
}

double bogoliubov_inner(const DensityMatrix& rho, const HermitianMatrix& a,
                        const HermitianMatrix& b) {
    require_same_dim(rho.dim(), a.dim(), "bogoliubov_inner");
    require_same_dim(rho.dim(), b.dim(), "bogoliubov_inner");
    const SpectralDecomposition dec = eig_hermitian(rho.hermitian());
    check_spectrum_positive(dec, "bogoliubov_inner");
    const ComplexMatrix at = to_eigenbasis(dec, a.mat());
    const ComplexMatrix bt = to_eigenbasis(dec, b.mat());
    return bogoliubov_kernel_sum(dec.eigenvalues, at, bt);
}

ETangent e_representation(const DensityMatrix& rho, const MTangent& v) {
    require_same_dim(rho.dim(), v.dim(), "e_representation");
    const SpectralDecomposition dec = eig_hermitian(rho.hermitian());
    check_spectrum_positive(dec, "e_representation");
    ComplexMatrix vt = to_eigenbasis(dec, v.mat());
    const std::size_t n = rho.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            vt(i, j) /= log_mean_kernel(dec.eigenvalues[i], dec.eigenvalues[j]);
    return ETangent(HermitianMatrix(from_eigenbasis(dec, vt)), rho);
}

double quantum_fisher(const DensityMatrix& rho, const MTangent& d1, const MTangent& d2) {
    require_same_dim(rho.dim(), d1.dim(), "quantum_fisher");
    const ETangent e2 = e_representation(rho, d2);
    return real_trace_product(d1.mat(), e2.mat());
}

double quantum_relative_entropy(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    require_same_dim(rho1.dim(), rho2.dim(), "quantum_relative_entropy");
    const SpectralDecomposition dec = eig_hermitian(rho1.hermitian());
    check_spectrum_positive(dec, "quantum_relative_entropy");
    double tr_rho1_log_rho1 = 0.0;
    for (double lam : dec.eigenvalues) tr_rho1_log_rho1 += lam * std::log(lam);
    const HermitianMatrix log_rho2 = matrix_log(rho2.hermitian());
    return tr_rho1_log_rho1 - real_trace_product(rho1.mat(), log_rho2.mat());
}

DensityMatrix m_geodesic_q(const DensityMatrix& rho1, const DensityMatrix& rho2, double t) {
    require_same_dim(rho1.dim(), rho2.dim(), "m_geodesic_q");
    require_unit_interval(t, "m_geodesic_q");
    if (t == 0.0) return rho1;
    if (t == 1.0) return rho2;
    return DensityMatrix(
        HermitianMatrix(Complex(1.0 - t) * rho1.mat() + Complex(t) * rho2.mat()));
}

DensityMatrix e_geodesic_q(const DensityMatrix& rho1, const DensityMatrix& rho2, double t) {
    require_same_dim(rho1.dim(), rho2.dim(), "e_geodesic_q");
    require_unit_interval(t, "e_geodesic_q");
    if (t == 0.0) return rho1;
    if (t == 1.0) return rho2;
    const HermitianMatrix h = matrix_log(rho1.hermitian());
    const HermitianMatrix a = matrix_log(rho2.hermitian()) - h;
    const HermitianMatrix m = HermitianMatrix(h.mat() + Complex(t) * a.mat());
    const SpectralDecomposition dec = eig_hermitian(m);
    // shift by the top eigenvalue before exponentiating, then normalize
    const double top = dec.eigenvalues.back();
    std::vector<double> w(dec.eigenvalues.size());
    double z = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::exp(dec.eigenvalues[i] - top);
        z += w[i];
    }
    ComplexMatrix core(m.dim());
    for (std::size_t i = 0; i < w.size(); ++i) core(i, i) = w[i] / z;
    return DensityMatrix(HermitianMatrix(from_eigenbasis(dec, core)));
}

double canonical_divergence_quantum(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                    const QuadratureConfig& cfg) {
    require_same_dim(rho1.dim(), rho2.dim(), "canonical_divergence_quantum");
    const ComplexMatrix delta = rho2.mat() - rho1.mat();
    const HermitianMatrix delta_h = HermitianMatrix(delta);
    auto speed = [&rho1, &delta, &delta_h](double t) {
        const HermitianMatrix gamma = HermitianMatrix(rho1.mat() + Complex(t) * delta);
        const HermitianMatrix dlog = dlog_frechet(gamma, delta_h);
        return real_trace_product(delta, dlog.mat());
    };
    return integrate_t_weighted(speed, cfg);
}

double dual_divergence_quantum(const DensityMatrix& rho1, const DensityMatrix& rho2,
                               const QuadratureConfig& cfg) {
    require_same_dim(rho1.dim(), rho2.dim(), "dual_divergence_quantum");
    const HermitianMatrix h = matrix_log(rho1.hermitian());
    const HermitianMatrix a = matrix_log(rho2.hermitian()) - h;
    // speed = d/dt <A>_t, the Bogoliubov variance of A under gamma_e(t)
    auto speed = [&h, &a](double t) {
        const HermitianMatrix m = HermitianMatrix(h.mat() + Complex(t) * a.mat());
        const SpectralDecomposition dec = eig_hermitian(m);
        const double top = dec.eigenvalues.back();
        std::vector<double> g(dec.eigenvalues.size());
        double z = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            g[i] = std::exp(dec.eigenvalues[i] - top);
            z += g[i];
        }
        for (double& gi : g) gi /= z;
        const ComplexMatrix at = to_eigenbasis(dec, a.mat());
        double mean = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) mean += g[i] * at(i, i).real();
        return bogoliubov_kernel_sum(g, at, at) - mean * mean;
    };
    return integrate_t_weighted(speed, cfg);
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const SpectralDecomposition dec = eig_hermitian(rho.hermitian());
    check_spectrum_positive(dec, "von_neumann_entropy");
    double s = 0.0;
    for (double lam : dec.eigenvalues) s -= lam * std::log(lam);
    return s;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& site_dims,
                            const std::vector<std::size_t>& keep) {
    const std::size_t n_sites = site_dims.size();
    std::size_t total = 1;
    for (std::size_t d : site_dims) {
        if (d < 1) throw DimensionMismatchError("partial_trace: site dimension must be >= 1");
        total *= d;
    }
    if (total != rho.dim())
        throw DimensionMismatchError("partial_trace: product of site dimensions " +
                                     std::to_string(total) + " differs from state dimension " +
                                     std::to_string(rho.dim()));
    if (keep.empty()) throw EmptyKeepSetError("partial_trace: keep set is empty");

    std::vector<std::size_t> kept = keep;
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.back() >= n_sites)
        throw DimensionMismatchError("partial_trace: site index " + std::to_string(kept.back()) +
                                     " out of range");

    // site-major strides: site 0 is the most significant factor
    std::vector<std::size_t> stride(n_sites, 1);
    for (std::size_t s = n_sites; s-- > 1;) stride[s - 1] = stride[s] * site_dims[s];

    std::vector<std::size_t> traced;
    for (std::size_t s = 0; s < n_sites; ++s)
        if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);

    auto offsets_for = [&](const std::vector<std::size_t>& sites) {
        std::size_t count = 1;
        for (std::size_t s : sites) count *= site_dims[s];
        std::vector<std::size_t> offs(count, 0);
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::size_t rem = idx;
            for (std::size_t k = sites.size(); k-- > 0;) {
                const std::size_t s = sites[k];
                offs[idx] += (rem % site_dims[s]) * stride[s];
                rem /= site_dims[s];
            }
        }
        return offs;
    };

    const std::vector<std::size_t> kept_off = offsets_for(kept);
    const std::vector<std::size_t> traced_off = offsets_for(traced);

    ComplexMatrix out(kept_off.size());
    for (std::size_t a = 0; a < kept_off.size(); ++a)
        for (std::size_t b = 0; b < kept_off.size(); ++b) {
            Complex s = 0.0;
            for (std::size_t m : traced_off) s += rho.mat()(kept_off[a] + m, kept_off[b] + m);
            out(a, b) = s;
        }
    return DensityMatrix(HermitianMatrix(std::move(out)));
}

}  // namespace geodiv
