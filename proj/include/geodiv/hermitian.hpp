#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "geodiv/errors.hpp"

namespace geodiv {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex s);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& a, double tol = 1e-12);

/// Re Tr(A B) without forming the product.
double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hermitian matrix. Construction checks A = A^dagger within tol (scaled by
/// max(1, max|entry|)) and then stores (A + A^dagger)/2 with a real diagonal,
/// which removes round-off drift from file I/O and matrix products.
class HermitianMatrix {
public:
    explicit HermitianMatrix(ComplexMatrix m, double tol = 1e-12);

    static HermitianMatrix diagonal(const std::vector<double>& d);
    static HermitianMatrix zero(std::size_t dim);

    std::size_t dim() const { return mat_.dim(); }
    const ComplexMatrix& mat() const { return mat_; }
    double real_trace() const { return mat_.trace().real(); }

private:
    ComplexMatrix mat_;
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, const HermitianMatrix& m);

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // unitary; k-th column pairs with eigenvalues[k]
};

/// Cyclic complex Jacobi diagonalization. Sweeps until the off-diagonal
/// Frobenius norm drops below 1e-14 * ||H||_F.
SpectralDecomposition eig_hermitian(const HermitianMatrix& h);

/// U^dagger M U with U the decomposition's eigenvector matrix.
ComplexMatrix to_eigenbasis(const SpectralDecomposition& dec, const ComplexMatrix& m);

/// U core U^dagger.
ComplexMatrix from_eigenbasis(const SpectralDecomposition& dec, const ComplexMatrix& core);

/// U f(diag) U^dagger. Throws DomainError if f is undefined (non-finite) at
/// some eigenvalue, e.g. log of a non-positive matrix.
HermitianMatrix spectral_fn(const HermitianMatrix& h, const std::function<double(double)>& f);

HermitianMatrix matrix_exp(const HermitianMatrix& h);
HermitianMatrix matrix_log(const HermitianMatrix& h);

/// Frechet derivative of the matrix logarithm at positive definite P along V:
/// in the eigenbasis of P the entries are V~_ij * k(lam_i, lam_j) with k the
/// first divided difference of log (Daleckii-Krein), k(x,x) = 1/x.
HermitianMatrix dlog_frechet(const HermitianMatrix& p, const HermitianMatrix& v);

/// Logarithmic mean L(x,y) = (x - y)/(log x - log y), L(x,x) = x; equals
/// the integral of x^s y^(1-s) over s in [0,1]. Switches to a series around
/// x = y to avoid cancellation.
double log_mean_kernel(double x, double y);

}  // namespace geodiv
