#include "geodiv/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace geodiv {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* where) {
    if (a != b) {
        throw DimensionMismatchError(std::string(where) + ": dimensions " + std::to_string(a) +
                                     " and " + std::to_string(b) + " differ");
    }
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : entries_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& z : entries_) m = std::max(m, std::abs(z));
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(dim_, rhs.dim_, "ComplexMatrix::operator+=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_dim(dim_, rhs.dim_, "ComplexMatrix::operator-=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (Complex& z : entries_) z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "ComplexMatrix::operator*");
    const std::size_t n = a.dim();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    const double scale = std::max(1.0, a.max_abs());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i; j < a.dim(); ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol * scale) return false;
    return true;
}

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "real_trace_product");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) s += (a(i, j) * b(j, i)).real();
    return s;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m, double tol) : mat_(std::move(m)) {
    if (mat_.dim() == 0) throw DomainError("HermitianMatrix: dimension must be >= 1");
    if (!is_hermitian(mat_, tol)) {
        throw NotHermitianError("HermitianMatrix: input is not Hermitian within tolerance " +
                                std::to_string(tol));
    }
    for (std::size_t i = 0; i < mat_.dim(); ++i) {
        mat_(i, i) = Complex(mat_(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < mat_.dim(); ++j) {
            const Complex v = 0.5 * (mat_(i, j) + std::conj(mat_(j, i)));
            mat_(i, j) = v;
            mat_(j, i) = std::conj(v);
        }
    }
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return HermitianMatrix(std::move(m));
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) {
    return HermitianMatrix(ComplexMatrix(dim));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.mat() + b.mat());
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.mat() - b.mat());
}

HermitianMatrix operator*(double s, const HermitianMatrix& m) {
    return HermitianMatrix(Complex(s) * m.mat());
}

SpectralDecomposition eig_hermitian(const HermitianMatrix& h) {
    const std::size_t n = h.dim();
    ComplexMatrix a = h.mat();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double fro = std::max(a.frobenius_norm(), 1e-300);
    const double target = 1e-14 * fro;

    auto off_norm = [&a, n]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
        return std::sqrt(s);
    };

    const int max_sweeps = 100;
    int sweep = 0;
    while (off_norm() > target) {
        if (++sweep > max_sweeps)
            throw std::runtime_error("eig_hermitian: Jacobi sweeps did not converge");
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex g = a(p, q);
                const double ag = std::abs(g);
                if (ag <= 1e-300) continue;

                // 2x2 block [[alpha, g],[conj(g), beta]]; zero g with the
                // unitary R = [[c, s*u],[-s*conj(u), c]], u = g/|g|.
                const double alpha = a(p, p).real();
                const double beta = a(q, q).real();
                const double tau = (beta - alpha) / (2.0 * ag);
                const double sgn = (tau >= 0.0) ? 1.0 : -1.0;
                const double t = sgn / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex u = g / ag;
                const Complex su = s * u;
                const Complex suc = s * std::conj(u);

                // columns: col_p <- c*col_p - s*conj(u)*col_q ; col_q <- s*u*col_p + c*col_q
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp - suc * arq;
                    a(r, q) = su * arp + c * arq;
                }
                // rows: row_p <- c*row_p - s*u*row_q ; row_q <- s*conj(u)*row_p + c*row_q
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex apr = a(p, r), aqr = a(q, r);
                    a(p, r) = c * apr - su * aqr;
                    a(q, r) = suc * apr + c * aqr;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);

                for (std::size_t r = 0; r < n; ++r) {
                    const Complex vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = c * vrp - suc * vrq;
                    v(r, q) = su * vrp + c * vrq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    SpectralDecomposition dec;
    dec.eigenvalues.resize(n);
    dec.eigenvectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        dec.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) dec.eigenvectors(r, k) = v(r, order[k]);
    }
    return dec;
}

ComplexMatrix from_eigenbasis(const SpectralDecomposition& dec, const ComplexMatrix& core) {
    const ComplexMatrix& u = dec.eigenvectors;
    const std::size_t n = u.dim();
    ComplexMatrix tmp(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            Complex s = 0.0;
            for (std::size_t l = 0; l < n; ++l) s += u(i, l) * core(l, k);
            tmp(i, k) = s;
        }
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += tmp(i, k) * std::conj(u(j, k));
            out(i, j) = s;
        }
    return out;
}

ComplexMatrix to_eigenbasis(const SpectralDecomposition& dec, const ComplexMatrix& m) {
    const ComplexMatrix& u = dec.eigenvectors;
    require_same_dim(u.dim(), m.dim(), "to_eigenbasis");
    const std::size_t n = u.dim();
    ComplexMatrix tmp(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            Complex s = 0.0;
            for (std::size_t l = 0; l < n; ++l) s += std::conj(u(l, i)) * m(l, k);
            tmp(i, k) = s;
        }
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += tmp(i, k) * u(k, j);
            out(i, j) = s;
        }
    return out;
}

namespace {

// First divided difference of log with the analytic limit near coincidence.
double dlog_kernel(double x, double y) {
    if (std::abs(x - y) <= 1e-8 * std::max({std::abs(x), std::abs(y), 1.0})) return 2.0 / (x + y);
    return (std::log(x) - std::log(y)) / (x - y);
}

}  // namespace

HermitianMatrix spectral_fn(const HermitianMatrix& h, const std::function<double(double)>& f) {
    const SpectralDecomposition dec = eig_hermitian(h);
    const std::size_t n = h.dim();
    ComplexMatrix core(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = f(dec.eigenvalues[i]);
        if (!std::isfinite(w)) {
            throw DomainError("spectral_fn: function undefined at eigenvalue " +
                              std::to_string(dec.eigenvalues[i]));
        }
        core(i, i) = w;
    }
    return HermitianMatrix(from_eigenbasis(dec, core));
}

HermitianMatrix matrix_exp(const HermitianMatrix& h) {
    return spectral_fn(h, [](double x) { return std::exp(x); });
}

HermitianMatrix matrix_log(const HermitianMatrix& h) {
    return spectral_fn(h, [](double x) { return std::log(x); });
}

HermitianMatrix dlog_frechet(const HermitianMatrix& p, const HermitianMatrix& v) {
    require_same_dim(p.dim(), v.dim(), "dlog_frechet");
    const SpectralDecomposition dec = eig_hermitian(p);
    if (dec.eigenvalues.front() <= 0.0) {
        throw NotPositiveError("dlog_frechet: matrix has eigenvalue " +
                               std::to_string(dec.eigenvalues.front()) + " <= 0");
    }
    const std::size_t n = p.dim();
    ComplexMatrix vt = to_eigenbasis(dec, v.mat());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            vt(i, j) *= dlog_kernel(dec.eigenvalues[i], dec.eigenvalues[j]);
    return HermitianMatrix(from_eigenbasis(dec, vt));
}

double log_mean_kernel(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        throw DomainError("log_mean_kernel: arguments must be positive");
    const double m = 0.5 * (x + y);
    const double u = (x - y) / (x + y);
    if (std::abs(u) > 1e-3) return (x - y) / (std::log(x) - std::log(y));
    // L = m / (artanh(u)/u); truncation error ~ u^8
    const double u2 = u * u;
    return m / (1.0 + u2 * (1.0 / 3.0 + u2 * (1.0 / 5.0 + u2 / 7.0)));
}

}  // namespace geodiv
