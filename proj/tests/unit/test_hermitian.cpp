#include "doctest.h"

#include <cmath>
#include <random>

#include "geodiv/hermitian.hpp"
#include "geodiv/random_states.hpp"

using namespace geodiv;

namespace {

double reconstruction_error(const HermitianMatrix& h, const SpectralDecomposition& dec) {
    ComplexMatrix core(h.dim());
    for (std::size_t i = 0; i < h.dim(); ++i) core(i, i) = dec.eigenvalues[i];
    const ComplexMatrix rebuilt = from_eigenbasis(dec, core);
    return (rebuilt - h.mat()).frobenius_norm() / std::max(h.mat().frobenius_norm(), 1e-300);
}

double unitarity_error(const ComplexMatrix& u) {
    return (u.adjoint() * u - ComplexMatrix::identity(u.dim())).max_abs();
}

}  // namespace

TEST_CASE("eig_hermitian on diagonal input permutes identity columns") {
    const auto dec = eig_hermitian(HermitianMatrix::diagonal({2.0, 1.0}));
    CHECK(dec.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dec.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
    // ascending sort swaps the columns of the identity
    CHECK(std::abs(dec.eigenvectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(dec.eigenvectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian on the identity") {
    const auto dec = eig_hermitian(HermitianMatrix::diagonal({1.0, 1.0, 1.0}));
    for (double lam : dec.eigenvalues) CHECK(lam == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eig_hermitian on Pauli X") {
    ComplexMatrix x(2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    const auto dec = eig_hermitian(HermitianMatrix(x));
    CHECK(dec.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(dec.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    // eigenvectors (1, -1)/sqrt(2) and (1, 1)/sqrt(2) up to phase
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex overlap_minus = inv_sqrt2 * (dec.eigenvectors(0, 0) - dec.eigenvectors(1, 0));
    const Complex overlap_plus = inv_sqrt2 * (dec.eigenvectors(0, 1) + dec.eigenvectors(1, 1));
    CHECK(std::abs(overlap_minus) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(overlap_plus) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reconstruction and unitarity on random Hermitian matrices") {
    std::mt19937_64 rng(81);
    for (std::size_t dim : {2, 5, 9, 16}) {
        const HermitianMatrix h = random_hermitian(dim, rng);
        const auto dec = eig_hermitian(h);
        CHECK(reconstruction_error(h, dec) <= 1e-10);
        CHECK(unitarity_error(dec.eigenvectors) <= 1e-10);
        for (std::size_t i = 1; i < dim; ++i)
            CHECK(dec.eigenvalues[i - 1] <= dec.eigenvalues[i]);
    }
}

TEST_CASE("non-Hermitian input is rejected") {
    ComplexMatrix m(2);
    m(0, 1) = Complex(1.0, 0.5);
    m(1, 0) = Complex(1.0, 0.5);  // should be the conjugate
    CHECK_THROWS_AS(HermitianMatrix{m}, NotHermitianError);
}

TEST_CASE("spectral_fn diagonal log and exp of zero") {
    const HermitianMatrix h = HermitianMatrix::diagonal({std::exp(1.0), std::exp(2.0)});
    const HermitianMatrix lg = matrix_log(h);
    CHECK(lg.mat()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lg.mat()(1, 1).real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(lg.mat()(0, 1)) <= 1e-13);

    const HermitianMatrix ez = matrix_exp(HermitianMatrix::zero(2));
    CHECK((ez.mat() - ComplexMatrix::identity(2)).max_abs() <= 1e-14);
}

TEST_CASE("spectral_fn exp then log round trip") {
    std::mt19937_64 rng(82);
    for (int rep = 0; rep < 5; ++rep) {
        HermitianMatrix h = random_hermitian(4, rng);
        const double top = h.mat().max_abs();
        if (top > 2.0) h = (2.0 / top) * h;
        const HermitianMatrix back = matrix_log(matrix_exp(h));
        CHECK((back.mat() - h.mat()).max_abs() <= 1e-9);
    }
}

TEST_CASE("matrix_log of a non-positive matrix raises DomainError") {
    CHECK_THROWS_AS(matrix_log(HermitianMatrix::diagonal({1.0, -0.5})), DomainError);
    CHECK_THROWS_AS(matrix_log(HermitianMatrix::zero(2)), DomainError);
}

TEST_CASE("dlog_frechet divided-difference example") {
    const HermitianMatrix p = HermitianMatrix::diagonal({1.0, 2.0});
    ComplexMatrix v(2);
    v(0, 1) = 1.0;
    v(1, 0) = 1.0;
    const HermitianMatrix d = dlog_frechet(p, HermitianMatrix(v));
    const double ln2 = std::log(2.0);
    CHECK(d.mat()(0, 1).real() == doctest::Approx(ln2).epsilon(1e-13));
    CHECK(d.mat()(1, 0).real() == doctest::Approx(ln2).epsilon(1e-13));
    CHECK(std::abs(d.mat()(0, 0)) <= 1e-14);
    CHECK(std::abs(d.mat()(1, 1)) <= 1e-14);
}

TEST_CASE("dlog_frechet is linear in V and scales as V/c for scalar P") {
    std::mt19937_64 rng(83);
    const HermitianMatrix p = HermitianMatrix::diagonal({0.7, 0.7, 0.7});
    const HermitianMatrix v = random_hermitian(3, rng);
    const HermitianMatrix zero_out = dlog_frechet(p, HermitianMatrix::zero(3));
    CHECK(zero_out.mat().max_abs() <= 1e-14);
    const HermitianMatrix d = dlog_frechet(p, v);
    ComplexMatrix expected = v.mat();
    expected *= Complex(1.0 / 0.7);
    CHECK((d.mat() - expected).max_abs() <= 1e-12);
}

TEST_CASE("dlog_frechet rejects non-positive base points") {
    ComplexMatrix v(2);
    v(0, 1) = 1.0;
    v(1, 0) = 1.0;
    CHECK_THROWS_AS(dlog_frechet(HermitianMatrix::diagonal({1.0, -1.0}), HermitianMatrix(v)),
                    NotPositiveError);
}

TEST_CASE("dlog_frechet matches forward differences at first order") {
    std::mt19937_64 rng(84);
    ComplexMatrix base = random_density(3, rng).mat();
    base += Complex(0.3) * ComplexMatrix::identity(3);
    const HermitianMatrix p = HermitianMatrix(base);
    const HermitianMatrix v = random_hermitian(3, rng);
    const HermitianMatrix d = dlog_frechet(p, v);
    const HermitianMatrix logp = matrix_log(p);

    double errs[2];
    const double hs[2] = {1e-4, 1e-5};
    for (int i = 0; i < 2; ++i) {
        const HermitianMatrix ph = HermitianMatrix(p.mat() + Complex(hs[i]) * v.mat());
        ComplexMatrix fd = matrix_log(ph).mat() - logp.mat();
        fd *= Complex(1.0 / hs[i]);
        errs[i] = (fd - d.mat()).max_abs();
    }
    CHECK(errs[0] / errs[1] == doctest::Approx(10.0).epsilon(0.2));
}

TEST_CASE("log_mean_kernel values") {
    CHECK(log_mean_kernel(0.8, 0.8) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(log_mean_kernel(1.0, std::exp(1.0)) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
    // near-coincident arguments: no catastrophic cancellation
    const double k = log_mean_kernel(2.0, 2.0 + 1e-14);
    CHECK(std::abs(k - 2.0) / 2.0 <= 1e-10);
    CHECK_THROWS_AS(log_mean_kernel(-1.0, 2.0), DomainError);
}

TEST_CASE("log_mean_kernel symmetry and mean bounds") {
    std::mt19937_64 rng(85);
    std::uniform_real_distribution<double> uni(1e-6, 10.0);
    for (int i = 0; i < 200; ++i) {
        double x = uni(rng), y = uni(rng);
        if (i % 4 == 0) y = x * (1.0 + 1e-9);  // exercise the series branch
        const double k = log_mean_kernel(x, y);
        CHECK(k == log_mean_kernel(y, x));  // bitwise symmetric
        CHECK(k >= std::min(x, y));
        CHECK(k <= std::max(x, y));
    }
}

TEST_CASE("dimension mismatches are reported") {
    CHECK_THROWS_AS(HermitianMatrix::diagonal({1.0}).mat() + ComplexMatrix(2),
                    DimensionMismatchError);
    std::mt19937_64 rng(86);
    CHECK_THROWS_AS(dlog_frechet(HermitianMatrix::diagonal({1.0, 2.0}), random_hermitian(3, rng)),
                    DimensionMismatchError);
}
