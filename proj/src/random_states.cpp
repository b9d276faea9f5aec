#include "geodiv/random_states.hpp"

#include <cmath>
#include <vector>

namespace geodiv {

ProbabilityVector random_simplex(std::size_t n, std::mt19937_64& rng, double spread) {
    std::uniform_real_distribution<double> uni(-spread, spread);
    std::vector<double> w(n);
    double sum = 0.0;
    for (double& x : w) {
        x = std::exp(uni(rng));
        sum += x;
    }
    for (double& x : w) x /= sum;
    return ProbabilityVector::renormalized(std::move(w), 1e-9);
}

DensityMatrix random_density(std::size_t dim, std::mt19937_64& rng, double floor) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    ComplexMatrix w = g * g.adjoint();
    w *= Complex(1.0 / w.trace().real());
    w += Complex(floor) * ComplexMatrix::identity(dim);
    w *= Complex(1.0 / (1.0 + floor * static_cast<double>(dim)));
    return DensityMatrix(HermitianMatrix(std::move(w)));
}

HermitianMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    ComplexMatrix h = g + g.adjoint();
    h *= Complex(0.5 * scale);
    return HermitianMatrix(std::move(h));
}

MTangent random_m_tangent(std::size_t dim, std::mt19937_64& rng, double scale) {
    HermitianMatrix h = random_hermitian(dim, rng, scale);
    ComplexMatrix m = h.mat();
    const Complex shift = m.trace() / static_cast<double>(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) -= shift;
    return MTangent(HermitianMatrix(std::move(m)));
}

MultiQubitState random_multiqubit(std::size_t n_sites, std::mt19937_64& rng, double floor) {
    return MultiQubitState(n_sites, random_density(std::size_t{1} << n_sites, rng, floor));
}

}  // namespace geodiv
