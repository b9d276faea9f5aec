#pragma once

#include <cstdint>
#include <random>

#include "geodiv/quantum.hpp"
#include "geodiv/quantum_complexity.hpp"
#include "geodiv/simplex.hpp"

namespace geodiv {

/// Simplex point from normalized exponentials of uniform variates on
/// [-spread, spread]; spread bounds the weight ratios by exp(2 spread).
ProbabilityVector random_simplex(std::size_t n, std::mt19937_64& rng, double spread = 1.5);

/// G G^dagger / Tr(G G^dagger) + floor * I, renormalized; G has standard
/// normal complex entries. Full rank, well inside the manifold.
DensityMatrix random_density(std::size_t dim, std::mt19937_64& rng, double floor = 1e-4);

HermitianMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng, double scale = 1.0);

MTangent random_m_tangent(std::size_t dim, std::mt19937_64& rng, double scale = 1.0);

MultiQubitState random_multiqubit(std::size_t n_sites, std::mt19937_64& rng, double floor = 1e-4);

}  // namespace geodiv
