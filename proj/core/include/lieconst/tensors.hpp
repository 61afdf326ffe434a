#pragma once

#include <cstddef>

#include "lieconst/geometry.hpp"
#include "lieconst/sparse_tensor.hpp"

namespace lieconst {

/// Selection rule for triple integrals of basis modes. A false return means
/// every triple integral over (i, j, k) vanishes identically: on the torus the
/// lattice vectors admit no relation +-k_i +-k_j +-k_k = 0, on the sphere the
/// degrees violate the triangle inequality. Always true on the conformal torus.
bool triple_admissible(const Basis& basis, std::size_t i, std::size_t j, std::size_t k);

/// g_{abc} = int Y_a eps^{ij} d_i Y_b d_j Y_c d^2phi (bare epsilon, eps^{12} = +1).
/// Closed form on the flat torus, quadrature elsewhere.
SparseRank3 compute_g(const Basis& basis);
SparseRank3 compute_g_quadrature(const Basis& basis);

/// d_{abc} = int Y_a Y_b Y_c rho d^2phi.
SparseRank3 compute_d(const Basis& basis);
SparseRank3 compute_d_quadrature(const Basis& basis);

/// e_{abc} = (mu_b - mu_c) / mu_a * d_{abc}.
SparseRank3 compute_e(const Basis& basis, const SparseRank3& d);

}  // namespace lieconst
