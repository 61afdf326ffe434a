#pragma once

#include <memory>

#include "lieconst/generators.hpp"
#include "lieconst/geometry.hpp"
#include "lieconst/sparse_tensor.hpp"

namespace lieconst {

// Harmonic-indexed families come back empty, with status NotApplicable and an
// explanatory note, on a genus-0 basis.

/// g_{r r' eps} = int eps^_{ab} h_(r)^a h_(r')^b Y_eps, with eps^_{ab} = rho eps_{ab}.
SparseRank3 compute_g_rr(const Basis& basis);
/// g_{alpha r eps} = int Y_alpha h_(r)^a d_a Y_eps.
SparseRank3 compute_g_alpha_r(const Basis& basis);
/// g~_{a a' e} = (mu_e - mu_a - mu_a') / (mu_a mu_a' mu_e) g_{a a' e}.
SparseRank3 compute_g_tilde(const Basis& basis, const SparseRank3& g);
/// Stored as k(alpha, eps, r) = (1/mu_alpha + 1/mu_eps) g_{alpha r eps}; the
/// second slot is the second L index of [L_alpha, L_eps].
SparseRank3 compute_k(const Basis& basis, const SparseRank3& g_alpha_r);
/// e~_{a a' e} = d_{a a' e} + (e_{a a' e} - e_{e a a'}) / 2.
SparseRank3 compute_e_tilde(const Basis& basis, const SparseRank3& d, const SparseRank3& e);
/// Same tensor from the two gradient integrals
/// (1/mu_a) int grad Y_a . grad Y_a' Y_e + (1/mu_e) int grad Y_e . grad Y_a' Y_a.
SparseRank3 compute_e_tilde_direct(const Basis& basis);
/// c_{a a' r} = int Y_a eps^^{ab} d_a Y_a' h_(r)b, with eps^^{ab} = eps^{ab} / rho.
SparseRank3 compute_c(const Basis& basis);
/// c~_{a r e} = (1/mu_a - 1/mu_e) c_{e a r}.
SparseRank3 compute_c_tilde(const Basis& basis, const SparseRank3& c);
/// y_{a r r'} = int Y_a g_{ab} h_(r)^a h_(r')^b.
SparseRank3 compute_y(const Basis& basis);

/// Right-hand sides of the six bracket relations on one basis:
///   [phi_a, phi_b] = g_{abe} phi_e
///   [H_r, H_r']    = g_{rr'e} phi_e
///   [phi_a, H_r]   = g_{are} phi_e
///   [L_a, L_b]     = (e_{abe} - e_{bae})/2 L_e + g~_{abe} phi_e + k_{abr} H_r
///   [L_a, phi_b]   = g_{abe} L_e + e~_{abe} phi_e + c_{abr} H_r
///   [L_a, H_r]     = g_{are} L_e + c~_{are} phi_e + y_{arr'} H_r'
/// Reversed pairs are the negatives.
struct BracketTable {
  std::shared_ptr<const Basis> basis;
  SparseRank3 g{Family::G};
  SparseRank3 d{Family::D};
  SparseRank3 e{Family::E};
  SparseRank3 g_rr{Family::GRR};
  SparseRank3 g_alpha_r{Family::GAlphaR};
  SparseRank3 g_tilde{Family::GTilde};
  SparseRank3 k{Family::K};
  SparseRank3 e_tilde{Family::ETilde};
  SparseRank3 c{Family::C};
  SparseRank3 c_tilde{Family::CTilde};
  SparseRank3 y{Family::Y};

  const SparseRank3& tensor(Family family) const;
  SparseRank3& tensor(Family family);

  /// Structure-constant expansion of [a, b].
  Coefficients bracket(Generator a, Generator b) const;
  /// Bilinear extension to arbitrary combinations of generators.
  Coefficients bracket(const Coefficients& x, const Coefficients& y) const;
};

BracketTable assemble_bracket_table(std::shared_ptr<const Basis> basis);

}  // namespace lieconst
