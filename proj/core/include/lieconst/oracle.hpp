#pragma once

#include <Eigen/Core>

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "lieconst/generators.hpp"
#include "lieconst/geometry.hpp"

namespace lieconst {

/// Brute-force path: generators as explicit vector fields on the quadrature
/// grid, coordinate Lie brackets, and Hodge decomposition by projection on the
/// eigenbasis. Nothing here uses the closed-form structure constants.
///
/// Generator fields:
///   L_a   : X^a = g^{ab} d_b Y_a / mu_a              (div = -Y_a)
///   phi_a : X^a = -eps^{ab} d_b Y_a / rho            (div = 0)
///   H_r   : X^a = h_(r)^a
/// Bracket: [X, Y]^a = X^b d_b Y^a - Y^b d_b X^a.

using Components = std::array<Eigen::ArrayXd, 2>;

struct SpectralVectorField {
  Components samples;
  std::optional<Coefficients> coefficients;
};

struct HodgeParts {
  SpectralVectorField gradient;
  SpectralVectorField curl;
  SpectralVectorField harmonic;
  Coefficients coefficients;
  /// |X - (gradient + curl + harmonic)| / max(|X|, 1), rho-weighted L2.
  double residual = 0.0;
};

enum class ResidualPolicy { Enforce, Report };

inline constexpr double kDecompositionTolerance = 1e-10;

VectorJet generator_jet(const Basis& basis, Generator g);
SpectralVectorField generator_field(const Basis& basis, Generator g);

/// Precomputed generator jets and the projection matrix of one basis.
class FieldAlgebra {
 public:
  explicit FieldAlgebra(std::shared_ptr<const Basis> basis);

  const Basis& basis() const { return *basis_; }
  const std::shared_ptr<const Basis>& basis_ptr() const { return basis_; }

  const VectorJet& jet(Generator g) const;
  VectorJet synthesize_jet(const Coefficients& c) const;
  Components synthesize(const Coefficients& c) const;

  /// Weak-form coefficients: l_e = int X^a d_a Y_e, p_e = (1/mu_e) int
  /// eps^{ab} d_a Y_e X_b d^2phi, h_r = int g_ab X^a h_(r)^b. Exact for the
  /// retained modes whenever the quadrature integrates the integrands exactly.
  Coefficients project(const Components& x) const;

  double norm(const Components& x) const;
  double relative_residual(const Components& x, const Components& approx) const;

 private:
  std::shared_ptr<const Basis> basis_;
  std::vector<VectorJet> l_jets_;
  std::vector<VectorJet> phi_jets_;
  std::vector<VectorJet> h_jets_;
  Eigen::MatrixXd projector_;  // generators x (2 * grid)
};

/// Coordinate bracket of two sampled jets.
Components bracket_samples(const VectorJet& x, const VectorJet& y);

/// Pointwise divergence d_a X^a + X^a d_a rho / rho.
Eigen::ArrayXd divergence(const Basis& basis, const VectorJet& x);

/// Both fields need coefficients. On band-closed bases the result carries
/// coefficients and a residual above `tolerance` throws BandOverflow. On the
/// conformal torus only samples are returned.
SpectralVectorField lie_bracket(const FieldAlgebra& algebra, const SpectralVectorField& x,
                                const SpectralVectorField& y,
                                double tolerance = kDecompositionTolerance);

HodgeParts hodge_decompose(const FieldAlgebra& algebra, const SpectralVectorField& x,
                           ResidualPolicy policy = ResidualPolicy::Enforce,
                           double tolerance = kDecompositionTolerance);

/// Curl plus harmonic part; X minus its gradient part.
SpectralVectorField apply_projector(const FieldAlgebra& algebra, const SpectralVectorField& x,
                                    double tolerance = kDecompositionTolerance);

struct ExtractedConstants {
  Coefficients coefficients;
  double residual = 0.0;
};

/// Decomposition of [a, b] computed from the explicit fields.
ExtractedConstants extract_constants(const FieldAlgebra& algebra, Generator a, Generator b);

/// Spec of a basis that contains every bracket of two generators of `spec`:
/// band 4B on the flat torus, 2L on the sphere. The conformal torus is not
/// band-closed and maps to itself.
ManifoldSpec closure_spec(const ManifoldSpec& spec);

}  // namespace lieconst
