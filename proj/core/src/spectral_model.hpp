#pragma once

#include "lieconst/geometry.hpp"

#include <optional>
#include <vector>

namespace lieconst::detail {

/// Manifold-specific closed forms behind a Basis.
class SpectralModel {
 public:
  virtual ~SpectralModel() = default;

  const std::vector<ModeId>& modes() const { return modes_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }

  virtual ScalarJet evaluate(std::size_t mode, const Points& points) const = 0;
  virtual MetricSamples metric(const Points& points) const = 0;
  virtual QuadratureGrid make_grid(std::optional<int> per_axis) const = 0;
  virtual Eigen::ArrayXd curvature(const Points& points) const = 0;
  virtual std::vector<HarmonicField> harmonic_fields() const = 0;
  virtual bool band_closed() const = 0;

 protected:
  std::vector<ModeId> modes_;
  std::vector<double> eigenvalues_;
};

std::shared_ptr<const SpectralModel> make_flat_torus_model(const ManifoldSpec& spec);
std::shared_ptr<const SpectralModel> make_sphere_model(const ManifoldSpec& spec);
std::shared_ptr<const SpectralModel> make_conformal_torus_model(const ManifoldSpec& spec);

/// K = -e^{-2u} Laplacian_flat(u), without solving the eigenproblem.
Eigen::ArrayXd conformal_curvature(const ManifoldSpec& spec, const Points& points);

// Shared helpers.

/// Jet of sqrt(2) cos/sin(2 pi k.phi), scaled by `scale`, accumulated into `out`.
void accumulate_torus_mode(const TorusMode& mode, double scale, const Points& points,
                           ScalarJet& out);
ScalarJet zero_jet(Eigen::Index n);
QuadratureGrid uniform_torus_grid(int n);
MetricSamples flat_metric(Eigen::Index n);

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Modes of the flat torus with 0 < |k|^2 <= band, sorted by (|k|^2, k1, k2, parity).
std::vector<TorusMode> flat_torus_modes(int band);

}  // namespace lieconst::detail
