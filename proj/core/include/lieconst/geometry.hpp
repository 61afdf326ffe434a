#pragma once

#include <Eigen/Core>

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lieconst {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// Manifolds and mode labels
// ---------------------------------------------------------------------------

enum class ManifoldKind { FlatTorus, RoundSphere, ConformalTorus };

/// CLI spelling: "torus", "sphere", "ctorus".
std::string to_string(ManifoldKind kind);
ManifoldKind parse_manifold(std::string_view name);

/// 0 for the sphere, 1 for both tori.
int genus(ManifoldKind kind);

enum class Parity { Cos, Sin };

/// Real Fourier mode sqrt(2) cos/sin(2 pi k.phi) on the unit torus. The lattice
/// vector lives in the canonical half-lattice: k1 > 0, or k1 == 0 and k2 > 0.
struct TorusMode {
  int k1 = 0;
  int k2 = 0;
  Parity parity = Parity::Cos;

  int norm2() const { return k1 * k1 + k2 * k2; }
  auto operator<=>(const TorusMode&) const = default;
};

/// Real spherical harmonic: m > 0 carries cos(m phi), m < 0 carries sin(|m| phi).
struct SphereMode {
  int l = 0;
  int m = 0;
  auto operator<=>(const SphereMode&) const = default;
};

using ModeId = std::variant<TorusMode, SphereMode>;

bool in_half_lattice(int k1, int k2);

/// "c:1,0", "s:0,2", "sph:2,-1".
std::string to_label(const ModeId& mode);
/// Harmonic index label, 1-based: "h:1".
std::string harmonic_label(std::size_t r);
ModeId parse_mode_label(std::string_view label);

/// Configuration of a supported manifold.
///
/// `band` is max |k|^2 on the tori and l_max on the sphere. For the conformal
/// torus the metric is e^{2u} times the flat metric with
/// u = u0 + sum_k a_k Y_k (flat-torus real modes) and u0 fixed so that the total
/// area is exactly one.
struct ManifoldSpec {
  ManifoldKind kind = ManifoldKind::FlatTorus;
  int band = 1;
  std::map<TorusMode, double> conformal_coefficients;

  static ManifoldSpec flat_torus(int band);
  static ManifoldSpec round_sphere(int band);
  static ManifoldSpec conformal_torus(int band, std::map<TorusMode, double> coefficients);
};

// ---------------------------------------------------------------------------
// Sampled data
// ---------------------------------------------------------------------------

/// Points in parameter space: (phi1, phi2) in [0,1)^2 on the tori,
/// (theta, azimuth) on the sphere.
struct Points {
  Eigen::ArrayXd x1;
  Eigen::ArrayXd x2;

  Eigen::Index size() const { return x1.size(); }
};

struct QuadratureGrid {
  Points nodes;
  /// Weights for the coordinate measure d^2 phi.
  Eigen::ArrayXd weights;
  int n1 = 0;
  int n2 = 0;
};

/// Metric data at a set of points. Symmetric 2x2 quantities are stored as
/// (11, 12, 22).
struct MetricSamples {
  Eigen::ArrayXd rho;                                 // sqrt(det g)
  std::array<Eigen::ArrayXd, 2> drho;                 // d_c rho
  std::array<Eigen::ArrayXd, 3> g;                    // g_ab
  std::array<Eigen::ArrayXd, 3> ginv;                 // g^ab
  std::array<std::array<Eigen::ArrayXd, 3>, 2> dginv; // [c] -> d_c g^ab
};

/// Value, first and second coordinate derivatives of a scalar. Second
/// derivatives are ordered (11, 12, 22).
struct ScalarJet {
  Eigen::ArrayXd value;
  std::array<Eigen::ArrayXd, 2> d;
  std::array<Eigen::ArrayXd, 3> dd;
};

/// Contravariant components X^a and their derivatives: d[a][c] = d_c X^a.
struct VectorJet {
  std::array<Eigen::ArrayXd, 2> v;
  std::array<std::array<Eigen::ArrayXd, 2>, 2> d;

  static VectorJet zero(Eigen::Index n);
};

/// Harmonic vector field h^a = g^{ab} c_b with a constant covector c. On the
/// tori every harmonic 1-form is constant; normalization makes the family
/// orthonormal under the rho-weighted metric inner product.
struct HarmonicField {
  std::size_t r = 0;  // 0-based; labels are 1-based
  std::array<double, 2> covector{};
};

namespace detail {
class SpectralModel;
}

struct BasisOptions {
  /// Overrides the per-axis grid size (torus N, sphere Gauss-Legendre order).
  std::optional<int> grid_points;
};

/// Truncated orthonormal Laplace eigenbasis on a manifold, together with the
/// harmonic fields and a quadrature grid carrying precomputed jets.
class Basis {
 public:
  Basis(ManifoldSpec spec, std::shared_ptr<const detail::SpectralModel> model,
        const BasisOptions& options);

  const ManifoldSpec& spec() const { return spec_; }
  ManifoldKind kind() const { return spec_.kind; }
  int genus() const { return lieconst::genus(spec_.kind); }

  std::size_t size() const { return modes_.size(); }
  const std::vector<ModeId>& modes() const { return modes_; }
  const ModeId& mode(std::size_t alpha) const { return modes_.at(alpha); }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  double eigenvalue(std::size_t alpha) const { return eigenvalues_.at(alpha); }
  std::string label(std::size_t alpha) const { return to_label(modes_.at(alpha)); }

  std::optional<std::size_t> find(const ModeId& mode) const;
  /// Throws Error(UnknownMode).
  std::size_t index_of(const ModeId& mode) const;

  const std::vector<HarmonicField>& harmonic_fields() const { return harmonic_; }
  std::size_t harmonic_count() const { return harmonic_.size(); }

  const QuadratureGrid& grid() const { return grid_; }
  const MetricSamples& metric() const { return metric_; }
  /// Quadrature weights for the rho-weighted measure.
  const Eigen::ArrayXd& measure() const { return measure_; }
  Eigen::Index grid_size() const { return measure_.size(); }

  /// Jet of Y_alpha on the quadrature grid.
  const ScalarJet& jet(std::size_t alpha) const { return jets_.at(alpha); }
  /// Jet of h_(r) on the quadrature grid.
  const VectorJet& harmonic_jet(std::size_t r) const { return harmonic_jets_.at(r); }

  ScalarJet evaluate(std::size_t alpha, const Points& points) const;
  MetricSamples metric_at(const Points& points) const;

  /// Integral of f against rho d^2 phi.
  double integrate(const Eigen::ArrayXd& f) const { return (measure_ * f).sum(); }
  /// Integral of f against the bare coordinate measure d^2 phi.
  double integrate_coordinate(const Eigen::ArrayXd& f) const { return (grid_.weights * f).sum(); }

  /// Laplace-Beltrami operator applied to a jet sampled on the grid.
  Eigen::ArrayXd laplacian(const ScalarJet& jet) const;

  /// True when products of banded modes expand exactly in a larger band of
  /// the same family (flat torus, round sphere).
  bool band_closed() const;

  const detail::SpectralModel& model() const { return *model_; }

 private:
  ManifoldSpec spec_;
  std::shared_ptr<const detail::SpectralModel> model_;
  std::vector<ModeId> modes_;
  std::vector<double> eigenvalues_;
  std::vector<HarmonicField> harmonic_;
  QuadratureGrid grid_;
  MetricSamples metric_;
  Eigen::ArrayXd measure_;
  std::vector<ScalarJet> jets_;
  std::vector<VectorJet> harmonic_jets_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

Basis build_basis(const ManifoldSpec& spec, const BasisOptions& options = {});

/// Y_alpha at arbitrary points. Throws Error(UnknownMode).
Eigen::ArrayXd eval_scalar(const Basis& basis, const ModeId& mode, const Points& points);
/// Covector d_a Y_alpha at arbitrary points.
std::array<Eigen::ArrayXd, 2> grad_scalar(const Basis& basis, const ModeId& mode,
                                          const Points& points);
/// Vector grad^a Y_alpha = g^{ab} d_b Y_alpha.
std::array<Eigen::ArrayXd, 2> gradient_vector(const Basis& basis, const ModeId& mode,
                                              const Points& points);

const std::vector<HarmonicField>& harmonic_basis(const Basis& basis);

/// Harmonic field components h^a at arbitrary points.
std::array<Eigen::ArrayXd, 2> eval_harmonic(const Basis& basis, std::size_t r,
                                            const Points& points);

Eigen::ArrayXd gaussian_curvature(const ManifoldSpec& spec, const Points& points);

/// Number of flat-torus modes (both parities) with 0 < |k|^2 <= band.
std::size_t flat_torus_mode_count(int band);

}  // namespace lieconst
