#include <cmath>

#include "spectral_model.hpp"

namespace lieconst::detail {

namespace {

// Unit total area: radius^2 = 1 / (4 pi).
constexpr double kRadius2 = 1.0 / (4.0 * kPi);

/// Unnormalized P_l^m(x) and P_{l-1}^m(x), m >= 0, no Condon-Shortley phase.
void associated_legendre(int l, int m, const Eigen::ArrayXd& x, const Eigen::ArrayXd& s,
                         Eigen::ArrayXd& p_l, Eigen::ArrayXd& p_lm1) {
  double dfact = 1.0;
  for (int i = 1; i <= 2 * m - 1; i += 2) dfact *= i;
  Eigen::ArrayXd pmm = dfact * s.pow(m);
  if (l == m) {
    p_l = pmm;
    p_lm1 = Eigen::ArrayXd::Zero(x.size());
    return;
  }
  Eigen::ArrayXd prev = pmm;
  Eigen::ArrayXd cur = (2.0 * m + 1.0) * x * pmm;
  for (int ll = m + 2; ll <= l; ++ll) {
    Eigen::ArrayXd next = ((2.0 * ll - 1.0) * x * cur - (ll + m - 1.0) * prev) / (ll - m);
    prev = std::move(cur);
    cur = std::move(next);
  }
  p_l = std::move(cur);
  p_lm1 = std::move(prev);
}

double normalization(int l, int m) {
  // sqrt((2l+1) (l-m)!/(l+m)!), times sqrt(2) for m != 0.
  double ratio = 1.0;
  for (int k = l - m + 1; k <= l + m; ++k) ratio /= k;
  double n = std::sqrt((2.0 * l + 1.0) * ratio);
  return m == 0 ? n : n * std::sqrt(2.0);
}

class SphereModel final : public SpectralModel {
 public:
  explicit SphereModel(const ManifoldSpec& spec) : lmax_(spec.band) {
    for (int l = 1; l <= lmax_; ++l) {
      for (int m = -l; m <= l; ++m) {
        modes_.emplace_back(SphereMode{l, m});
        eigenvalues_.push_back(l * (l + 1.0) / kRadius2);
      }
    }
  }

  ScalarJet evaluate(std::size_t mode, const Points& points) const override {
    const auto [l, m] = std::get<SphereMode>(modes_.at(mode));
    const int am = std::abs(m);
    const Eigen::ArrayXd& theta = points.x1;
    const Eigen::ArrayXd& phi = points.x2;
    const Eigen::ArrayXd x = theta.cos();
    const Eigen::ArrayXd s = theta.sin();

    Eigen::ArrayXd p, pm1;
    associated_legendre(l, am, x, s, p, pm1);
    const double norm = normalization(l, am);
    p *= norm;
    pm1 *= norm;
    // d_theta P = (l x P_l - (l+m) P_{l-1}) / sin(theta)
    Eigen::ArrayXd p_t = (l * x * p - (l + am) * pm1) / s;
    // Legendre equation in theta.
    Eigen::ArrayXd p_tt = -(x / s) * p_t - (l * (l + 1.0) - am * am / (s * s)) * p;

    Eigen::ArrayXd t, t_p, t_pp;
    if (m == 0) {
      t = Eigen::ArrayXd::Ones(phi.size());
      t_p = Eigen::ArrayXd::Zero(phi.size());
      t_pp = t_p;
    } else if (m > 0) {
      t = (am * phi).cos();
      t_p = -am * (am * phi).sin();
      t_pp = -am * am * t;
    } else {
      t = (am * phi).sin();
      t_p = am * (am * phi).cos();
      t_pp = -am * am * t;
    }

    ScalarJet jet;
    jet.value = p * t;
    jet.d[0] = p_t * t;
    jet.d[1] = p * t_p;
    jet.dd[0] = p_tt * t;
    jet.dd[1] = p_t * t_p;
    jet.dd[2] = p * t_pp;
    return jet;
  }

  MetricSamples metric(const Points& points) const override {
    const Eigen::Index n = points.size();
    const Eigen::ArrayXd s = points.x1.sin();
    const Eigen::ArrayXd c = points.x1.cos();
    const Eigen::ArrayXd zero = Eigen::ArrayXd::Zero(n);
    MetricSamples m;
    m.rho = kRadius2 * s;
    m.drho = {kRadius2 * c, zero};
    m.g = {Eigen::ArrayXd::Constant(n, kRadius2), zero, kRadius2 * s * s};
    m.ginv = {Eigen::ArrayXd::Constant(n, 1.0 / kRadius2), zero, 1.0 / (kRadius2 * s * s)};
    m.dginv = {{{zero, zero, -2.0 * c / (kRadius2 * s * s * s)}, {zero, zero, zero}}};
    return m;
  }

  // Gauss-Legendre in cos(theta) x uniform azimuth. The GL order exceeds the
  // 2*l_max + 2 needed for triple products of banded harmonics.
  QuadratureGrid make_grid(std::optional<int> per_axis) const override {
    const int n_theta = per_axis.value_or(2 * lmax_ + 4);
    const int n_phi = 2 * n_theta;
    std::vector<double> xs, ws;
    gauss_legendre(n_theta, xs, ws);

    QuadratureGrid grid;
    grid.n1 = n_theta;
    grid.n2 = n_phi;
    const Eigen::Index total = static_cast<Eigen::Index>(n_theta) * n_phi;
    grid.nodes.x1.resize(total);
    grid.nodes.x2.resize(total);
    grid.weights.resize(total);
    for (int i = 0; i < n_theta; ++i) {
      // Descending x so that theta increases with i.
      const double x = xs[n_theta - 1 - i];
      const double theta = std::acos(x);
      const double s = std::sqrt(1.0 - x * x);
      for (int j = 0; j < n_phi; ++j) {
        const Eigen::Index k = static_cast<Eigen::Index>(i) * n_phi + j;
        grid.nodes.x1[k] = theta;
        grid.nodes.x2[k] = 2.0 * kPi * j / n_phi;
        // d theta = dx / sin(theta) for the coordinate measure.
        grid.weights[k] = ws[n_theta - 1 - i] / s * (2.0 * kPi / n_phi);
      }
    }
    return grid;
  }

  Eigen::ArrayXd curvature(const Points& points) const override {
    return Eigen::ArrayXd::Constant(points.size(), 1.0 / kRadius2);
  }

  std::vector<HarmonicField> harmonic_fields() const override { return {}; }

  bool band_closed() const override { return true; }

 private:
  int lmax_;
};

}  // namespace

std::shared_ptr<const SpectralModel> make_sphere_model(const ManifoldSpec& spec) {
  return std::make_shared<SphereModel>(spec);
}

}  // namespace lieconst::detail
