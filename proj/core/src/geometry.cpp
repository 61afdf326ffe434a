#include "lieconst/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "lieconst/error.hpp"
#include "spectral_model.hpp"

namespace lieconst {

namespace {

int sym_index(int a, int b) { return a + b; }  // (0,0)->0, (0,1)/(1,0)->1, (1,1)->2

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw Error(ErrorCode::UnknownMode, "malformed mode label '" + std::string(whole) + "'");
  }
  return value;
}

std::pair<int, int> parse_pair(std::string_view text, std::string_view whole) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw Error(ErrorCode::UnknownMode, "malformed mode label '" + std::string(whole) + "'");
  }
  return {parse_int(text.substr(0, comma), whole), parse_int(text.substr(comma + 1), whole)};
}

}  // namespace

std::string to_string(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::FlatTorus: return "torus";
    case ManifoldKind::RoundSphere: return "sphere";
    case ManifoldKind::ConformalTorus: return "ctorus";
  }
  return "unknown";
}

ManifoldKind parse_manifold(std::string_view name) {
  if (name == "torus") return ManifoldKind::FlatTorus;
  if (name == "sphere") return ManifoldKind::RoundSphere;
  if (name == "ctorus") return ManifoldKind::ConformalTorus;
  throw Error(ErrorCode::InvalidConfig, "unknown manifold '" + std::string(name) + "'");
}

int genus(ManifoldKind kind) { return kind == ManifoldKind::RoundSphere ? 0 : 1; }

bool in_half_lattice(int k1, int k2) { return k1 > 0 || (k1 == 0 && k2 > 0); }

std::string to_label(const ModeId& mode) {
  std::ostringstream os;
  if (const auto* t = std::get_if<TorusMode>(&mode)) {
    os << (t->parity == Parity::Cos ? "c:" : "s:") << t->k1 << ',' << t->k2;
  } else {
    const auto& s = std::get<SphereMode>(mode);
    os << "sph:" << s.l << ',' << s.m;
  }
  return os.str();
}

std::string harmonic_label(std::size_t r) { return "h:" + std::to_string(r + 1); }

ModeId parse_mode_label(std::string_view label) {
  if (label.starts_with("sph:")) {
    auto [l, m] = parse_pair(label.substr(4), label);
    if (l < 1 || m < -l || m > l) {
      throw Error(ErrorCode::UnknownMode, "invalid sphere mode '" + std::string(label) + "'");
    }
    return SphereMode{l, m};
  }
  if (label.starts_with("c:") || label.starts_with("s:")) {
    auto [k1, k2] = parse_pair(label.substr(2), label);
    if (!in_half_lattice(k1, k2)) {
      throw Error(ErrorCode::UnknownMode,
                  "torus mode outside the canonical half-lattice '" + std::string(label) + "'");
    }
    return TorusMode{k1, k2, label[0] == 'c' ? Parity::Cos : Parity::Sin};
  }
  throw Error(ErrorCode::UnknownMode, "malformed mode label '" + std::string(label) + "'");
}

ManifoldSpec ManifoldSpec::flat_torus(int band) {
  return ManifoldSpec{ManifoldKind::FlatTorus, band, {}};
}

ManifoldSpec ManifoldSpec::round_sphere(int band) {
  return ManifoldSpec{ManifoldKind::RoundSphere, band, {}};
}

ManifoldSpec ManifoldSpec::conformal_torus(int band, std::map<TorusMode, double> coefficients) {
  return ManifoldSpec{ManifoldKind::ConformalTorus, band, std::move(coefficients)};
}

VectorJet VectorJet::zero(Eigen::Index n) {
  VectorJet j;
  for (int a = 0; a < 2; ++a) {
    j.v[a] = Eigen::ArrayXd::Zero(n);
    for (int c = 0; c < 2; ++c) j.d[a][c] = Eigen::ArrayXd::Zero(n);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Basis
// ---------------------------------------------------------------------------

Basis::Basis(ManifoldSpec spec, std::shared_ptr<const detail::SpectralModel> model,
             const BasisOptions& options)
    : spec_(std::move(spec)), model_(std::move(model)) {
  modes_ = model_->modes();
  eigenvalues_ = model_->eigenvalues();
  harmonic_ = model_->harmonic_fields();
  grid_ = model_->make_grid(options.grid_points);
  metric_ = model_->metric(grid_.nodes);
  measure_ = grid_.weights * metric_.rho;

  jets_.reserve(modes_.size());
  for (std::size_t alpha = 0; alpha < modes_.size(); ++alpha) {
    jets_.push_back(model_->evaluate(alpha, grid_.nodes));
  }

  const Eigen::Index n = grid_size();
  for (const auto& h : harmonic_) {
    VectorJet jet = VectorJet::zero(n);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        jet.v[a] += metric_.ginv[sym_index(a, b)] * h.covector[b];
        for (int c = 0; c < 2; ++c) {
          jet.d[a][c] += metric_.dginv[c][sym_index(a, b)] * h.covector[b];
        }
      }
    }
    harmonic_jets_.push_back(std::move(jet));
  }
}

std::optional<std::size_t> Basis::find(const ModeId& mode) const {
  auto it = std::find(modes_.begin(), modes_.end(), mode);
  if (it == modes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - modes_.begin());
}

std::size_t Basis::index_of(const ModeId& mode) const {
  auto idx = find(mode);
  if (!idx) throw Error(ErrorCode::UnknownMode, to_label(mode) + " is not in the basis");
  return *idx;
}

ScalarJet Basis::evaluate(std::size_t alpha, const Points& points) const {
  if (alpha >= modes_.size()) {
    throw Error(ErrorCode::UnknownMode, "mode index " + std::to_string(alpha) + " out of range");
  }
  return model_->evaluate(alpha, points);
}

MetricSamples Basis::metric_at(const Points& points) const { return model_->metric(points); }

Eigen::ArrayXd Basis::laplacian(const ScalarJet& jet) const {
  const auto& m = metric_;
  Eigen::ArrayXd out = m.ginv[0] * jet.dd[0] + 2.0 * m.ginv[1] * jet.dd[1] + m.ginv[2] * jet.dd[2];
  for (int b = 0; b < 2; ++b) {
    Eigen::ArrayXd coeff = Eigen::ArrayXd::Zero(out.size());
    for (int a = 0; a < 2; ++a) {
      coeff += m.drho[a] * m.ginv[sym_index(a, b)] / m.rho + m.dginv[a][sym_index(a, b)];
    }
    out += coeff * jet.d[b];
  }
  return out;
}

bool Basis::band_closed() const { return model_->band_closed(); }

Basis build_basis(const ManifoldSpec& spec, const BasisOptions& options) {
  if (spec.band < 1) {
    throw Error(ErrorCode::InvalidBand, "band must be >= 1, got " + std::to_string(spec.band));
  }
  std::shared_ptr<const detail::SpectralModel> model;
  switch (spec.kind) {
    case ManifoldKind::FlatTorus: model = detail::make_flat_torus_model(spec); break;
    case ManifoldKind::RoundSphere: model = detail::make_sphere_model(spec); break;
    case ManifoldKind::ConformalTorus: model = detail::make_conformal_torus_model(spec); break;
  }
  return Basis(spec, std::move(model), options);
}

Eigen::ArrayXd eval_scalar(const Basis& basis, const ModeId& mode, const Points& points) {
  return basis.evaluate(basis.index_of(mode), points).value;
}

std::array<Eigen::ArrayXd, 2> grad_scalar(const Basis& basis, const ModeId& mode,
                                          const Points& points) {
  return basis.evaluate(basis.index_of(mode), points).d;
}

std::array<Eigen::ArrayXd, 2> gradient_vector(const Basis& basis, const ModeId& mode,
                                              const Points& points) {
  auto d = grad_scalar(basis, mode, points);
  auto m = basis.metric_at(points);
  return {m.ginv[0] * d[0] + m.ginv[1] * d[1], m.ginv[1] * d[0] + m.ginv[2] * d[1]};
}

const std::vector<HarmonicField>& harmonic_basis(const Basis& basis) {
  return basis.harmonic_fields();
}

std::array<Eigen::ArrayXd, 2> eval_harmonic(const Basis& basis, std::size_t r,
                                            const Points& points) {
  if (r >= basis.harmonic_count()) {
    throw Error(ErrorCode::NoHarmonicFields,
                "harmonic index " + std::to_string(r + 1) + " not available on " +
                    to_string(basis.kind()));
  }
  const auto& c = basis.harmonic_fields()[r].covector;
  auto m = basis.metric_at(points);
  return {m.ginv[0] * c[0] + m.ginv[1] * c[1], m.ginv[1] * c[0] + m.ginv[2] * c[1]};
}

Eigen::ArrayXd gaussian_curvature(const ManifoldSpec& spec, const Points& points) {
  switch (spec.kind) {
    case ManifoldKind::FlatTorus: return Eigen::ArrayXd::Zero(points.size());
    case ManifoldKind::RoundSphere: return Eigen::ArrayXd::Constant(points.size(), 4.0 * kPi);
    case ManifoldKind::ConformalTorus:
      return detail::conformal_curvature(spec, points);
  }
  return {};
}

std::size_t flat_torus_mode_count(int band) { return detail::flat_torus_modes(band).size(); }

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

namespace detail {

ScalarJet zero_jet(Eigen::Index n) {
  ScalarJet j;
  j.value = Eigen::ArrayXd::Zero(n);
  for (auto& d : j.d) d = Eigen::ArrayXd::Zero(n);
  for (auto& d : j.dd) d = Eigen::ArrayXd::Zero(n);
  return j;
}

void accumulate_torus_mode(const TorusMode& mode, double scale, const Points& points,
                           ScalarJet& out) {
  const double w1 = 2.0 * kPi * mode.k1;
  const double w2 = 2.0 * kPi * mode.k2;
  const Eigen::ArrayXd phase = w1 * points.x1 + w2 * points.x2;
  const Eigen::ArrayXd c = phase.cos();
  const Eigen::ArrayXd s = phase.sin();
  const double amp = std::sqrt(2.0) * scale;
  // f = amp*cos: f_a = -amp w_a sin, f_ab = -amp w_a w_b cos
  // f = amp*sin: f_a =  amp w_a cos, f_ab = -amp w_a w_b sin
  const Eigen::ArrayXd& primary = mode.parity == Parity::Cos ? c : s;
  const Eigen::ArrayXd first = mode.parity == Parity::Cos ? Eigen::ArrayXd(-s) : c;
  out.value += amp * primary;
  out.d[0] += amp * w1 * first;
  out.d[1] += amp * w2 * first;
  out.dd[0] -= amp * w1 * w1 * primary;
  out.dd[1] -= amp * w1 * w2 * primary;
  out.dd[2] -= amp * w2 * w2 * primary;
}

QuadratureGrid uniform_torus_grid(int n) {
  QuadratureGrid grid;
  grid.n1 = n;
  grid.n2 = n;
  const Eigen::Index total = static_cast<Eigen::Index>(n) * n;
  grid.nodes.x1.resize(total);
  grid.nodes.x2.resize(total);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      grid.nodes.x1[i * n + j] = static_cast<double>(i) / n;
      grid.nodes.x2[i * n + j] = static_cast<double>(j) / n;
    }
  }
  grid.weights = Eigen::ArrayXd::Constant(total, 1.0 / static_cast<double>(total));
  return grid;
}

MetricSamples flat_metric(Eigen::Index n) {
  MetricSamples m;
  const Eigen::ArrayXd zero = Eigen::ArrayXd::Zero(n);
  const Eigen::ArrayXd one = Eigen::ArrayXd::Ones(n);
  m.rho = one;
  m.drho = {zero, zero};
  m.g = {one, zero, one};
  m.ginv = {one, zero, one};
  m.dginv = {{{zero, zero, zero}, {zero, zero, zero}}};
  return m;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

std::vector<TorusMode> flat_torus_modes(int band) {
  std::vector<TorusMode> out;
  const int kmax = static_cast<int>(std::floor(std::sqrt(static_cast<double>(band))));
  for (int k1 = 0; k1 <= kmax; ++k1) {
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      if (!in_half_lattice(k1, k2) || k1 * k1 + k2 * k2 > band) continue;
      out.push_back({k1, k2, Parity::Cos});
      out.push_back({k1, k2, Parity::Sin});
    }
  }
  std::sort(out.begin(), out.end(), [](const TorusMode& a, const TorusMode& b) {
    return std::tuple(a.norm2(), a) < std::tuple(b.norm2(), b);
  });
  return out;
}

}  // namespace detail
}  // namespace lieconst
