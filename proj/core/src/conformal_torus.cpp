#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <set>

#include "lieconst/error.hpp"
#include "spectral_model.hpp"

namespace lieconst::detail {

namespace {

constexpr double kClusterTolerance = 1e-10;   // relative eigenvalue gap
constexpr double kConvergenceTolerance = 1e-8;
constexpr double kResidualTolerance = 1e-8;
constexpr int kMaxGalerkinBox = 24;

/// u = u0 + sum_k a_k Y_k with u0 chosen so that the integral of e^{2u} is 1.
class ConformalFactor {
 public:
  explicit ConformalFactor(std::map<TorusMode, double> coefficients)
      : coefficients_(std::move(coefficients)) {
    if (coefficients_.empty()) {
      throw Error(ErrorCode::InvalidConformalFactor,
                  "conformal torus needs at least one conformal coefficient");
    }
    int kmax = 0;
    for (const auto& [mode, amp] : coefficients_) {
      if (!in_half_lattice(mode.k1, mode.k2)) {
        throw Error(ErrorCode::InvalidConformalFactor,
                    "conformal mode " + to_label(mode) + " outside the canonical half-lattice");
      }
      if (!std::isfinite(amp)) {
        throw Error(ErrorCode::InvalidConformalFactor, "non-finite conformal amplitude");
      }
      kmax = std::max({kmax, std::abs(mode.k1), std::abs(mode.k2)});
    }
    const QuadratureGrid grid = uniform_torus_grid(std::max(128, 8 * kmax + 64));
    const Eigen::ArrayXd w = (2.0 * jet(grid.nodes).value).exp();
    if (!w.allFinite() || w.minCoeff() <= std::numeric_limits<double>::min()) {
      throw Error(ErrorCode::InvalidConformalFactor,
                  "conformal factor is not strictly positive on the grid");
    }
    u0_ = -0.5 * std::log((grid.weights * w).sum());
  }

  ScalarJet jet(const Points& points) const {
    ScalarJet out = zero_jet(points.size());
    for (const auto& [mode, amp] : coefficients_) accumulate_torus_mode(mode, amp, points, out);
    out.value += u0_;
    return out;
  }

  int max_frequency() const {
    int k = 0;
    for (const auto& [mode, amp] : coefficients_) k = std::max({k, mode.k1, std::abs(mode.k2)});
    return k;
  }

 private:
  std::map<TorusMode, double> coefficients_;
  double u0_ = 0.0;
};

/// Real flat basis function in the Galerkin box; the constant has no mode.
struct BoxFunction {
  std::optional<TorusMode> mode;
};

struct GalerkinSolution {
  int box = 0;
  std::vector<BoxFunction> functions;
  Eigen::MatrixXd stiffness;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // B-orthonormal columns
};

std::vector<BoxFunction> box_functions(int box) {
  std::vector<BoxFunction> out{{std::nullopt}};
  for (int k1 = 0; k1 <= box; ++k1) {
    for (int k2 = -box; k2 <= box; ++k2) {
      if (!in_half_lattice(k1, k2)) continue;
      out.push_back({TorusMode{k1, k2, Parity::Cos}});
      out.push_back({TorusMode{k1, k2, Parity::Sin}});
    }
  }
  return out;
}

GalerkinSolution solve_galerkin(const ConformalFactor& factor, int box) {
  GalerkinSolution sol;
  sol.box = box;
  sol.functions = box_functions(box);
  const int nb = static_cast<int>(sol.functions.size());

  // Fourier coefficients of w = e^{2u} for |q_i| <= 2*box.
  const int qmax = 2 * box;
  const int side = 2 * qmax + 1;
  const int m = 2 * qmax + 8 * factor.max_frequency() + 48;
  const QuadratureGrid grid = uniform_torus_grid(m);
  const Eigen::ArrayXd w = (2.0 * factor.jet(grid.nodes).value).exp();

  using cd = std::complex<double>;
  std::vector<cd> partial(static_cast<std::size_t>(m) * side);
  for (int i = 0; i < m; ++i) {
    for (int q2 = -qmax; q2 <= qmax; ++q2) {
      cd acc = 0.0;
      for (int j = 0; j < m; ++j) {
        const double angle = -2.0 * kPi * q2 * j / m;
        acc += w[i * m + j] * cd(std::cos(angle), std::sin(angle));
      }
      partial[static_cast<std::size_t>(i) * side + (q2 + qmax)] = acc;
    }
  }
  std::vector<double> cos_coef(static_cast<std::size_t>(side) * side);
  std::vector<double> sin_coef(cos_coef.size());
  for (int q1 = -qmax; q1 <= qmax; ++q1) {
    for (int q2 = -qmax; q2 <= qmax; ++q2) {
      cd acc = 0.0;
      for (int i = 0; i < m; ++i) {
        const double angle = -2.0 * kPi * q1 * i / m;
        acc += partial[static_cast<std::size_t>(i) * side + (q2 + qmax)] *
               cd(std::cos(angle), std::sin(angle));
      }
      acc /= static_cast<double>(m) * m;
      const std::size_t idx = static_cast<std::size_t>(q1 + qmax) * side + (q2 + qmax);
      cos_coef[idx] = acc.real();
      sin_coef[idx] = -acc.imag();
    }
  }
  auto C = [&](int q1, int q2) {
    return cos_coef[static_cast<std::size_t>(q1 + qmax) * side + (q2 + qmax)];
  };
  auto S = [&](int q1, int q2) {
    return sin_coef[static_cast<std::size_t>(q1 + qmax) * side + (q2 + qmax)];
  };

  Eigen::MatrixXd mass(nb, nb);
  sol.stiffness = Eigen::MatrixXd::Zero(nb, nb);
  for (int a = 0; a < nb; ++a) {
    const auto& fa = sol.functions[a].mode;
    if (fa) sol.stiffness(a, a) = 4.0 * kPi * kPi * fa->norm2();
    for (int b = a; b < nb; ++b) {
      const auto& fb = sol.functions[b].mode;
      double v = 0.0;
      if (!fa && !fb) {
        v = C(0, 0);
      } else if (!fa || !fb) {
        const TorusMode& p = fa ? *fa : *fb;
        v = std::sqrt(2.0) * (p.parity == Parity::Cos ? C(p.k1, p.k2) : S(p.k1, p.k2));
      } else {
        const TorusMode& p = *fa;
        const TorusMode& q = *fb;
        if (p.parity == Parity::Cos && q.parity == Parity::Cos) {
          v = C(p.k1 - q.k1, p.k2 - q.k2) + C(p.k1 + q.k1, p.k2 + q.k2);
        } else if (p.parity == Parity::Sin && q.parity == Parity::Sin) {
          v = C(p.k1 - q.k1, p.k2 - q.k2) - C(p.k1 + q.k1, p.k2 + q.k2);
        } else {
          const TorusMode& c = p.parity == Parity::Cos ? p : q;
          const TorusMode& s = p.parity == Parity::Cos ? q : p;
          // 2 cos(c) sin(s) = sin(s + c) + sin(s - c)
          v = S(s.k1 + c.k1, s.k2 + c.k2) + S(s.k1 - c.k1, s.k2 - c.k2);
        }
      }
      mass(a, b) = v;
      mass(b, a) = v;
    }
  }

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      sol.stiffness, mass, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigensolverResidual, "generalized eigensolver failed");
  }
  sol.eigenvalues = solver.eigenvalues();
  sol.eigenvectors = solver.eigenvectors();
  return sol;
}

bool converged(const GalerkinSolution& coarse, const GalerkinSolution& fine, std::size_t count) {
  for (std::size_t i = 1; i <= count; ++i) {
    const double a = coarse.eigenvalues[static_cast<Eigen::Index>(i)];
    const double b = fine.eigenvalues[static_cast<Eigen::Index>(i)];
    if (std::abs(a - b) > kConvergenceTolerance * std::abs(b)) return false;
  }
  return true;
}

struct ModeTerm {
  TorusMode mode;
  double coefficient;
};

class ConformalTorusModel final : public SpectralModel {
 public:
  explicit ConformalTorusModel(const ManifoldSpec& spec)
      : band_(spec.band), factor_(spec.conformal_coefficients) {
    const std::size_t target = flat_torus_modes(band_).size();
    const int kmax = static_cast<int>(std::floor(std::sqrt(static_cast<double>(band_))));

    // Doubling check: the eigenvalues at box K must agree with those at K/2.
    int box = std::max(4 * kmax, 12);
    GalerkinSolution coarse = solve_galerkin(factor_, box / 2);
    GalerkinSolution fine = solve_galerkin(factor_, box);
    while (!converged(coarse, fine, target + 1)) {
      if (2 * box > kMaxGalerkinBox) {
        throw Error(ErrorCode::EigensolverResidual,
                    "Galerkin eigenvalues not converged at box " + std::to_string(box));
      }
      box *= 2;
      coarse = std::move(fine);
      fine = solve_galerkin(factor_, box);
    }
    box_ = box;
    select_and_label(fine, target);
    check_residuals();
  }

  ScalarJet evaluate(std::size_t mode, const Points& points) const override {
    ScalarJet jet = zero_jet(points.size());
    for (const auto& term : terms_.at(mode)) {
      accumulate_torus_mode(term.mode, term.coefficient, points, jet);
    }
    jet.value += constants_.at(mode);
    return jet;
  }

  MetricSamples metric(const Points& points) const override {
    const ScalarJet u = factor_.jet(points);
    const Eigen::ArrayXd e2u = (2.0 * u.value).exp();
    const Eigen::ArrayXd em2u = (-2.0 * u.value).exp();
    const Eigen::ArrayXd zero = Eigen::ArrayXd::Zero(points.size());
    MetricSamples m;
    m.rho = e2u;
    m.drho = {2.0 * u.d[0] * e2u, 2.0 * u.d[1] * e2u};
    m.g = {e2u, zero, e2u};
    m.ginv = {em2u, zero, em2u};
    for (int c = 0; c < 2; ++c) {
      const Eigen::ArrayXd d = -2.0 * u.d[c] * em2u;
      m.dginv[c] = {d, zero, d};
    }
    return m;
  }

  QuadratureGrid make_grid(std::optional<int> per_axis) const override {
    return uniform_torus_grid(per_axis.value_or(4 * box_ + 16));
  }

  Eigen::ArrayXd curvature(const Points& points) const override {
    return curvature_of(factor_, points);
  }

  static Eigen::ArrayXd curvature_of(const ConformalFactor& factor, const Points& points) {
    const ScalarJet u = factor.jet(points);
    return -(-2.0 * u.value).exp() * (u.dd[0] + u.dd[2]);
  }

  std::vector<HarmonicField> harmonic_fields() const override {
    // Constant 1-forms; the rho-weighted norm of g^{ab} c_b is |c| for any u.
    return {HarmonicField{0, {1.0, 0.0}}, HarmonicField{1, {0.0, 1.0}}};
  }

  bool band_closed() const override { return false; }

 private:
  void select_and_label(const GalerkinSolution& sol, std::size_t target) {
    const Eigen::VectorXd& lambda = sol.eigenvalues;
    if (std::abs(lambda[0]) > 1e-8 * std::abs(lambda[1])) {
      throw Error(ErrorCode::EigensolverResidual, "missing zero mode in Galerkin spectrum");
    }
    auto same_cluster = [&](Eigen::Index a, Eigen::Index b) {
      return std::abs(lambda[a] - lambda[b]) <= kClusterTolerance * std::abs(lambda[b]);
    };
    Eigen::Index last = static_cast<Eigen::Index>(target);
    while (last + 1 < lambda.size() && same_cluster(last, last + 1)) ++last;

    std::set<std::size_t> used;
    struct Labelled {
      std::size_t cluster;
      TorusMode label;
      double eigenvalue;
      Eigen::VectorXd vector;
    };
    std::vector<Labelled> found;

    std::size_t cluster_id = 0;
    for (Eigen::Index begin = 1; begin <= last; ++cluster_id) {
      Eigen::Index end = begin + 1;
      while (end <= last && same_cluster(begin, end)) ++end;
      const Eigen::Index width = end - begin;
      Eigen::MatrixXd block = sol.eigenvectors.middleCols(begin, width);

      // Flat functions carrying the most weight in this eigenspace.
      std::vector<std::size_t> order(sol.functions.size() - 1);
      std::iota(order.begin(), order.end(), std::size_t{1});
      Eigen::VectorXd weight = block.rowwise().squaredNorm();
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return weight[a] > weight[b]; });
      std::vector<std::size_t> chosen;
      for (std::size_t j : order) {
        if (used.count(j)) continue;
        chosen.push_back(j);
        if (static_cast<Eigen::Index>(chosen.size()) == width) break;
      }
      std::sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) {
        const auto& ma = *sol.functions[a].mode;
        const auto& mb = *sol.functions[b].mode;
        return std::tuple(ma.norm2(), ma) < std::tuple(mb.norm2(), mb);
      });

      // Rotate inside the eigenspace so that vector i aligns with chosen[i].
      Eigen::MatrixXd overlap(width, width);
      for (Eigen::Index i = 0; i < width; ++i) overlap.row(i) = block.row(chosen[i]);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
      block = block * (svd.matrixV() * svd.matrixU().transpose());

      for (Eigen::Index i = 0; i < width; ++i) {
        Eigen::VectorXd v = block.col(i);
        if (v[static_cast<Eigen::Index>(chosen[i])] < 0.0) v = -v;
        const double rayleigh = v.dot(sol.stiffness * v);
        used.insert(chosen[i]);
        found.push_back({cluster_id, *sol.functions[chosen[i]].mode, rayleigh, std::move(v)});
      }
      begin = end;
    }

    std::stable_sort(found.begin(), found.end(), [](const Labelled& a, const Labelled& b) {
      return std::tuple(a.cluster, a.label.norm2(), a.label) <
             std::tuple(b.cluster, b.label.norm2(), b.label);
    });

    for (const auto& f : found) {
      modes_.emplace_back(f.label);
      eigenvalues_.push_back(f.eigenvalue);
      std::vector<ModeTerm> terms;
      for (std::size_t j = 1; j < sol.functions.size(); ++j) {
        const double c = f.vector[static_cast<Eigen::Index>(j)];
        if (std::abs(c) > 1e-18) terms.push_back({*sol.functions[j].mode, c});
      }
      // Zero under the rho-weighted mean, not under the flat one.
      constants_.push_back(f.vector[0]);
      terms_.push_back(std::move(terms));
    }
  }

  void check_residuals() const {
    const QuadratureGrid grid = make_grid(std::nullopt);
    const MetricSamples m = metric(grid.nodes);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const ScalarJet y = evaluate(i, grid.nodes);
      const Eigen::ArrayXd lap = m.ginv[0] * (y.dd[0] + y.dd[2]);
      const Eigen::ArrayXd r = lap + eigenvalues_[i] * y.value;
      const double norm = std::sqrt((grid.weights * m.rho * r * r).sum());
      if (!(norm <= kResidualTolerance)) {
        throw Error(ErrorCode::EigensolverResidual,
                    "eigen-residual " + std::to_string(norm) + " for " + to_label(modes_[i]));
      }
    }
  }

  int band_;
  int box_ = 0;
  ConformalFactor factor_;
  std::vector<std::vector<ModeTerm>> terms_;
  std::vector<double> constants_;
};

}  // namespace

std::shared_ptr<const SpectralModel> make_conformal_torus_model(const ManifoldSpec& spec) {
  return std::make_shared<ConformalTorusModel>(spec);
}

Eigen::ArrayXd conformal_curvature(const ManifoldSpec& spec, const Points& points) {
  return ConformalTorusModel::curvature_of(ConformalFactor(spec.conformal_coefficients), points);
}

}  // namespace lieconst::detail
