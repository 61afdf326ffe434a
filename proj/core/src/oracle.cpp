#include "lieconst/oracle.hpp"

#include <cmath>
#include <sstream>

#include "lieconst/error.hpp"

namespace lieconst {

namespace {

int sym(int a, int b) { return a + b; }

Coefficients unstack(const Eigen::VectorXd& v, Eigen::Index modes, Eigen::Index harmonics) {
  Coefficients c;
  c.l = v.segment(0, modes);
  c.phi = v.segment(modes, modes);
  c.h = v.segment(2 * modes, harmonics);
  return c;
}

void check_index(const Basis& basis, Generator g) {
  if (g.kind == GeneratorKind::H) {
    if (basis.harmonic_count() == 0) {
      throw Error(ErrorCode::NoHarmonicFields,
                  "H generators do not exist on " + to_string(basis.kind()));
    }
    if (g.index >= basis.harmonic_count()) {
      throw Error(ErrorCode::UnknownMode, "harmonic index " + std::to_string(g.index + 1) +
                                              " out of range");
    }
  } else if (g.index >= basis.size()) {
    throw Error(ErrorCode::UnknownMode, "mode index " + std::to_string(g.index) + " out of range");
  }
}

}  // namespace

VectorJet generator_jet(const Basis& basis, Generator g) {
  check_index(basis, g);
  if (g.kind == GeneratorKind::H) return basis.harmonic_jet(g.index);

  const ScalarJet& y = basis.jet(g.index);
  const MetricSamples& m = basis.metric();
  VectorJet x;
  if (g.kind == GeneratorKind::L) {
    const double inv_mu = 1.0 / basis.eigenvalue(g.index);
    for (int a = 0; a < 2; ++a) {
      x.v[a] = inv_mu * (m.ginv[sym(a, 0)] * y.d[0] + m.ginv[sym(a, 1)] * y.d[1]);
      for (int c = 0; c < 2; ++c) {
        Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(y.value.size());
        for (int b = 0; b < 2; ++b) {
          acc += m.dginv[c][sym(a, b)] * y.d[b] + m.ginv[sym(a, b)] * y.dd[sym(c, b)];
        }
        x.d[a][c] = inv_mu * acc;
      }
    }
    return x;
  }

  const Eigen::ArrayXd inv_rho = m.rho.inverse();
  x.v[0] = -y.d[1] * inv_rho;
  x.v[1] = y.d[0] * inv_rho;
  for (int c = 0; c < 2; ++c) {
    const Eigen::ArrayXd drho = m.drho[c] * inv_rho * inv_rho;
    x.d[0][c] = -y.dd[sym(c, 1)] * inv_rho + y.d[1] * drho;
    x.d[1][c] = y.dd[sym(c, 0)] * inv_rho - y.d[0] * drho;
  }
  return x;
}

SpectralVectorField generator_field(const Basis& basis, Generator g) {
  const VectorJet jet = generator_jet(basis, g);
  return {jet.v, Coefficients::unit(basis, g)};
}

Components bracket_samples(const VectorJet& x, const VectorJet& y) {
  Components out;
  for (int a = 0; a < 2; ++a) {
    out[a] = x.v[0] * y.d[a][0] + x.v[1] * y.d[a][1] - y.v[0] * x.d[a][0] - y.v[1] * x.d[a][1];
  }
  return out;
}

Eigen::ArrayXd divergence(const Basis& basis, const VectorJet& x) {
  const MetricSamples& m = basis.metric();
  return x.d[0][0] + x.d[1][1] + (x.v[0] * m.drho[0] + x.v[1] * m.drho[1]) / m.rho;
}

// ---------------------------------------------------------------------------
// FieldAlgebra
// ---------------------------------------------------------------------------

FieldAlgebra::FieldAlgebra(std::shared_ptr<const Basis> basis) : basis_(std::move(basis)) {
  if (!basis_) throw Error(ErrorCode::InvalidConfig, "null basis");
  const Basis& b = *basis_;
  const Eigen::Index p = b.grid_size();
  for (std::size_t a = 0; a < b.size(); ++a) {
    l_jets_.push_back(generator_jet(b, {GeneratorKind::L, a}));
    phi_jets_.push_back(generator_jet(b, {GeneratorKind::Phi, a}));
  }
  for (std::size_t r = 0; r < b.harmonic_count(); ++r) {
    h_jets_.push_back(generator_jet(b, {GeneratorKind::H, r}));
  }

  const auto gens = all_generators(b);
  const auto& m = b.metric();
  const Eigen::ArrayXd& w = b.grid().weights;
  const Eigen::ArrayXd& mu_w = b.measure();
  projector_.resize(static_cast<Eigen::Index>(gens.size()), 2 * p);
  for (std::size_t row = 0; row < gens.size(); ++row) {
    const Generator g = gens[row];
    const auto r = static_cast<Eigen::Index>(row);
    Eigen::ArrayXd c1, c2;
    if (g.kind == GeneratorKind::L) {
      const ScalarJet& y = b.jet(g.index);
      c1 = mu_w * y.d[0];
      c2 = mu_w * y.d[1];
    } else if (g.kind == GeneratorKind::Phi) {
      const ScalarJet& y = b.jet(g.index);
      const Eigen::ArrayXd s = w / b.eigenvalue(g.index);
      c1 = s * (y.d[0] * m.g[1] - y.d[1] * m.g[0]);
      c2 = s * (y.d[0] * m.g[2] - y.d[1] * m.g[1]);
    } else {
      const auto& h = h_jets_[g.index].v;
      c1 = mu_w * (m.g[0] * h[0] + m.g[1] * h[1]);
      c2 = mu_w * (m.g[1] * h[0] + m.g[2] * h[1]);
    }
    projector_.row(r).segment(0, p) = c1.matrix().transpose();
    projector_.row(r).segment(p, p) = c2.matrix().transpose();
  }
}

const VectorJet& FieldAlgebra::jet(Generator g) const {
  check_index(*basis_, g);
  switch (g.kind) {
    case GeneratorKind::L: return l_jets_[g.index];
    case GeneratorKind::Phi: return phi_jets_[g.index];
    case GeneratorKind::H: return h_jets_[g.index];
  }
  throw Error(ErrorCode::UnknownMode, "bad generator kind");
}

VectorJet FieldAlgebra::synthesize_jet(const Coefficients& c) const {
  const Eigen::Index p = basis_->grid_size();
  VectorJet out = VectorJet::zero(p);
  auto accumulate = [&](const std::vector<VectorJet>& jets, const Eigen::VectorXd& coef) {
    for (Eigen::Index i = 0; i < coef.size(); ++i) {
      const double s = coef[i];
      if (s == 0.0) continue;
      const VectorJet& j = jets[static_cast<std::size_t>(i)];
      for (int a = 0; a < 2; ++a) {
        out.v[a] += s * j.v[a];
        for (int k = 0; k < 2; ++k) out.d[a][k] += s * j.d[a][k];
      }
    }
  };
  if (c.l.size() != static_cast<Eigen::Index>(l_jets_.size()) ||
      c.h.size() != static_cast<Eigen::Index>(h_jets_.size())) {
    throw Error(ErrorCode::GridMismatch, "coefficients belong to a different basis");
  }
  accumulate(l_jets_, c.l);
  accumulate(phi_jets_, c.phi);
  accumulate(h_jets_, c.h);
  return out;
}

Components FieldAlgebra::synthesize(const Coefficients& c) const {
  return synthesize_jet(c).v;
}

Coefficients FieldAlgebra::project(const Components& x) const {
  const Eigen::Index p = basis_->grid_size();
  if (x[0].size() != p || x[1].size() != p) {
    throw Error(ErrorCode::GridMismatch, "field sampled on a different grid");
  }
  Eigen::VectorXd flat(2 * p);
  flat << x[0].matrix(), x[1].matrix();
  const Eigen::VectorXd v = projector_ * flat;
  return unstack(v, static_cast<Eigen::Index>(basis_->size()),
                 static_cast<Eigen::Index>(basis_->harmonic_count()));
}

double FieldAlgebra::norm(const Components& x) const {
  const auto& m = basis_->metric();
  const Eigen::ArrayXd q = m.g[0] * x[0] * x[0] + 2.0 * m.g[1] * x[0] * x[1] + m.g[2] * x[1] * x[1];
  return std::sqrt(std::max(0.0, basis_->integrate(q)));
}

double FieldAlgebra::relative_residual(const Components& x, const Components& approx) const {
  const Components diff{x[0] - approx[0], x[1] - approx[1]};
  return norm(diff) / std::max(norm(x), 1.0);
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

SpectralVectorField lie_bracket(const FieldAlgebra& algebra, const SpectralVectorField& x,
                                const SpectralVectorField& y, double tolerance) {
  if (!x.coefficients || !y.coefficients) {
    throw Error(ErrorCode::MissingSpectralData,
                "lie_bracket differentiates spectrally and needs coefficients on both fields");
  }
  const Components samples =
      bracket_samples(algebra.synthesize_jet(*x.coefficients), algebra.synthesize_jet(*y.coefficients));
  if (!algebra.basis().band_closed()) return {samples, std::nullopt};

  Coefficients coef = algebra.project(samples);
  const double residual = algebra.relative_residual(samples, algebra.synthesize(coef));
  if (!(residual <= tolerance)) {
    std::ostringstream os;
    os << "bracket leaves the closure band (residual " << residual << ")";
    throw Error(ErrorCode::BandOverflow, os.str());
  }
  return {samples, std::move(coef)};
}

HodgeParts hodge_decompose(const FieldAlgebra& algebra, const SpectralVectorField& x,
                           ResidualPolicy policy, double tolerance) {
  const Basis& basis = algebra.basis();
  HodgeParts parts;
  parts.coefficients = algebra.project(x.samples);

  Coefficients grad = Coefficients::zero(basis);
  Coefficients curl = grad;
  Coefficients harm = grad;
  grad.l = parts.coefficients.l;
  curl.phi = parts.coefficients.phi;
  harm.h = parts.coefficients.h;
  parts.gradient = {algebra.synthesize(grad), grad};
  parts.curl = {algebra.synthesize(curl), curl};
  parts.harmonic = {algebra.synthesize(harm), harm};

  Components sum;
  for (int a = 0; a < 2; ++a) {
    sum[a] = parts.gradient.samples[a] + parts.curl.samples[a] + parts.harmonic.samples[a];
  }
  parts.residual = algebra.relative_residual(x.samples, sum);
  if (policy == ResidualPolicy::Enforce && basis.band_closed() && !(parts.residual <= tolerance)) {
    std::ostringstream os;
    os << "Hodge parts miss the input by " << parts.residual;
    throw Error(ErrorCode::DecompositionResidual, os.str());
  }
  return parts;
}

SpectralVectorField apply_projector(const FieldAlgebra& algebra, const SpectralVectorField& x,
                                    double tolerance) {
  const HodgeParts parts = hodge_decompose(algebra, x, ResidualPolicy::Enforce, tolerance);
  Components out{x.samples[0] - parts.gradient.samples[0], x.samples[1] - parts.gradient.samples[1]};
  std::optional<Coefficients> coef;
  if (algebra.basis().band_closed()) {
    Coefficients c = parts.coefficients;
    c.l.setZero();
    coef = std::move(c);
  }
  return {std::move(out), std::move(coef)};
}

ExtractedConstants extract_constants(const FieldAlgebra& algebra, Generator a, Generator b) {
  const Components samples = bracket_samples(algebra.jet(a), algebra.jet(b));
  ExtractedConstants out;
  out.coefficients = algebra.project(samples);
  out.residual = algebra.relative_residual(samples, algebra.synthesize(out.coefficients));
  return out;
}

ManifoldSpec closure_spec(const ManifoldSpec& spec) {
  ManifoldSpec out = spec;
  switch (spec.kind) {
    case ManifoldKind::FlatTorus: out.band = 4 * spec.band; break;
    case ManifoldKind::RoundSphere: out.band = 2 * spec.band; break;
    case ManifoldKind::ConformalTorus: break;
  }
  return out;
}

}  // namespace lieconst
