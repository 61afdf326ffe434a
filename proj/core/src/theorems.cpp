#include "lieconst/theorems.hpp"

#include "lieconst/error.hpp"
#include "lieconst/tensors.hpp"

namespace lieconst {

namespace {

constexpr const char* kNoHarmonicNote =
    "no harmonic fields on a genus-0 manifold; the H generators are absent";

bool no_harmonics(const Basis& basis, SparseRank3& out) {
  if (basis.harmonic_count() > 0) return false;
  out.mark_not_applicable(kNoHarmonicNote);
  return true;
}

/// h_(r)b = g_{bc} h_(r)^c on the grid.
std::array<Eigen::ArrayXd, 2> lowered(const Basis& basis, std::size_t r) {
  const auto& m = basis.metric();
  const auto& h = basis.harmonic_jet(r).v;
  return {m.g[0] * h[0] + m.g[1] * h[1], m.g[1] * h[0] + m.g[2] * h[1]};
}

/// g^{ab} d_a Y_i d_b Y_j on the grid.
Eigen::ArrayXd grad_dot(const Basis& basis, std::size_t i, std::size_t j) {
  const auto& m = basis.metric();
  const auto& a = basis.jet(i).d;
  const auto& b = basis.jet(j).d;
  return m.ginv[0] * a[0] * b[0] + m.ginv[1] * (a[0] * b[1] + a[1] * b[0]) + m.ginv[2] * a[1] * b[1];
}

}  // namespace

SparseRank3 compute_g_rr(const Basis& basis) {
  SparseRank3 out(Family::GRR);
  if (no_harmonics(basis, out)) return out;
  const auto& rho = basis.metric().rho;
  for (std::size_t r = 0; r < basis.harmonic_count(); ++r) {
    for (std::size_t s = 0; s < basis.harmonic_count(); ++s) {
      const auto& h = basis.harmonic_jet(r).v;
      const auto& k = basis.harmonic_jet(s).v;
      const Eigen::ArrayXd form = rho * (h[0] * k[1] - h[1] * k[0]);
      for (std::size_t eps = 0; eps < basis.size(); ++eps) {
        out.set(r, s, eps, basis.integrate(form * basis.jet(eps).value));
      }
    }
  }
  return out;
}

SparseRank3 compute_g_alpha_r(const Basis& basis) {
  SparseRank3 out(Family::GAlphaR);
  if (no_harmonics(basis, out)) return out;
  for (std::size_t r = 0; r < basis.harmonic_count(); ++r) {
    const auto& h = basis.harmonic_jet(r).v;
    for (std::size_t eps = 0; eps < basis.size(); ++eps) {
      const auto& d = basis.jet(eps).d;
      const Eigen::ArrayXd deriv = h[0] * d[0] + h[1] * d[1];
      for (std::size_t alpha = 0; alpha < basis.size(); ++alpha) {
        out.set(alpha, r, eps, basis.integrate(basis.jet(alpha).value * deriv));
      }
    }
  }
  return out;
}

SparseRank3 compute_g_tilde(const Basis& basis, const SparseRank3& g) {
  SparseRank3 out(Family::GTilde);
  for (const auto& [key, v] : g.entries()) {
    const auto [a, b, e] = key;
    const double ma = basis.eigenvalue(a);
    const double mb = basis.eigenvalue(b);
    const double me = basis.eigenvalue(e);
    out.set(a, b, e, (me - ma - mb) / (ma * mb * me) * v);
  }
  return out;
}

SparseRank3 compute_k(const Basis& basis, const SparseRank3& g_alpha_r) {
  SparseRank3 out(Family::K);
  if (no_harmonics(basis, out)) return out;
  for (const auto& [key, v] : g_alpha_r.entries()) {
    const auto [alpha, r, eps] = key;
    out.set(alpha, eps, r, (1.0 / basis.eigenvalue(alpha) + 1.0 / basis.eigenvalue(eps)) * v);
  }
  return out;
}

SparseRank3 compute_e_tilde(const Basis& basis, const SparseRank3& d, const SparseRank3& e) {
  (void)basis;
  SparseRank3 out(Family::ETilde);
  // e is supported on permutations of the support of d, and d is symmetric.
  for (const auto& [key, v] : d.entries()) {
    const auto [a, b, eps] = key;
    out.set(a, b, eps, v + 0.5 * (e(a, b, eps) - e(eps, a, b)));
  }
  return out;
}

SparseRank3 compute_e_tilde_direct(const Basis& basis) {
  SparseRank3 out(Family::ETilde);
  const std::size_t n = basis.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Eigen::ArrayXd ab = grad_dot(basis, a, b);
      for (std::size_t eps = 0; eps < n; ++eps) {
        if (!triple_admissible(basis, a, b, eps)) continue;
        const double first = basis.integrate(ab * basis.jet(eps).value) / basis.eigenvalue(a);
        const double second =
            basis.integrate(grad_dot(basis, eps, b) * basis.jet(a).value) / basis.eigenvalue(eps);
        out.set(a, b, eps, first + second);
      }
    }
  }
  return out;
}

SparseRank3 compute_c(const Basis& basis) {
  SparseRank3 out(Family::C);
  if (no_harmonics(basis, out)) return out;
  const auto& rho = basis.metric().rho;
  for (std::size_t r = 0; r < basis.harmonic_count(); ++r) {
    const auto h = lowered(basis, r);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const auto& d = basis.jet(b).d;
      const Eigen::ArrayXd curl = (d[0] * h[1] - d[1] * h[0]) / rho;
      for (std::size_t a = 0; a < basis.size(); ++a) {
        out.set(a, b, r, basis.integrate(basis.jet(a).value * curl));
      }
    }
  }
  return out;
}

SparseRank3 compute_c_tilde(const Basis& basis, const SparseRank3& c) {
  SparseRank3 out(Family::CTilde);
  if (no_harmonics(basis, out)) return out;
  for (const auto& [key, v] : c.entries()) {
    const auto [eps, alpha, r] = key;
    out.set(alpha, r, eps, (1.0 / basis.eigenvalue(alpha) - 1.0 / basis.eigenvalue(eps)) * v);
  }
  return out;
}

SparseRank3 compute_y(const Basis& basis) {
  SparseRank3 out(Family::Y);
  if (no_harmonics(basis, out)) return out;
  for (std::size_t r = 0; r < basis.harmonic_count(); ++r) {
    const auto h = lowered(basis, r);
    for (std::size_t s = 0; s < basis.harmonic_count(); ++s) {
      const auto& k = basis.harmonic_jet(s).v;
      const Eigen::ArrayXd dot = h[0] * k[0] + h[1] * k[1];
      for (std::size_t a = 0; a < basis.size(); ++a) {
        out.set(a, r, s, basis.integrate(basis.jet(a).value * dot));
      }
    }
  }
  return out;
}

const SparseRank3& BracketTable::tensor(Family family) const {
  return const_cast<BracketTable&>(*this).tensor(family);
}

SparseRank3& BracketTable::tensor(Family family) {
  switch (family) {
    case Family::G: return g;
    case Family::D: return d;
    case Family::E: return e;
    case Family::GTilde: return g_tilde;
    case Family::K: return k;
    case Family::ETilde: return e_tilde;
    case Family::C: return c;
    case Family::CTilde: return c_tilde;
    case Family::Y: return y;
    case Family::GRR: return g_rr;
    case Family::GAlphaR: return g_alpha_r;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown family");
}

Coefficients BracketTable::bracket(Generator a, Generator b) const {
  using K = GeneratorKind;
  auto rank = [](K kind) { return kind == K::L ? 0 : kind == K::Phi ? 1 : 2; };
  if (rank(a.kind) > rank(b.kind)) return -1.0 * bracket(b, a);

  Coefficients out = Coefficients::zero(*basis);
  auto add = [](Eigen::VectorXd& block, double scale) {
    return [&block, scale](std::size_t idx, double v) {
      block[static_cast<Eigen::Index>(idx)] += scale * v;
    };
  };
  const std::size_t i = a.index;
  const std::size_t j = b.index;

  if (a.kind == K::Phi && b.kind == K::Phi) {
    g.for_each_in_slice(i, j, add(out.phi, 1.0));
  } else if (a.kind == K::H && b.kind == K::H) {
    g_rr.for_each_in_slice(i, j, add(out.phi, 1.0));
  } else if (a.kind == K::Phi && b.kind == K::H) {
    g_alpha_r.for_each_in_slice(i, j, add(out.phi, 1.0));
  } else if (a.kind == K::L && b.kind == K::L) {
    e.for_each_in_slice(i, j, add(out.l, 0.5));
    e.for_each_in_slice(j, i, add(out.l, -0.5));
    g_tilde.for_each_in_slice(i, j, add(out.phi, 1.0));
    k.for_each_in_slice(i, j, add(out.h, 1.0));
  } else if (a.kind == K::L && b.kind == K::Phi) {
    g.for_each_in_slice(i, j, add(out.l, 1.0));
    e_tilde.for_each_in_slice(i, j, add(out.phi, 1.0));
    c.for_each_in_slice(i, j, add(out.h, 1.0));
  } else {  // L, H
    g_alpha_r.for_each_in_slice(i, j, add(out.l, 1.0));
    c_tilde.for_each_in_slice(i, j, add(out.phi, 1.0));
    y.for_each_in_slice(i, j, add(out.h, 1.0));
  }
  return out;
}

Coefficients BracketTable::bracket(const Coefficients& x, const Coefficients& y_) const {
  Coefficients out = Coefficients::zero(*basis);
  const auto gens = all_generators(*basis);
  for (Generator a : gens) {
    const double xa = x.at(a);
    if (xa == 0.0) continue;
    for (Generator b : gens) {
      const double yb = y_.at(b);
      if (yb == 0.0) continue;
      out += (xa * yb) * bracket(a, b);
    }
  }
  return out;
}

BracketTable assemble_bracket_table(std::shared_ptr<const Basis> basis) {
  if (!basis) throw Error(ErrorCode::InvalidConfig, "null basis");
  BracketTable t;
  t.basis = basis;
  const Basis& b = *basis;
  t.g = compute_g(b);
  t.d = compute_d(b);
  t.e = compute_e(b, t.d);
  t.g_rr = compute_g_rr(b);
  t.g_alpha_r = compute_g_alpha_r(b);
  t.g_tilde = compute_g_tilde(b, t.g);
  t.k = compute_k(b, t.g_alpha_r);
  t.e_tilde = compute_e_tilde(b, t.d, t.e);
  t.c = compute_c(b);
  t.c_tilde = compute_c_tilde(b, t.c);
  t.y = compute_y(b);
  return t;
}

}  // namespace lieconst
