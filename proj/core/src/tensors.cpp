#include "lieconst/tensors.hpp"

#include <cmath>
#include <complex>

#include "lieconst/error.hpp"

namespace lieconst {

namespace {

using cd = std::complex<double>;

/// cos(t) = (e^{it} + e^{-it})/2, sin(t) = (e^{it} - e^{-it})/(2i).
cd wave_weight(Parity parity, int sign) {
  return parity == Parity::Cos ? cd(0.5, 0.0) : cd(0.0, -0.5 * sign);
}

/// Sum over sign choices with s1 k1 + s2 k2 + s3 k3 = 0 of the product of
/// wave weights, times the extra factor `f(s)`.
template <typename F>
cd signed_sum(const TorusMode& a, const TorusMode& b, const TorusMode& c, F&& f) {
  cd total = 0.0;
  for (int sa : {1, -1}) {
    for (int sb : {1, -1}) {
      for (int sc : {1, -1}) {
        if (sa * a.k1 + sb * b.k1 + sc * c.k1 != 0) continue;
        if (sa * a.k2 + sb * b.k2 + sc * c.k2 != 0) continue;
        total += wave_weight(a.parity, sa) * wave_weight(b.parity, sb) *
                 wave_weight(c.parity, sc) * f(sb, sc);
      }
    }
  }
  return total;
}

double torus_d(const TorusMode& a, const TorusMode& b, const TorusMode& c) {
  const double amp = 2.0 * std::sqrt(2.0);
  return amp * signed_sum(a, b, c, [](int, int) { return cd(1.0, 0.0); }).real();
}

double torus_g(const TorusMode& a, const TorusMode& b, const TorusMode& c) {
  const double amp = 2.0 * std::sqrt(2.0);
  const double cross = static_cast<double>(b.k1 * c.k2 - b.k2 * c.k1);
  if (cross == 0.0) return 0.0;
  // d_i e^{i s 2pi k.phi} = i s 2pi k_i e^{...}
  return amp *
         signed_sum(a, b, c, [&](int sb, int sc) {
           return cd(-4.0 * kPi * kPi * sb * sc * cross, 0.0);
         }).real();
}

const TorusMode& torus_mode(const Basis& basis, std::size_t i) {
  return std::get<TorusMode>(basis.mode(i));
}

template <typename F>
void for_each_admissible(const Basis& basis, F&& f) {
  const std::size_t n = basis.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (triple_admissible(basis, i, j, k)) f(i, j, k);
      }
    }
  }
}

}  // namespace

bool triple_admissible(const Basis& basis, std::size_t i, std::size_t j, std::size_t k) {
  switch (basis.kind()) {
    case ManifoldKind::FlatTorus: {
      const auto& a = torus_mode(basis, i);
      const auto& b = torus_mode(basis, j);
      const auto& c = torus_mode(basis, k);
      for (int sb : {1, -1}) {
        for (int sc : {1, -1}) {
          if (a.k1 + sb * b.k1 + sc * c.k1 == 0 && a.k2 + sb * b.k2 + sc * c.k2 == 0) return true;
        }
      }
      return false;
    }
    case ManifoldKind::RoundSphere: {
      const int la = std::get<SphereMode>(basis.mode(i)).l;
      const int lb = std::get<SphereMode>(basis.mode(j)).l;
      const int lc = std::get<SphereMode>(basis.mode(k)).l;
      return std::abs(la - lb) <= lc && lc <= la + lb;
    }
    case ManifoldKind::ConformalTorus: return true;
  }
  return true;
}

SparseRank3 compute_g_quadrature(const Basis& basis) {
  SparseRank3 g(Family::G);
  const std::size_t n = basis.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      const auto& yj = basis.jet(j);
      const auto& yk = basis.jet(k);
      const Eigen::ArrayXd bracket = yj.d[0] * yk.d[1] - yj.d[1] * yk.d[0];
      for (std::size_t i = 0; i < n; ++i) {
        if (!triple_admissible(basis, i, j, k)) continue;
        g.set(i, j, k, basis.integrate_coordinate(basis.jet(i).value * bracket));
      }
    }
  }
  return g;
}

SparseRank3 compute_g(const Basis& basis) {
  if (basis.kind() != ManifoldKind::FlatTorus) return compute_g_quadrature(basis);
  SparseRank3 g(Family::G);
  for_each_admissible(basis, [&](std::size_t i, std::size_t j, std::size_t k) {
    g.set(i, j, k, torus_g(torus_mode(basis, i), torus_mode(basis, j), torus_mode(basis, k)));
  });
  return g;
}

SparseRank3 compute_d_quadrature(const Basis& basis) {
  SparseRank3 d(Family::D);
  const std::size_t n = basis.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const Eigen::ArrayXd product = basis.jet(j).value * basis.jet(k).value;
      for (std::size_t i = 0; i < n; ++i) {
        if (!triple_admissible(basis, i, j, k)) continue;
        d.set(i, j, k, basis.integrate(basis.jet(i).value * product));
      }
    }
  }
  return d;
}

SparseRank3 compute_d(const Basis& basis) {
  if (basis.kind() != ManifoldKind::FlatTorus) return compute_d_quadrature(basis);
  SparseRank3 d(Family::D);
  for_each_admissible(basis, [&](std::size_t i, std::size_t j, std::size_t k) {
    d.set(i, j, k, torus_d(torus_mode(basis, i), torus_mode(basis, j), torus_mode(basis, k)));
  });
  return d;
}

SparseRank3 compute_e(const Basis& basis, const SparseRank3& d) {
  if (d.family() != Family::D) {
    throw Error(ErrorCode::InvalidConfig, "compute_e expects the d tensor, got " +
                                              family_name(d.family()));
  }
  SparseRank3 e(Family::E);
  for (const auto& [key, v] : d.entries()) {
    const auto [i, j, k] = key;
    e.set(i, j, k, (basis.eigenvalue(j) - basis.eigenvalue(k)) / basis.eigenvalue(i) * v);
  }
  return e;
}

}  // namespace lieconst
