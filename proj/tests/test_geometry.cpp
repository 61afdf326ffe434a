#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lieconst/error.hpp"
#include "lieconst/geometry.hpp"
#include "lieconst/oracle.hpp"

using namespace lieconst;

namespace {

Points single(double a, double b) {
  Points p;
  p.x1 = Eigen::ArrayXd::Constant(1, a);
  p.x2 = Eigen::ArrayXd::Constant(1, b);
  return p;
}

ManifoldSpec ctorus(int band, double amp) {
  return ManifoldSpec::conformal_torus(band, {{TorusMode{1, 0, Parity::Cos}, amp}});
}

double gram_error(const Basis& basis) {
  double worst = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const double ip = basis.integrate(basis.jet(a).value * basis.jet(b).value);
      worst = std::max(worst, std::abs(ip - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double eigen_residual(const Basis& basis) {
  double worst = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const Eigen::ArrayXd r = basis.laplacian(basis.jet(a)) + basis.eigenvalue(a) * basis.jet(a).value;
    worst = std::max(worst, std::sqrt(basis.integrate(r * r)));
  }
  return worst;
}

// Eigenvalues of -Laplacian for the metric exp(2u) flat with
// u = u0 + a sqrt2 cos(2 pi x), by Fourier Galerkin in x for each
// wavenumber k2 in y. The mass matrix entries are I_|n-m|(2 sqrt2 a) / I_0.
std::vector<double> separable_spectrum(double a, int box) {
  const double z = 2.0 * std::numbers::sqrt2 * a;
  const double i0 = std::cyl_bessel_i(0.0, z);
  const int n = 2 * box + 1;
  Eigen::MatrixXd mass(n, n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) mass(p, q) = std::cyl_bessel_i(double(std::abs(p - q)), z) / i0;
  }
  std::vector<double> out;
  const double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
  for (int k2 = -box; k2 <= box; ++k2) {
    Eigen::MatrixXd stiff = Eigen::MatrixXd::Zero(n, n);
    for (int p = 0; p < n; ++p) {
      const int k1 = p - box;
      stiff(p, p) = four_pi2 * (k1 * k1 + k2 * k2);
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(stiff, mass);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      if (es.eigenvalues()(i) > 1e-8) out.push_back(es.eigenvalues()(i));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("flat torus band 2 modes and eigenvalues") {
  const Basis basis = build_basis(ManifoldSpec::flat_torus(2));
  CHECK(basis.size() == 8);
  CHECK(flat_torus_mode_count(2) == 8);
  CHECK(basis.harmonic_count() == 2);
  for (auto [k1, k2] : {std::pair{1, 0}, {0, 1}, {1, 1}, {1, -1}}) {
    for (Parity p : {Parity::Cos, Parity::Sin}) {
      CHECK(basis.find(TorusMode{k1, k2, p}).has_value());
    }
  }
  const std::size_t a = basis.index_of(TorusMode{1, 0, Parity::Cos});
  CHECK(basis.eigenvalue(a) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));
  CHECK(gram_error(basis) < 1e-12);
  CHECK(eigen_residual(basis) < 1e-9);
  CHECK(basis.band_closed());
}

TEST_CASE("round sphere band 2 modes and eigenvalues") {
  const Basis basis = build_basis(ManifoldSpec::round_sphere(2));
  CHECK(basis.size() == 8);
  CHECK(basis.harmonic_count() == 0);
  CHECK(harmonic_basis(basis).empty());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const int l = std::get<SphereMode>(basis.mode(a)).l;
    CHECK(basis.eigenvalue(a) == doctest::Approx(4.0 * kPi * l * (l + 1)).epsilon(1e-13));
  }
  CHECK(basis.integrate(Eigen::ArrayXd::Ones(basis.grid_size())) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(gram_error(basis) < 1e-12);
  CHECK(eigen_residual(basis) < 1e-8);
}

TEST_CASE("point values of the examples") {
  const Basis torus = build_basis(ManifoldSpec::flat_torus(1));
  const Points origin = single(0.0, 0.0);
  CHECK(eval_scalar(torus, TorusMode{1, 0, Parity::Cos}, origin)(0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(eval_scalar(torus, TorusMode{1, 0, Parity::Sin}, origin)(0)) < 1e-15);

  const Basis sphere = build_basis(ManifoldSpec::round_sphere(1));
  CHECK(eval_scalar(sphere, SphereMode{1, 0}, single(0.0, 0.3))(0) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("sphere modes agree with std::sph_legendre") {
  const Basis sphere = build_basis(ManifoldSpec::round_sphere(4));
  const double scale = std::sqrt(4.0 * kPi);
  Points pts;
  pts.x1 = Eigen::ArrayXd::LinSpaced(7, 0.1, 3.0);
  pts.x2 = Eigen::ArrayXd::LinSpaced(7, 0.4, 5.9);
  for (std::size_t a = 0; a < sphere.size(); ++a) {
    const auto [l, m] = std::get<SphereMode>(sphere.mode(a));
    const unsigned am = static_cast<unsigned>(std::abs(m));
    const Eigen::ArrayXd got = eval_scalar(sphere, sphere.mode(a), pts);
    for (Eigen::Index i = 0; i < pts.size(); ++i) {
      // std::sph_legendre carries the Condon-Shortley phase; the basis does not.
      const double sign = (am % 2 == 0) ? 1.0 : -1.0;
      double want = scale * sign * std::sph_legendre(unsigned(l), am, pts.x1(i));
      if (m > 0) want *= std::sqrt(2.0) * std::cos(m * pts.x2(i));
      if (m < 0) want *= std::sqrt(2.0) * std::sin(am * pts.x2(i));
      CHECK(got(i) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("gradients match finite differences") {
  const Basis torus = build_basis(ManifoldSpec::flat_torus(2));
  const Basis sphere = build_basis(ManifoldSpec::round_sphere(3));
  const double h = 1e-6;
  for (const Basis* b : {&torus, &sphere}) {
    for (std::size_t a = 0; a < b->size(); ++a) {
      const auto grad = grad_scalar(*b, b->mode(a), single(0.7, 0.45));
      const double f1 = (eval_scalar(*b, b->mode(a), single(0.7 + h, 0.45))(0) -
                         eval_scalar(*b, b->mode(a), single(0.7 - h, 0.45))(0)) / (2 * h);
      const double f2 = (eval_scalar(*b, b->mode(a), single(0.7, 0.45 + h))(0) -
                         eval_scalar(*b, b->mode(a), single(0.7, 0.45 - h))(0)) / (2 * h);
      CHECK(grad[0](0) == doctest::Approx(f1).epsilon(1e-6).scale(1.0));
      CHECK(grad[1](0) == doctest::Approx(f2).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("harmonic fields") {
  const Basis flat = build_basis(ManifoldSpec::flat_torus(2));
  REQUIRE(flat.harmonic_count() == 2);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t s = 0; s < 2; ++s) {
      const auto& hr = flat.harmonic_jet(r).v;
      const auto& hs = flat.harmonic_jet(s).v;
      const auto& g = flat.metric().g;
      const double ip = flat.integrate(g[0] * hr[0] * hs[0] + g[1] * (hr[0] * hs[1] + hr[1] * hs[0]) +
                                       g[2] * hr[1] * hs[1]);
      CHECK(ip == doctest::Approx(r == s ? 1.0 : 0.0).scale(1.0).epsilon(1e-13));
    }
  }

  const Basis ct = build_basis(ctorus(2, 0.1));
  REQUIRE(ct.harmonic_count() == 2);
  for (std::size_t r = 0; r < 2; ++r) {
    const VectorJet& h = ct.harmonic_jet(r);
    CHECK(divergence(ct, h).abs().maxCoeff() < 1e-9);
    // Curl-free: the lowered covector g_ab h^b is constant over the grid.
    const auto& g = ct.metric().g;
    const Eigen::ArrayXd low1 = g[0] * h.v[0] + g[1] * h.v[1];
    const Eigen::ArrayXd low2 = g[1] * h.v[0] + g[2] * h.v[1];
    CHECK(low1.maxCoeff() - low1.minCoeff() < 1e-9);
    CHECK(low2.maxCoeff() - low2.minCoeff() < 1e-9);
  }
}

TEST_CASE("gaussian curvature and Gauss-Bonnet") {
  const Points p = single(0.3, 0.8);
  CHECK(gaussian_curvature(ManifoldSpec::flat_torus(2), p)(0) == 0.0);
  CHECK(gaussian_curvature(ManifoldSpec::round_sphere(2), p)(0) == doctest::Approx(4.0 * kPi));

  const double a = 0.1;
  const double u0 = -0.5 * std::log(std::cyl_bessel_i(0.0, 2.0 * std::sqrt(2.0) * a));
  const double u_origin = u0 + a * std::sqrt(2.0);
  const double want = -std::exp(-2.0 * u_origin) * (-4.0 * kPi * kPi * a * std::sqrt(2.0));
  CHECK(gaussian_curvature(ctorus(2, a), single(0.0, 0.0))(0) == doctest::Approx(want).epsilon(1e-12));

  const Basis sphere = build_basis(ManifoldSpec::round_sphere(3));
  const Basis ct = build_basis(ctorus(2, 0.15));
  const auto total = [](const Basis& b) { return b.integrate(gaussian_curvature(b.spec(), b.grid().nodes)); };
  CHECK(total(sphere) == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  CHECK(std::abs(total(ct)) < 1e-10);
  CHECK(ct.integrate(Eigen::ArrayXd::Ones(ct.grid_size())) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("conformal torus spectrum") {
  const double a = 0.1;
  const Basis ct = build_basis(ctorus(2, a));
  CHECK(ct.size() >= 8);
  CHECK_FALSE(ct.band_closed());
  CHECK(gram_error(ct) < 1e-10);
  CHECK(eigen_residual(ct) < 1e-8);

  const std::vector<double> want = separable_spectrum(a, 12);
  std::vector<double> got = ct.eigenvalues();
  std::sort(got.begin(), got.end());
  REQUIRE(want.size() >= got.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
  }

  const Basis flat = build_basis(ManifoldSpec::flat_torus(2));
  std::vector<double> flat_mu = flat.eigenvalues();
  std::sort(flat_mu.begin(), flat_mu.end());
  // Coupling through the constant mode splits the |k|^2 = 2 cluster by about
  // 5.4% at this amplitude (the separable solve above agrees), so the 5%
  // bound holds for cluster means while single eigenvalues get 6%.
  for (std::size_t start = 0; start < flat_mu.size(); start += 4) {
    double got_mean = 0.0;
    for (std::size_t i = start; i < start + 4; ++i) {
      got_mean += got[i] / 4.0;
      CHECK(std::abs(got[i] - flat_mu[i]) <= 0.06 * flat_mu[i]);
    }
    CHECK(std::abs(got_mean - flat_mu[start]) <= 0.05 * flat_mu[start]);
  }
}

TEST_CASE("invalid configurations") {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("no exception");
    return ErrorCode::Io;
  };
  CHECK(code_of([] { build_basis(ManifoldSpec::flat_torus(0)); }) == ErrorCode::InvalidBand);
  CHECK(code_of([] { build_basis(ManifoldSpec::round_sphere(-1)); }) == ErrorCode::InvalidBand);
  CHECK(code_of([] {
          build_basis(ManifoldSpec::conformal_torus(2, {{TorusMode{1, 0, Parity::Cos}, std::nan("")}}));
        }) == ErrorCode::InvalidConformalFactor);
  const Basis torus = build_basis(ManifoldSpec::flat_torus(1));
  CHECK(code_of([&] { eval_scalar(torus, TorusMode{3, 0, Parity::Cos}, single(0, 0)); }) ==
        ErrorCode::UnknownMode);
  CHECK(code_of([&] { torus.index_of(SphereMode{1, 0}); }) == ErrorCode::UnknownMode);
  CHECK(code_of([] { parse_mode_label("q:1"); }) != ErrorCode::Io);
}

TEST_CASE("mode labels round-trip") {
  for (const ModeId& m : {ModeId{TorusMode{1, -1, Parity::Sin}}, ModeId{SphereMode{2, -1}}}) {
    CHECK(parse_mode_label(to_label(m)) == m);
  }
  CHECK(to_label(TorusMode{1, 0, Parity::Cos}) == "c:1,0");
  CHECK(harmonic_label(0) == "h:1");
}
