#include <doctest.h>

#include <cmath>
#include <memory>

#include "lieconst/error.hpp"
#include "lieconst/geometry.hpp"
#include "lieconst/oracle.hpp"
#include "lieconst/tensors.hpp"
#include "lieconst/theorems.hpp"

using namespace lieconst;

namespace {

constexpr Parity C = Parity::Cos;

std::shared_ptr<const Basis> shared(const ManifoldSpec& spec) {
  return std::make_shared<const Basis>(build_basis(spec));
}

double max_abs(const Components& x) { return std::max(x[0].abs().maxCoeff(), x[1].abs().maxCoeff()); }

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("generator divergences and norms") {
  for (const ManifoldSpec& spec : {ManifoldSpec::flat_torus(2), ManifoldSpec::round_sphere(3),
                                   ManifoldSpec::conformal_torus(2, {{TorusMode{1, 0, C}, 0.1}})}) {
    const Basis b = build_basis(spec);
    for (std::size_t a = 0; a < b.size(); ++a) {
      const Eigen::ArrayXd div_l = divergence(b, generator_jet(b, {GeneratorKind::L, a}));
      const Eigen::ArrayXd div_phi = divergence(b, generator_jet(b, {GeneratorKind::Phi, a}));
      CHECK((div_l + b.jet(a).value).abs().maxCoeff() < 1e-10);
      CHECK(div_phi.abs().maxCoeff() < 1e-10);
    }
    FieldAlgebra alg(std::make_shared<const Basis>(b));
    for (std::size_t r = 0; r < b.harmonic_count(); ++r) {
      const auto field = generator_field(b, {GeneratorKind::H, r});
      CHECK(alg.norm(field.samples) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("lie bracket basics") {
  const auto b = shared(ManifoldSpec::flat_torus(2));
  FieldAlgebra alg(b);
  const auto x = generator_field(*b, {GeneratorKind::Phi, b->index_of(TorusMode{1, 1, C})});
  CHECK(max_abs(lie_bracket(alg, x, x).samples) < 1e-12);

  const auto h1 = generator_field(*b, {GeneratorKind::H, 0});
  const auto h2 = generator_field(*b, {GeneratorKind::H, 1});
  CHECK(max_abs(lie_bracket(alg, h1, h2).samples) == 0.0);

  const std::size_t c10 = b->index_of(TorusMode{1, 0, C}), c01 = b->index_of(TorusMode{0, 1, C});
  const auto pa = generator_field(*b, {GeneratorKind::Phi, c10});
  const auto pb = generator_field(*b, {GeneratorKind::Phi, c01});
  const SpectralVectorField br = lie_bracket(alg, pa, pb);
  REQUIRE(br.coefficients);
  const SparseRank3 g = compute_g(*b);
  for (std::size_t e = 0; e < b->size(); ++e) {
    CHECK(br.coefficients->phi(e) == doctest::Approx(g(c10, c01, e)).epsilon(1e-10).scale(1.0));
  }
  CHECK(br.coefficients->l.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("lie bracket errors") {
  const auto b = shared(ManifoldSpec::flat_torus(2));
  FieldAlgebra alg(b);
  const std::size_t c10 = b->index_of(TorusMode{1, 0, C});
  const auto l = generator_field(*b, {GeneratorKind::L, c10});
  const auto p = generator_field(*b, {GeneratorKind::Phi, c10});
  // e~ couples (1,0) with itself into (2,0), which is outside band 2.
  CHECK(code_of([&] { lie_bracket(alg, l, p); }) == ErrorCode::BandOverflow);

  SpectralVectorField bare{l.samples, std::nullopt};
  CHECK(code_of([&] { lie_bracket(alg, bare, p); }) == ErrorCode::MissingSpectralData);

  const Basis sphere = build_basis(ManifoldSpec::round_sphere(2));
  CHECK(code_of([&] { generator_field(sphere, {GeneratorKind::H, 0}); }) == ErrorCode::NoHarmonicFields);
  CHECK(code_of([&] { generator_field(*b, {GeneratorKind::H, 2}); }) == ErrorCode::UnknownMode);

  const auto ct = shared(ManifoldSpec::conformal_torus(2, {{TorusMode{1, 0, C}, 0.1}}));
  FieldAlgebra ct_alg(ct);
  const auto lc = generator_field(*ct, {GeneratorKind::L, 0});
  const auto pc = generator_field(*ct, {GeneratorKind::Phi, 1});
  const SpectralVectorField open = lie_bracket(ct_alg, lc, pc);
  CHECK_FALSE(open.coefficients);
  CHECK(open.samples[0].size() == ct->grid_size());
}

TEST_CASE("hodge decomposition examples") {
  const auto b = shared(ManifoldSpec::flat_torus(2));
  FieldAlgebra alg(b);
  for (std::size_t a = 0; a < b->size(); ++a) {
    const HodgeParts parts = hodge_decompose(alg, generator_field(*b, {GeneratorKind::L, a}));
    Coefficients want = Coefficients::unit(*b, {GeneratorKind::L, a});
    CHECK((parts.coefficients - want).max_abs() < 1e-10);
    CHECK(parts.residual < 1e-12);

    const HodgeParts curl = hodge_decompose(alg, generator_field(*b, {GeneratorKind::Phi, a}));
    CHECK(max_abs(curl.gradient.samples) < 1e-12);
    CHECK(max_abs(curl.harmonic.samples) < 1e-12);
  }

  const Eigen::Index n = b->grid_size();
  SpectralVectorField constant{{Eigen::ArrayXd::Constant(n, 0.3), Eigen::ArrayXd::Constant(n, -1.2)}, std::nullopt};
  const HodgeParts parts = hodge_decompose(alg, constant);
  CHECK(max_abs(parts.gradient.samples) < 1e-12);
  CHECK(max_abs(parts.curl.samples) < 1e-12);
  CHECK((parts.harmonic.samples[0] - 0.3).abs().maxCoeff() < 1e-12);
  CHECK((parts.harmonic.samples[1] + 1.2).abs().maxCoeff() < 1e-12);

  // A (2,0) curl field lies outside band 2 and cannot be represented.
  const Eigen::ArrayXd& x1 = b->grid().nodes.x1;
  const SpectralVectorField far{{Eigen::ArrayXd::Zero(n), (4.0 * kPi * x1).sin()}, std::nullopt};
  CHECK(code_of([&] { hodge_decompose(alg, far); }) == ErrorCode::DecompositionResidual);
  CHECK(hodge_decompose(alg, far, ResidualPolicy::Report).residual > 0.5);
}

TEST_CASE("projector on the sphere") {
  const auto b = shared(ManifoldSpec::round_sphere(3));
  FieldAlgebra alg(b);
  for (std::size_t a = 0; a < b->size(); ++a) {
    const auto out = apply_projector(alg, generator_field(*b, {GeneratorKind::L, a}));
    CHECK(max_abs(out.samples) < 1e-12);
    const auto phi = generator_field(*b, {GeneratorKind::Phi, a});
    const auto kept = apply_projector(alg, phi);
    CHECK(max_abs({kept.samples[0] - phi.samples[0], kept.samples[1] - phi.samples[1]}) < 1e-12);
  }
}

TEST_CASE("L coefficient of [L, phi] is g on the sphere") {
  const ManifoldSpec spec = ManifoldSpec::round_sphere(3);
  const auto closure = shared(closure_spec(spec));
  CHECK(closure->spec().band == 6);
  FieldAlgebra alg(closure);
  const SparseRank3 g = compute_g(*closure);
  const Basis small = build_basis(spec);
  double worst = 0.0;
  for (std::size_t a = 0; a < small.size(); ++a) {
    for (std::size_t b = 0; b < small.size(); ++b) {
      const std::size_t ca = closure->index_of(small.mode(a)), cb = closure->index_of(small.mode(b));
      const ExtractedConstants ex = extract_constants(alg, {GeneratorKind::L, ca}, {GeneratorKind::Phi, cb});
      CHECK(ex.residual < 1e-10);
      for (std::size_t e = 0; e < closure->size(); ++e) {
        worst = std::max(worst, std::abs(ex.coefficients.l(e) - g(ca, cb, e)));
      }
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("[L, L] on the flat torus") {
  const auto closure = shared(closure_spec(ManifoldSpec::flat_torus(1)));
  const BracketTable t = assemble_bracket_table(closure);
  FieldAlgebra alg(closure);
  const std::size_t c10 = closure->index_of(TorusMode{1, 0, C}), s10 = closure->index_of(TorusMode{1, 0, Parity::Sin});
  const ExtractedConstants ex = extract_constants(alg, {GeneratorKind::L, c10}, {GeneratorKind::L, s10});
  const Coefficients want = t.bracket(Generator{GeneratorKind::L, c10}, Generator{GeneratorKind::L, s10});
  CHECK((ex.coefficients - want).max_abs() < 1e-10);
  CHECK(ex.coefficients.h(0) == doctest::Approx(t.k(c10, s10, 0)));
  CHECK(std::abs(ex.coefficients.h(0)) > 0.1);
}

TEST_CASE("closure spec") {
  CHECK(closure_spec(ManifoldSpec::flat_torus(3)).band == 12);
  CHECK(closure_spec(ManifoldSpec::round_sphere(4)).band == 8);
  CHECK(closure_spec(ManifoldSpec::conformal_torus(2, {})).band == 2);
}
