#include "lieconst/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "lieconst/error.hpp"
#include "lieconst/io.hpp"
#include "lieconst/oracle.hpp"
#include "lieconst/tensors.hpp"

namespace lieconst {

namespace {

struct Permutation {
  std::array<int, 3> order;  // permuted key = (key[order[0]], key[order[1]], key[order[2]])
  double sign;
};

CheckRecord make_check(std::string id, double tolerance) {
  CheckRecord rec;
  rec.id = std::move(id);
  rec.tolerance = tolerance;
  return rec;
}

void finish(CheckRecord& rec) {
  rec.pass = rec.max_abs_error <= rec.tolerance;
}

/// Checks T(key) = sign * T(permuted key) over all stored entries.
CheckRecord check_permutations(const std::string& id, const Basis& basis, const SparseRank3& t,
                               const std::vector<Permutation>& perms, double tolerance) {
  CheckRecord rec = make_check(id, tolerance);
  if (t.status() == TensorStatus::NotApplicable) {
    rec.detail = "vacuous: " + t.note();
    return rec;
  }
  Index3 worst{};
  for (const auto& [key, v] : t.entries()) {
    for (const auto& p : perms) {
      const Index3 q{key[p.order[0]], key[p.order[1]], key[p.order[2]]};
      const double err = std::abs(v - p.sign * t(q[0], q[1], q[2]));
      ++rec.count;
      if (err > rec.max_abs_error) {
        rec.max_abs_error = err;
        worst = key;
      }
    }
    rec.max_abs_value = std::max(rec.max_abs_value, std::abs(v));
  }
  finish(rec);
  if (!rec.pass) rec.detail = "worst triple " + entry_label(basis, t.family(), worst);
  return rec;
}

CheckRecord compare_tensors(const std::string& id, const Basis& basis, const SparseRank3& a,
                            const SparseRank3& b, double tolerance) {
  CheckRecord rec = make_check(id, tolerance);
  Index3 worst{};
  auto visit = [&](const SparseRank3& x) {
    for (const auto& [key, v] : x.entries()) {
      const double err = std::abs(a(key[0], key[1], key[2]) - b(key[0], key[1], key[2]));
      ++rec.count;
      rec.max_abs_value = std::max(rec.max_abs_value, std::abs(v));
      if (err > rec.max_abs_error) {
        rec.max_abs_error = err;
        worst = key;
      }
    }
  };
  visit(a);
  visit(b);
  finish(rec);
  if (!rec.pass) rec.detail = "worst triple " + entry_label(basis, a.family(), worst);
  return rec;
}

const std::vector<Permutation> kTotallyAntisymmetric{
    {{1, 0, 2}, -1.0}, {{0, 2, 1}, -1.0}, {{2, 1, 0}, -1.0}, {{1, 2, 0}, 1.0}, {{2, 0, 1}, 1.0}};
const std::vector<Permutation> kTotallySymmetric{
    {{1, 0, 2}, 1.0}, {{0, 2, 1}, 1.0}, {{2, 1, 0}, 1.0}, {{1, 2, 0}, 1.0}, {{2, 0, 1}, 1.0}};

}  // namespace

std::string to_string(ReportStatus status) {
  switch (status) {
    case ReportStatus::Ok: return "ok";
    case ReportStatus::NoAdmissibleTriple: return "no admissible triple";
    case ReportStatus::NotApplicable: return "not applicable";
  }
  return "unknown";
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

const CheckRecord* VerificationReport::find(const std::string& id) const {
  for (const auto& c : checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

CheckRecord& VerificationReport::add(CheckRecord record) {
  checks.push_back(std::move(record));
  return checks.back();
}

Tolerances Tolerances::defaults(ManifoldKind kind) {
  Tolerances t;
  switch (kind) {
    case ManifoldKind::FlatTorus: t.cross = 1e-10; break;
    case ManifoldKind::RoundSphere: t.cross = 1e-8; break;
    case ManifoldKind::ConformalTorus: t.cross = 1e-7; break;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Symmetries
// ---------------------------------------------------------------------------

CheckRecord check_g_antisymmetry(const Basis& basis, const SparseRank3& g, double tolerance) {
  return check_permutations("g_total_antisymmetry", basis, g, kTotallyAntisymmetric, tolerance);
}

VerificationReport check_symmetries(const BracketTable& table, double tolerance) {
  const Basis& basis = *table.basis;
  VerificationReport rep;
  rep.suite = "symmetry";
  rep.manifold = basis.spec();
  rep.tolerances["symmetry"] = tolerance;

  rep.add(check_g_antisymmetry(basis, table.g, tolerance));
  rep.add(check_permutations("d_total_symmetry", basis, table.d, kTotallySymmetric, tolerance));
  rep.add(check_permutations("e_antisymmetry_last_two", basis, table.e, {{{0, 2, 1}, -1.0}},
                             tolerance));
  rep.add(check_permutations("g_tilde_antisymmetry_first_two", basis, table.g_tilde,
                             {{{1, 0, 2}, -1.0}}, tolerance));
  rep.add(check_permutations("k_antisymmetry_first_two", basis, table.k, {{{1, 0, 2}, -1.0}},
                             tolerance));
  rep.add(check_permutations("y_symmetry_harmonic_pair", basis, table.y, {{{0, 2, 1}, 1.0}},
                             tolerance));
  rep.add(check_permutations("g_rr_antisymmetry_harmonic_pair", basis, table.g_rr,
                             {{{1, 0, 2}, -1.0}}, tolerance));
  rep.add(check_permutations("g_alpha_r_antisymmetry_outer", basis, table.g_alpha_r,
                             {{{2, 1, 0}, -1.0}}, tolerance));
  rep.add(compare_tensors("e_tilde_two_route", basis, table.e_tilde, compute_e_tilde_direct(basis),
                          tolerance));

  // Identities that hold by construction of e and k; they guard the index order.
  CheckRecord mu_e = make_check("e_definition", tolerance);
  for (const auto& [key, v] : table.e.entries()) {
    const auto [a, b, c] = key;
    mu_e.max_abs_error = std::max(
        mu_e.max_abs_error,
        std::abs(basis.eigenvalue(a) * v - (basis.eigenvalue(b) - basis.eigenvalue(c)) * table.d(a, b, c)) /
            basis.eigenvalue(a));
    ++mu_e.count;
  }
  finish(mu_e);
  rep.add(mu_e);

  if (basis.kind() == ManifoldKind::FlatTorus) {
    const double closed_tol = std::min(tolerance, 1e-12);
    rep.add(compare_tensors("g_closed_form_vs_quadrature", basis, table.g,
                            compute_g_quadrature(basis), closed_tol));
    rep.add(compare_tensors("d_closed_form_vs_quadrature", basis, table.d,
                            compute_d_quadrature(basis), closed_tol));

    CheckRecord sel = make_check("g_lattice_selection_rule", 0.0);
    for (const auto& [key, v] : table.g.entries()) {
      ++sel.count;
      if (!triple_admissible(basis, key[0], key[1], key[2])) {
        sel.max_abs_error = std::max(sel.max_abs_error, std::abs(v));
        sel.detail = "entry outside the lattice rule at " + entry_label(basis, Family::G, key);
      }
    }
    finish(sel);
    rep.add(sel);
  }

  for (Family f : all_families()) {
    if (table.tensor(f).status() == TensorStatus::NotApplicable) {
      rep.warnings.push_back(family_name(f) + ": " + table.tensor(f).note());
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Jacobi
// ---------------------------------------------------------------------------

namespace {

struct Wave {
  int k1 = 0;
  int k2 = 0;
  int l = 0;
};

Wave wave_of(const Basis& basis, Generator g) {
  if (g.kind == GeneratorKind::H) return {};
  const ModeId& m = basis.mode(g.index);
  if (const auto* t = std::get_if<TorusMode>(&m)) return {t->k1, t->k2, 0};
  return {0, 0, std::get<SphereMode>(m).l};
}

/// Every signed combination of the given lattice vectors stays inside the band.
bool sums_in_band(const std::vector<Wave>& waves, int band) {
  const std::size_t n = waves.size();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int s1 = 0;
    int s2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int s = (mask >> i) & 1u ? -1 : 1;
      s1 += s * waves[i].k1;
      s2 += s * waves[i].k2;
    }
    if (s1 * s1 + s2 * s2 > band) return false;
  }
  return true;
}

bool triple_closed(const Basis& basis, Generator a, Generator b, Generator c) {
  const Wave wa = wave_of(basis, a);
  const Wave wb = wave_of(basis, b);
  const Wave wc = wave_of(basis, c);
  const int band = basis.spec().band;
  if (basis.kind() == ManifoldKind::RoundSphere) return wa.l + wb.l + wc.l <= band;
  return sums_in_band({wa, wb}, band) && sums_in_band({wb, wc}, band) &&
         sums_in_band({wa, wc}, band) && sums_in_band({wa, wb, wc}, band);
}

}  // namespace

VerificationReport jacobi_closed_triples(const BracketTable& table, double tolerance) {
  const auto& basis_ptr = table.basis;
  const Basis& basis = *basis_ptr;
  VerificationReport rep;
  rep.suite = "jacobi";
  rep.manifold = basis.spec();
  rep.tolerances["jacobi"] = tolerance;

  if (!basis.band_closed()) {
    rep.status = ReportStatus::NotApplicable;
    rep.warnings.push_back("the conformal torus basis is not closed under brackets; "
                           "no triple is truncation-closed");
    return rep;
  }

  const auto gens = all_generators(basis);
  std::vector<std::array<std::size_t, 3>> triples;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i; j < gens.size(); ++j) {
      for (std::size_t k = j; k < gens.size(); ++k) {
        if (triple_closed(basis, gens[i], gens[j], gens[k])) triples.push_back({i, j, k});
      }
    }
  }
  if (triples.empty()) {
    rep.status = ReportStatus::NoAdmissibleTriple;
    rep.warnings.push_back("no admissible triple at band " + std::to_string(basis.spec().band));
    return rep;
  }

  const FieldAlgebra algebra(basis_ptr);

  // Inner brackets, cached per unordered pair.
  struct Inner {
    Coefficients coef;
    VectorJet jet;
  };
  std::map<std::pair<std::size_t, std::size_t>, Inner> inner;
  CheckRecord closure = make_check("inner_bracket_closure", tolerance);
  auto inner_of = [&](std::size_t i, std::size_t j) -> const Inner& {
    auto key = std::minmax(i, j);
    auto it = inner.find({key.first, key.second});
    if (it == inner.end()) {
      const Components s = bracket_samples(algebra.jet(gens[key.first]), algebra.jet(gens[key.second]));
      Coefficients c = algebra.project(s);
      closure.max_abs_error =
          std::max(closure.max_abs_error, algebra.relative_residual(s, algebra.synthesize(c)));
      ++closure.count;
      VectorJet jet = algebra.synthesize_jet(c);
      it = inner.emplace(std::make_pair(key.first, key.second), Inner{std::move(c), std::move(jet)})
               .first;
    }
    return it->second;
  };
  // [X, [Y, Z]] as samples; sign flips when the cached pair is (Z, Y).
  auto outer_samples = [&](std::size_t x, std::size_t y, std::size_t z) {
    const Inner& in = inner_of(y, z);
    Components s = bracket_samples(algebra.jet(gens[x]), in.jet);
    if (y > z) {
      s[0] = -s[0];
      s[1] = -s[1];
    }
    return s;
  };
  auto contract = [&](std::size_t x, std::size_t y, std::size_t z) {
    const Coefficients yz = table.bracket(gens[y], gens[z]);
    Coefficients out = Coefficients::zero(basis);
    for (const Generator g : gens) {
      const double w = yz.at(g);
      if (w != 0.0) out += w * table.bracket(gens[x], g);
    }
    return out;
  };

  CheckRecord oracle = make_check("jacobi_oracle", tolerance);
  CheckRecord contraction = make_check("jacobi_contraction", tolerance);
  std::string worst_oracle;
  std::string worst_contraction;
  for (const auto& [a, b, c] : triples) {
    const Components t1 = outer_samples(a, b, c);
    const Components t2 = outer_samples(b, c, a);
    const Components t3 = outer_samples(c, a, b);
    const Components sum{t1[0] + t2[0] + t3[0], t1[1] + t2[1] + t3[1]};
    const double scale =
        std::max({1.0, algebra.norm(t1), algebra.norm(t2), algebra.norm(t3)});
    const double r_oracle = algebra.norm(sum) / scale;

    const Coefficients c1 = contract(a, b, c);
    const Coefficients c2 = contract(b, c, a);
    const Coefficients c3 = contract(c, a, b);
    const double cscale = std::max({1.0, c1.max_abs(), c2.max_abs(), c3.max_abs()});
    const double r_contraction = (c1 + c2 + c3).max_abs() / cscale;

    const std::string label = "(" + generator_label(basis, gens[a]) + ", " +
                              generator_label(basis, gens[b]) + ", " +
                              generator_label(basis, gens[c]) + ")";
    if (r_oracle >= oracle.max_abs_error) {
      oracle.max_abs_error = r_oracle;
      worst_oracle = label;
    }
    if (r_contraction >= contraction.max_abs_error) {
      contraction.max_abs_error = r_contraction;
      worst_contraction = label;
    }
    oracle.max_abs_value = std::max(oracle.max_abs_value, scale);
    contraction.max_abs_value = std::max(contraction.max_abs_value, cscale);
  }
  oracle.count = contraction.count = triples.size();
  finish(oracle);
  finish(contraction);
  finish(closure);
  oracle.detail = "worst triple " + worst_oracle;
  contraction.detail = "worst triple " + worst_contraction;
  rep.add(std::move(oracle));
  rep.add(std::move(contraction));
  rep.add(std::move(closure));
  return rep;
}

// ---------------------------------------------------------------------------
// Cross-validation
// ---------------------------------------------------------------------------

namespace {

enum class Block { L, Phi, H };

const char* block_name(Block b) {
  return b == Block::L ? "L" : b == Block::Phi ? "phi" : "H";
}

/// Check id for one output block of one relation. Kinds are in canonical
/// order (L before phi before H).
std::string block_check(GeneratorKind a, GeneratorKind b, Block out) {
  using K = GeneratorKind;
  if (a == K::Phi && b == K::Phi) return out == Block::Phi ? "g[phi,phi]" : "zero_blocks";
  if (a == K::H && b == K::H) return out == Block::Phi ? "g_rr" : "zero_blocks";
  if (a == K::Phi && b == K::H) return out == Block::Phi ? "g_alpha_r" : "zero_blocks";
  if (a == K::L && b == K::L) {
    return out == Block::L ? "e_antisymmetrized[L,L]" : out == Block::Phi ? "g_tilde" : "k";
  }
  if (a == K::L && b == K::Phi) {
    return out == Block::L ? "g_as_L_coefficient[L,phi]" : out == Block::Phi ? "e_tilde" : "c";
  }
  return out == Block::L ? "g_alpha_r_as_L_coefficient[L,H]" : out == Block::Phi ? "c_tilde" : "y";
}

int rank(GeneratorKind k) { return k == GeneratorKind::L ? 0 : k == GeneratorKind::Phi ? 1 : 2; }

}  // namespace

CrossValidation cross_validate(const Basis& basis) {
  return cross_validate(basis, Tolerances::defaults(basis.kind()).cross);
}

CrossValidation cross_validate(const Basis& basis, double tolerance, bool keep_records) {
  CrossValidation out;
  VerificationReport& rep = out.report;
  rep.suite = "cross";
  rep.manifold = basis.spec();
  rep.tolerances["cross"] = tolerance;

  std::shared_ptr<const Basis> closure;
  if (basis.band_closed()) {
    closure = std::make_shared<const Basis>(build_basis(closure_spec(basis.spec())));
  } else {
    closure = std::make_shared<const Basis>(basis);
    rep.warnings.push_back(
        "conformal torus brackets leave every finite band; retained coefficients are exact "
        "projections and the truncation residual is reported, not enforced");
  }
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (closure->label(a) != basis.label(a)) {
      throw Error(ErrorCode::GridMismatch, "closure basis does not extend the band basis at " +
                                               basis.label(a));
    }
  }

  const BracketTable table = assemble_bracket_table(closure);
  const FieldAlgebra algebra(closure);

  const std::vector<std::string> ids{"g[phi,phi]",
                                     "g_rr",
                                     "g_alpha_r",
                                     "e_antisymmetrized[L,L]",
                                     "g_tilde",
                                     "k",
                                     "g_as_L_coefficient[L,phi]",
                                     "e_tilde",
                                     "c",
                                     "g_alpha_r_as_L_coefficient[L,H]",
                                     "c_tilde",
                                     "y",
                                     "zero_blocks"};
  std::map<std::string, CheckRecord> checks;
  for (const auto& id : ids) checks[id] = make_check(id, tolerance);

  CheckRecord residual = make_check("closure_residual", tolerance);
  CheckRecord swap = make_check("swap_antisymmetry", tolerance);

  const auto gens = all_generators(basis);
  std::vector<std::pair<Generator, Generator>> pairs;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) pairs.emplace_back(gens[i], gens[j]);
  }
  const std::size_t swap_stride = std::max<std::size_t>(1, pairs.size() / 32);

  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto [a, b] = pairs[p];
    if (rank(a.kind) > rank(b.kind)) std::swap(a, b);
    const ExtractedConstants ex = extract_constants(algebra, a, b);
    const Coefficients pred = table.bracket(a, b);
    residual.max_abs_error = std::max(residual.max_abs_error, ex.residual);
    ++residual.count;

    const std::string pair_label = generator_label(basis, a) + "," + generator_label(basis, b);
    const std::array<std::pair<Block, std::pair<const Eigen::VectorXd*, const Eigen::VectorXd*>>, 3>
        blocks{{{Block::L, {&pred.l, &ex.coefficients.l}},
                {Block::Phi, {&pred.phi, &ex.coefficients.phi}},
                {Block::H, {&pred.h, &ex.coefficients.h}}}};
    for (const auto& [blk, vecs] : blocks) {
      const auto& [f, o] = vecs;
      CheckRecord& rec = checks[block_check(a.kind, b.kind, blk)];
      for (Eigen::Index e = 0; e < f->size(); ++e) {
        const double fv = (*f)[e];
        const double ov = (*o)[e];
        const double err = std::abs(fv - ov);
        ++rec.count;
        rec.max_abs_value = std::max(rec.max_abs_value, std::abs(fv));
        if (err > rec.max_abs_error) {
          rec.max_abs_error = err;
          rec.detail = "worst pair " + pair_label;
        }
        if (keep_records && (std::abs(fv) > kZeroThreshold || std::abs(ov) > kZeroThreshold)) {
          const std::size_t idx = static_cast<std::size_t>(e);
          out.records.push_back(
              {pair_label, block_name(blk),
               blk == Block::H ? harmonic_label(idx) : closure->label(idx), fv, ov, err});
        }
      }
    }

    if (p % swap_stride == 0) {
      const ExtractedConstants rev = extract_constants(algebra, b, a);
      swap.max_abs_error =
          std::max(swap.max_abs_error, (rev.coefficients + ex.coefficients).max_abs());
      ++swap.count;
    }
  }

  for (const auto& id : ids) {
    CheckRecord rec = checks[id];
    if (rec.count == 0) rec.detail = "vacuous: no generator pair of this kind";
    finish(rec);
    rep.add(std::move(rec));
  }
  if (basis.band_closed()) {
    finish(residual);
  } else {
    residual.pass = true;
    residual.detail = "reported only; the basis is not band-closed";
  }
  rep.add(std::move(residual));
  finish(swap);
  rep.add(std::move(swap));
  return out;
}

// ---------------------------------------------------------------------------
// Projector
// ---------------------------------------------------------------------------

namespace {

Components random_field(const Basis& basis, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const Eigen::Index n = basis.grid_size();
  const Points& pts = basis.grid().nodes;
  Components x{Eigen::ArrayXd::Zero(n), Eigen::ArrayXd::Zero(n)};
  if (basis.kind() != ManifoldKind::RoundSphere) {
    for (auto& comp : x) {
      comp += uni(rng);
      for (std::size_t a = 0; a < basis.size(); ++a) comp += uni(rng) * basis.jet(a).value;
    }
    return x;
  }
  // Tangential part of a random ambient polynomial field of degree < l_max.
  const int degree = basis.spec().band - 1;
  const Eigen::ArrayXd st = pts.x1.sin();
  const Eigen::ArrayXd ct = pts.x1.cos();
  const Eigen::ArrayXd sp = pts.x2.sin();
  const Eigen::ArrayXd cp = pts.x2.cos();
  const std::array<Eigen::ArrayXd, 3> unit{st * cp, st * sp, ct};
  std::array<Eigen::ArrayXd, 3> v{Eigen::ArrayXd::Zero(n), Eigen::ArrayXd::Zero(n),
                                  Eigen::ArrayXd::Zero(n)};
  for (int i = 0; i <= degree; ++i) {
    for (int j = 0; i + j <= degree; ++j) {
      for (int k = 0; i + j + k <= degree; ++k) {
        const Eigen::ArrayXd mono = unit[0].pow(i) * unit[1].pow(j) * unit[2].pow(k);
        for (auto& comp : v) comp += uni(rng) * mono;
      }
    }
  }
  const double radius = std::sqrt(1.0 / (4.0 * kPi));
  x[0] = (v[0] * ct * cp + v[1] * ct * sp - v[2] * st) / radius;
  x[1] = (-v[0] * sp + v[1] * cp) / (radius * st);
  return x;
}

double inner(const Basis& basis, const Components& x, const Components& y) {
  const auto& m = basis.metric();
  return basis.integrate(m.g[0] * x[0] * y[0] + m.g[1] * (x[0] * y[1] + x[1] * y[0]) +
                         m.g[2] * x[1] * y[1]);
}

}  // namespace

VerificationReport projector_suite(const Basis& basis, int random_fields, std::uint64_t seed,
                                   double tolerance) {
  VerificationReport rep;
  rep.suite = "projector";
  rep.manifold = basis.spec();
  rep.tolerances["projector"] = tolerance;
  rep.tolerances["idempotence"] = 1e-12;
  if (!basis.band_closed()) {
    rep.status = ReportStatus::NotApplicable;
    rep.warnings.push_back("no finite band-limited field space on the conformal torus");
    return rep;
  }

  const auto ptr = std::make_shared<const Basis>(basis);
  const FieldAlgebra algebra(ptr);
  std::mt19937_64 rng(seed);

  CheckRecord completeness = make_check("completeness", tolerance);
  CheckRecord idempotence = make_check("idempotence", 1e-12);
  CheckRecord divergence_free = make_check("divergence_free", tolerance);
  CheckRecord orthogonality = make_check("hodge_orthogonality", tolerance);
  CheckRecord annihilation = make_check("gradient_annihilation", tolerance);

  for (int n = 0; n < random_fields; ++n) {
    const SpectralVectorField x{random_field(basis, rng), std::nullopt};
    const double scale = std::max(1.0, algebra.norm(x.samples));
    const HodgeParts parts = hodge_decompose(algebra, x, ResidualPolicy::Report);
    completeness.max_abs_error = std::max(completeness.max_abs_error, parts.residual);
    ++completeness.count;

    const double s2 = scale * scale;
    const double ortho = std::max({std::abs(inner(basis, parts.gradient.samples, parts.curl.samples)),
                                   std::abs(inner(basis, parts.gradient.samples, parts.harmonic.samples)),
                                   std::abs(inner(basis, parts.curl.samples, parts.harmonic.samples))}) /
                         s2;
    orthogonality.max_abs_error = std::max(orthogonality.max_abs_error, ortho);
    ++orthogonality.count;

    const SpectralVectorField once = apply_projector(algebra, x);
    const SpectralVectorField twice = apply_projector(algebra, once);
    idempotence.max_abs_error = std::max(
        idempotence.max_abs_error, algebra.relative_residual(once.samples, twice.samples));
    ++idempotence.count;

    const VectorJet pj = algebra.synthesize_jet(*once.coefficients);
    const Eigen::ArrayXd div = divergence(basis, pj);
    divergence_free.max_abs_error =
        std::max(divergence_free.max_abs_error, std::sqrt(basis.integrate(div * div)) / scale);
    ++divergence_free.count;
  }

  for (std::size_t a = 0; a < basis.size(); ++a) {
    const SpectralVectorField l = generator_field(basis, {GeneratorKind::L, a});
    const SpectralVectorField p = apply_projector(algebra, l);
    annihilation.max_abs_error = std::max(annihilation.max_abs_error, algebra.norm(p.samples));
    ++annihilation.count;
  }

  for (CheckRecord* r : {&completeness, &idempotence, &divergence_free, &orthogonality, &annihilation}) {
    finish(*r);
    rep.add(std::move(*r));
  }
  return rep;
}

}  // namespace lieconst
