// Acceptance run: one PASS/FAIL line per criterion. Exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "flat_reference.hpp"
#include "lieconst/geometry.hpp"
#include "lieconst/theorems.hpp"
#include "lieconst/verify.hpp"

using namespace lieconst;

namespace {

struct Outcome {
  bool pass = true;
  double worst = 0.0;
  std::string note;

  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      note += (note.empty() ? "" : "; ") + why;
    }
  }
  void bound(const VerificationReport& rep, const std::string& id, double tol) {
    const CheckRecord* r = rep.find(id);
    if (r == nullptr) {
      require(false, id + " missing");
      return;
    }
    worst = std::max(worst, r->max_abs_error);
    require(r->max_abs_error <= tol, id + " error " + std::to_string(r->max_abs_error));
  }
};

int failures = 0;

void run(int number, const std::string& title, double tolerance, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.note = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s  %s  max_err=%.3e tol=%.0e time=%.1fs%s%s\n", number, o.pass ? "PASS" : "FAIL",
              title.c_str(), o.worst, tolerance, secs, o.note.empty() ? "" : "  ", o.note.c_str());
  std::fflush(stdout);
}

std::shared_ptr<const Basis> shared(const ManifoldSpec& spec) {
  return std::make_shared<const Basis>(build_basis(spec));
}

const std::vector<std::string> kEightFamilies{"g_rr", "g_alpha_r", "g_tilde", "k", "e_tilde", "c", "c_tilde", "y"};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

}  // namespace

int main() {
  constexpr double kTorusTol = 1e-10;
  constexpr double kSphereTol = 1e-8;
  constexpr double kConformalTol = 1e-7;
  constexpr double kJacobiTol = 1e-9;
  constexpr double kProjectorTol = 1e-10;
  constexpr double kSymmetryTol = 1e-10;
  constexpr double kSpotTol = 1e-10;

  run(1, "flat torus |k|^2<=4, eight families vs oracle", kTorusTol, [&] {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const CrossValidation cv = cross_validate(build_basis(ManifoldSpec::flat_torus(4)), kTorusTol);
    for (const auto& id : kEightFamilies) o.bound(cv.report, id, kTorusTol);
    o.require(seconds_since(t0) < 120.0, "slower than 2 minutes");
    return o;
  });

  run(2, "round sphere l<=4, g~, e~ and L-coefficient identities vs oracle", kSphereTol, [&] {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const CrossValidation cv = cross_validate(build_basis(ManifoldSpec::round_sphere(4)), kSphereTol);
    for (const char* id : {"g_tilde", "e_tilde", "g_as_L_coefficient[L,phi]", "e_antisymmetrized[L,L]"}) {
      o.bound(cv.report, id, kSphereTol);
      const CheckRecord* r = cv.report.find(id);
      o.require(r != nullptr && r->count > 0, std::string(id) + " compared nothing");
    }
    o.require(seconds_since(t0) < 300.0, "slower than 5 minutes");
    return o;
  });

  run(3, "conformal torus amp 0.15 |k|^2<=2, eight families vs oracle", kConformalTol, [&] {
    Outcome o;
    const Basis b = build_basis(ManifoldSpec::conformal_torus(2, {{TorusMode{1, 0, Parity::Cos}, 0.15}}));
    const CrossValidation cv = cross_validate(b, kConformalTol);
    for (const auto& id : kEightFamilies) o.bound(cv.report, id, kConformalTol);
    for (const char* id : {"c_tilde", "y"}) {
      const CheckRecord* r = cv.report.find(id);
      o.require(r != nullptr && r->max_abs_value >= 1e-6, std::string(id) + " not visibly nonzero");
    }
    return o;
  });

  // Shared by criteria 4 and 6.
  const auto torus8 = shared(ManifoldSpec::flat_torus(8));
  const BracketTable torus8_table = assemble_bracket_table(torus8);

  run(4, "Jacobi on closed triples, torus |k|^2<=8 and sphere l<=3", kJacobiTol, [&] {
    Outcome o;
    const VerificationReport torus = jacobi_closed_triples(torus8_table, kJacobiTol);
    const VerificationReport sphere =
        jacobi_closed_triples(assemble_bracket_table(shared(ManifoldSpec::round_sphere(3))), kJacobiTol);
    for (const VerificationReport* rep : {&torus, &sphere}) {
      o.require(rep->status == ReportStatus::Ok, "no admissible triple");
      o.bound(*rep, "jacobi_oracle", kJacobiTol);
      o.bound(*rep, "jacobi_contraction", kJacobiTol);
      const CheckRecord* r = rep->find("jacobi_oracle");
      o.require(r != nullptr && r->count > 0, "no triple evaluated");
    }
    return o;
  });

  run(5, "projector: idempotence, gradient annihilation, completeness, 100 fields", kProjectorTol, [&] {
    Outcome o;
    for (const ManifoldSpec& spec : {ManifoldSpec::flat_torus(4), ManifoldSpec::round_sphere(4)}) {
      const VerificationReport rep = projector_suite(build_basis(spec), 100, 20240517, kProjectorTol);
      for (const char* id : {"idempotence", "gradient_annihilation", "completeness"}) {
        o.bound(rep, id, kProjectorTol);
      }
    }
    return o;
  });

  run(6, "symmetry suite over the torus band |k|^2<=8", kSymmetryTol, [&] {
    Outcome o;
    const VerificationReport rep = check_symmetries(torus8_table, kSymmetryTol);
    for (const char* id : {"g_total_antisymmetry", "d_total_symmetry", "e_antisymmetry_last_two", "e_tilde_two_route"}) {
      o.bound(rep, id, kSymmetryTol);
    }
    o.require(rep.pass(), "symmetry report has failures");
    return o;
  });

  run(7, "spot values g, d, g~, k against direct quadrature", kSpotTol, [&] {
    Outcome o;
    const BracketTable& t = torus8_table;
    const Basis& b = *torus8;
    const auto at = [&](int k1, int k2, bool sine) {
      return b.index_of(TorusMode{k1, k2, sine ? Parity::Sin : Parity::Cos});
    };
    const flatref::Wave c10{1, 0, false}, s10{1, 0, true}, c01{0, 1, false}, c11{1, 1, false}, c20{2, 0, false};
    const double four_pi2 = 4.0 * kPi * kPi;

    const double g_ref = flatref::g(c11, c10, c01);
    const double d_ref = flatref::d(c10, c10, c20);
    const double gt_ref = (four_pi2 - four_pi2 - 2 * four_pi2) / (four_pi2 * 2 * four_pi2 * four_pi2) *
                          flatref::g(c10, c11, c01);
    const double k_ref = (1 / four_pi2 + 1 / four_pi2) * flatref::g_alpha_r(c10, 0, s10);

    struct Spot {
      const char* name;
      double library;
      double reference;
      double expected;
    };
    const Spot spots[] = {
        {"g", t.g(at(1, 1, false), at(1, 0, false), at(0, 1, false)), g_ref, -2.0 * std::sqrt(2.0) * kPi * kPi},
        {"d", t.d(at(1, 0, false), at(1, 0, false), at(2, 0, false)), d_ref, 1.0 / std::sqrt(2.0)},
        {"g_tilde", t.g_tilde(at(1, 0, false), at(1, 1, false), at(0, 1, false)), gt_ref,
         -std::sqrt(2.0) / (8.0 * kPi * kPi)},
        {"k", t.k(at(1, 0, false), at(1, 0, true), 0), k_ref, 1.0 / kPi},
    };
    for (const Spot& s : spots) {
      const double err = std::max(std::abs(s.library - s.reference), std::abs(s.library - s.expected));
      o.worst = std::max(o.worst, err);
      o.require(err <= kSpotTol, std::string(s.name) + " off by " + std::to_string(err));
    }
    return o;
  });

  std::printf("%s\n", failures == 0 ? "all criteria PASS" : "some criteria FAIL");
  return failures == 0 ? 0 : 1;
}
