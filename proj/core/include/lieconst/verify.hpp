#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lieconst/geometry.hpp"
#include "lieconst/theorems.hpp"

namespace lieconst {

struct CheckRecord {
  std::string id;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::size_t count = 0;
  /// Largest |value| seen on the formula side, where meaningful.
  double max_abs_value = 0.0;
  std::string detail;
};

enum class ReportStatus { Ok, NoAdmissibleTriple, NotApplicable };

std::string to_string(ReportStatus status);

struct VerificationReport {
  std::string suite;
  ManifoldSpec manifold;
  std::map<std::string, double> tolerances;
  std::vector<CheckRecord> checks;
  std::vector<std::string> warnings;
  ReportStatus status = ReportStatus::Ok;

  /// True iff every record passes.
  bool pass() const;
  const CheckRecord* find(const std::string& id) const;
  CheckRecord& add(CheckRecord record);
};

/// Per-manifold defaults: formula-vs-oracle 1e-10 / 1e-8 / 1e-7 for flat torus,
/// sphere and conformal torus.
struct Tolerances {
  double cross = 1e-10;
  double symmetry = 1e-10;
  double jacobi = 1e-9;
  double projector = 1e-10;
  double idempotence = 1e-12;

  static Tolerances defaults(ManifoldKind kind);
};

/// Symmetry classes of every family, the e~ two-route equality, and on the
/// flat torus closed-form g against quadrature g. Failures name the worst triple.
VerificationReport check_symmetries(const BracketTable& table, double tolerance = 1e-10);

/// Same, with an explicitly supplied g (used to feed a corrupted tensor in).
CheckRecord check_g_antisymmetry(const Basis& basis, const SparseRank3& g, double tolerance);

/// Jacobi identity on generator triples whose nested brackets stay inside the
/// band of `table`, by oracle brackets and by structure-constant contraction.
VerificationReport jacobi_closed_triples(const BracketTable& table, double tolerance = 1e-9);

struct CrossRecord {
  std::string pair;
  std::string block;
  std::string index;
  double formula_value = 0.0;
  double oracle_value = 0.0;
  double abs_error = 0.0;
};

struct CrossValidation {
  VerificationReport report;
  std::vector<CrossRecord> records;
};

/// Compares every generator pair of `basis` against the oracle, with the
/// table assembled on the closure basis.
CrossValidation cross_validate(const Basis& basis, double tolerance, bool keep_records = false);
CrossValidation cross_validate(const Basis& basis);

/// Idempotence, annihilation of gradient fields, divergence-free output and
/// completeness on random band-limited fields.
VerificationReport projector_suite(const Basis& basis, int random_fields = 100,
                                   std::uint64_t seed = 20240517, double tolerance = 1e-10);

}  // namespace lieconst
