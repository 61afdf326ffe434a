#include "commands.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <set>

#include "lieconst/error.hpp"
#include "lieconst/io.hpp"
#include "lieconst/oracle.hpp"
#include "lieconst/theorems.hpp"
#include "lieconst/verify.hpp"

namespace lieconst::cli {

namespace {

const std::vector<std::string> kSuites{"symmetry", "jacobi", "cross", "projector"};

std::vector<Family> requested_families(const RunConfig& cfg) {
  if (cfg.families.empty() ||
      (cfg.families.size() == 1 && cfg.families.front() == "all")) {
    return all_families();
  }
  std::vector<Family> out;
  for (const auto& name : cfg.families) out.push_back(parse_family(name));
  return out;
}

std::vector<std::string> requested_suites(const RunConfig& cfg) {
  if (cfg.suites.empty() || (cfg.suites.size() == 1 && cfg.suites.front() == "all")) {
    return kSuites;
  }
  for (const auto& s : cfg.suites) {
    if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) {
      throw Error(ErrorCode::InvalidConfig, "unknown suite '" + s + "'");
    }
  }
  return cfg.suites;
}

std::string extension(ExportFormat f) { return f == ExportFormat::Json ? ".json" : ".csv"; }

/// Compares a tensor file against the table computed for the same config.
VerificationReport check_tensor_file(const BracketTable& table, const std::filesystem::path& path,
                                     double tolerance) {
  VerificationReport rep;
  rep.suite = "check_file";
  rep.manifold = table.basis->spec();
  rep.tolerances["check_file"] = tolerance;

  CheckRecord rec;
  rec.id = "file:" + path.filename().string();
  rec.tolerance = tolerance;

  std::vector<TensorFileEntry> entries;
  try {
    entries = read_tensor_file(path);
  } catch (const Error& e) {
    rec.pass = false;
    rec.max_abs_error = INFINITY;
    rec.detail = e.what();
    rep.add(rec);
    return rep;
  }

  const Basis& basis = *table.basis;
  std::map<std::string, std::map<std::tuple<std::string, std::string, std::string>, double>> expected;
  std::set<std::string> families;
  for (const auto& e : entries) families.insert(e.family);
  for (const auto& name : families) {
    Family f;
    try {
      f = parse_family(name);
    } catch (const Error& e) {
      rec.pass = false;
      rec.max_abs_error = INFINITY;
      rec.detail = e.what();
      rep.add(rec);
      return rep;
    }
    const auto slots = family_slots(f);
    for (const auto& [key, v] : table.tensor(f).entries()) {
      expected[name][{slot_label(basis, slots[0], key[0]), slot_label(basis, slots[1], key[1]),
                      slot_label(basis, slots[2], key[2])}] = v;
    }
  }

  for (const auto& e : entries) {
    auto& fam = expected[e.family];
    const auto key = std::make_tuple(e.i, e.j, e.k);
    const auto it = fam.find(key);
    const double want = it == fam.end() ? 0.0 : it->second;
    const double err = std::isfinite(e.v) ? std::abs(e.v - want) : INFINITY;
    if (err > rec.max_abs_error || !std::isfinite(err)) {
      rec.max_abs_error = err;
      rec.detail = "worst entry " + e.family + "(" + e.i + "; " + e.j + "; " + e.k + ")";
    }
    if (it != fam.end()) fam.erase(it);
    ++rec.count;
  }
  std::size_t missing = 0;
  for (const auto& [name, fam] : expected) missing += fam.size();
  rec.pass = std::isfinite(rec.max_abs_error) && rec.max_abs_error <= tolerance && missing == 0;
  if (missing > 0) rec.detail += (rec.detail.empty() ? "" : "; ") + std::to_string(missing) +
                                 " computed entries absent from the file";
  rep.add(rec);
  return rep;
}

void emit(const VerificationReport& rep, const RunConfig& cfg, std::ostream& out) {
  write_text(cfg.out / (rep.suite + "_report.json"), report_to_json(rep));
  const std::string text = report_to_text(rep);
  write_text(cfg.out / (rep.suite + "_report.txt"), text);
  out << text;
}

}  // namespace

int cmd_basis(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const Basis basis = build_basis(cfg.spec);
  write_text(cfg.out / "basis.json", basis_to_json(basis));
  out << to_string(basis.kind()) << " band " << cfg.spec.band << ": " << basis.size()
      << " modes, " << basis.harmonic_count() << " harmonic fields\n";
  return kPass;
}

int cmd_constants(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto families = requested_families(cfg);
  const BracketTable table =
      assemble_bracket_table(std::make_shared<const Basis>(build_basis(cfg.spec)));
  for (Family f : families) {
    const SparseRank3& t = table.tensor(f);
    const auto path = cfg.out / (family_name(f) + extension(cfg.format));
    write_tensor(path, *table.basis, t, cfg.format);
    if (t.status() == TensorStatus::NotApplicable) {
      err << "warning: " << family_name(f) << ": " << t.note() << '\n';
    }
    out << family_name(f) << ": " << t.nnz() << " entries -> " << path.string() << '\n';
  }
  return kPass;
}

int cmd_verify(const RunConfig& cfg, const std::optional<std::filesystem::path>& check_file,
               std::ostream& out, std::ostream& /*err*/) {
  const auto suites = check_file && cfg.suites.empty() ? std::vector<std::string>{}
                                                      : requested_suites(cfg);
  const auto basis = std::make_shared<const Basis>(build_basis(cfg.spec));
  const Tolerances tol = Tolerances::defaults(cfg.spec.kind);
  bool pass = true;

  std::optional<BracketTable> table;
  auto get_table = [&]() -> const BracketTable& {
    if (!table) table = assemble_bracket_table(basis);
    return *table;
  };

  for (const auto& suite : suites) {
    VerificationReport rep;
    if (suite == "symmetry") {
      rep = check_symmetries(get_table(), cfg.tolerance.value_or(tol.symmetry));
    } else if (suite == "jacobi") {
      rep = jacobi_closed_triples(get_table(), cfg.tolerance.value_or(tol.jacobi));
    } else if (suite == "cross") {
      CrossValidation cv = cross_validate(*basis, cfg.tolerance.value_or(tol.cross), true);
      write_text(cfg.out / "cross_records.json", cross_records_to_json(cv.records));
      rep = std::move(cv.report);
    } else {
      rep = projector_suite(*basis, 100, 20240517, cfg.tolerance.value_or(tol.projector));
    }
    emit(rep, cfg, out);
    pass = pass && rep.pass();
  }

  if (check_file) {
    const VerificationReport rep =
        check_tensor_file(get_table(), *check_file, cfg.tolerance.value_or(1e-12));
    emit(rep, cfg, out);
    pass = pass && rep.pass();
  }
  return pass ? kPass : kFail;
}

}  // namespace lieconst::cli
