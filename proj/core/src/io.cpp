#include "lieconst/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lieconst/error.hpp"

namespace lieconst {

namespace {

using nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

/// Splits one CSV line with optional double-quoted fields.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (quoted) throw Error(ErrorCode::Io, "unterminated quote in CSV line: " + line);
  out.push_back(cur);
  return out;
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ordered_json check_to_json(const CheckRecord& c) {
  ordered_json j;
  j["id"] = c.id;
  j["max_abs_error"] = c.max_abs_error;
  j["tolerance"] = c.tolerance;
  j["pass"] = c.pass;
  j["count"] = c.count;
  j["max_abs_value"] = c.max_abs_value;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

}  // namespace

ExportFormat parse_format(std::string_view name) {
  if (name == "json") return ExportFormat::Json;
  if (name == "csv") return ExportFormat::Csv;
  throw Error(ErrorCode::InvalidConfig, "unknown format '" + std::string(name) + "'");
}

std::string to_string(ExportFormat format) {
  return format == ExportFormat::Json ? "json" : "csv";
}

std::string slot_label(const Basis& basis, SlotKind kind, std::size_t index) {
  return kind == SlotKind::Harmonic ? harmonic_label(index) : basis.label(index);
}

std::string entry_label(const Basis& basis, Family family, const Index3& key) {
  const auto slots = family_slots(family);
  return family_name(family) + "(" + slot_label(basis, slots[0], key[0]) + "; " +
         slot_label(basis, slots[1], key[1]) + "; " + slot_label(basis, slots[2], key[2]) + ")";
}

std::string tensor_to_json(const Basis& basis, const SparseRank3& tensor) {
  const auto slots = tensor.slots();
  const std::string family = family_name(tensor.family());
  ordered_json arr = ordered_json::array();
  for (const auto& [key, v] : tensor.entries()) {
    ordered_json e;
    e["family"] = family;
    e["i"] = slot_label(basis, slots[0], key[0]);
    e["j"] = slot_label(basis, slots[1], key[1]);
    e["k"] = slot_label(basis, slots[2], key[2]);
    e["v"] = v;
    arr.push_back(std::move(e));
  }
  return arr.dump(2) + "\n";
}

std::string tensor_to_csv(const Basis& basis, const SparseRank3& tensor) {
  const auto slots = tensor.slots();
  const std::string family = family_name(tensor.family());
  std::ostringstream os;
  os << "family,i,j,k,v\n";
  for (const auto& [key, v] : tensor.entries()) {
    os << family << ',' << csv_quote(slot_label(basis, slots[0], key[0])) << ','
       << csv_quote(slot_label(basis, slots[1], key[1])) << ','
       << csv_quote(slot_label(basis, slots[2], key[2])) << ',' << format_double(v) << '\n';
  }
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

void write_tensor(const std::filesystem::path& path, const Basis& basis, const SparseRank3& tensor,
                  ExportFormat format) {
  write_text(path, format == ExportFormat::Json ? tensor_to_json(basis, tensor)
                                                : tensor_to_csv(basis, tensor));
}

std::vector<TensorFileEntry> read_tensor_file(const std::filesystem::path& path) {
  const std::string text = read_all(path);
  std::vector<TensorFileEntry> out;
  if (path.extension() == ".csv") {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || split_csv(line) != std::vector<std::string>{"family", "i", "j", "k", "v"}) {
      throw Error(ErrorCode::Io, path.string() + ": missing CSV header");
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto f = split_csv(line);
      if (f.size() != 5) {
        throw Error(ErrorCode::Io, path.string() + ":" + std::to_string(lineno) + ": expected 5 fields");
      }
      double v = 0.0;
      const auto res = std::from_chars(f[4].data(), f[4].data() + f[4].size(), v);
      if (res.ec != std::errc{} || res.ptr != f[4].data() + f[4].size()) {
        throw Error(ErrorCode::Io, path.string() + ":" + std::to_string(lineno) + ": bad value");
      }
      out.push_back({f[0], f[1], f[2], f[3], v});
    }
    return out;
  }
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw Error(ErrorCode::Io, path.string() + ": expected a JSON array");
    for (const auto& e : j) {
      out.push_back({e.at("family").get<std::string>(), e.at("i").get<std::string>(),
                     e.at("j").get<std::string>(), e.at("k").get<std::string>(),
                     e.at("v").get<double>()});
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::Io, path.string() + ": " + ex.what());
  }
  return out;
}

std::string basis_to_json(const Basis& basis) {
  ordered_json j;
  j["manifold"] = to_string(basis.kind());
  j["band"] = basis.spec().band;
  j["genus"] = basis.genus();
  if (!basis.spec().conformal_coefficients.empty()) {
    ordered_json c = ordered_json::object();
    for (const auto& [mode, amp] : basis.spec().conformal_coefficients) c[to_label(mode)] = amp;
    j["conformal_coefficients"] = c;
  }
  ordered_json modes = ordered_json::array();
  for (std::size_t a = 0; a < basis.size(); ++a) {
    modes.push_back({{"label", basis.label(a)}, {"eigenvalue", basis.eigenvalue(a)}});
  }
  j["mode_count"] = basis.size();
  j["modes"] = modes;
  j["harmonic_fields"] = basis.harmonic_count();
  j["grid"] = {{"n1", basis.grid().n1}, {"n2", basis.grid().n2}};
  return j.dump(2) + "\n";
}

std::string report_to_json(const VerificationReport& report) {
  ordered_json j;
  j["suite"] = report.suite;
  j["manifold"] = to_string(report.manifold.kind);
  j["band"] = report.manifold.band;
  j["status"] = to_string(report.status);
  j["pass"] = report.pass();
  ordered_json tol = ordered_json::object();
  for (const auto& [k, v] : report.tolerances) tol[k] = v;
  j["tolerances"] = tol;
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) checks.push_back(check_to_json(c));
  j["checks"] = checks;
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

std::string report_to_text(const VerificationReport& report) {
  std::ostringstream os;
  os << "suite " << report.suite << " on " << to_string(report.manifold.kind) << " band "
     << report.manifold.band << ": " << (report.pass() ? "PASS" : "FAIL");
  if (report.status != ReportStatus::Ok) os << " (" << to_string(report.status) << ")";
  os << '\n';
  for (const auto& c : report.checks) {
    char line[256];
    std::snprintf(line, sizeof line, "  %-4s %-34s err=%.3e tol=%.1e n=%zu", c.pass ? "ok" : "FAIL",
                  c.id.c_str(), c.max_abs_error, c.tolerance, c.count);
    os << line;
    if (!c.detail.empty()) os << "  " << c.detail;
    os << '\n';
  }
  for (const auto& w : report.warnings) os << "  warning: " << w << '\n';
  return os.str();
}

std::string cross_records_to_json(const std::vector<CrossRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : records) {
    arr.push_back({{"pair", r.pair},
                   {"block", r.block},
                   {"index", r.index},
                   {"formula_value", r.formula_value},
                   {"oracle_value", r.oracle_value},
                   {"abs_error", r.abs_error}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace lieconst
