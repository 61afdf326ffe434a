#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lieconst/geometry.hpp"
#include "lieconst/sparse_tensor.hpp"
#include "lieconst/verify.hpp"

namespace lieconst {

enum class ExportFormat { Json, Csv };

ExportFormat parse_format(std::string_view name);
std::string to_string(ExportFormat format);

/// Mode label for mode slots, "h:r" for harmonic slots.
std::string slot_label(const Basis& basis, SlotKind kind, std::size_t index);
std::string entry_label(const Basis& basis, Family family, const Index3& key);

/// Entries in index order, each {"family", "i", "j", "k", "v"}; the same
/// columns in CSV with a header row. Output is byte-for-byte deterministic.
std::string tensor_to_json(const Basis& basis, const SparseRank3& tensor);
std::string tensor_to_csv(const Basis& basis, const SparseRank3& tensor);
void write_tensor(const std::filesystem::path& path, const Basis& basis, const SparseRank3& tensor,
                  ExportFormat format);

struct TensorFileEntry {
  std::string family;
  std::string i;
  std::string j;
  std::string k;
  double v = 0.0;
};

/// Reads either format (CSV if the extension is .csv). Throws Error(Io).
std::vector<TensorFileEntry> read_tensor_file(const std::filesystem::path& path);

std::string basis_to_json(const Basis& basis);
std::string report_to_json(const VerificationReport& report);
std::string report_to_text(const VerificationReport& report);
std::string cross_records_to_json(const std::vector<CrossRecord>& records);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace lieconst
