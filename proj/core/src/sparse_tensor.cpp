#include "lieconst/sparse_tensor.hpp"

#include <cmath>

#include "lieconst/error.hpp"

namespace lieconst {

std::string family_name(Family family) {
  switch (family) {
    case Family::G: return "g";
    case Family::D: return "d";
    case Family::E: return "e";
    case Family::GTilde: return "g_tilde";
    case Family::K: return "k";
    case Family::ETilde: return "e_tilde";
    case Family::C: return "c";
    case Family::CTilde: return "c_tilde";
    case Family::Y: return "y";
    case Family::GRR: return "g_rr";
    case Family::GAlphaR: return "g_alpha_r";
  }
  return "unknown";
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> families{Family::G,      Family::D,      Family::E,
                                            Family::GRR,    Family::GAlphaR, Family::GTilde,
                                            Family::K,      Family::ETilde, Family::C,
                                            Family::CTilde, Family::Y};
  return families;
}

Family parse_family(std::string_view name) {
  for (Family f : all_families()) {
    if (family_name(f) == name) return f;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown tensor family '" + std::string(name) + "'");
}

std::array<SlotKind, 3> family_slots(Family family) {
  constexpr auto M = SlotKind::Mode;
  constexpr auto H = SlotKind::Harmonic;
  switch (family) {
    case Family::K:
    case Family::C: return {M, M, H};
    case Family::CTilde:
    case Family::GAlphaR: return {M, H, M};
    case Family::Y: return {M, H, H};
    case Family::GRR: return {H, H, M};
    default: return {M, M, M};
  }
}

bool has_harmonic_slot(Family family) {
  for (SlotKind s : family_slots(family)) {
    if (s == SlotKind::Harmonic) return true;
  }
  return false;
}

SparseRank3::SparseRank3(Family family, double zero_threshold)
    : family_(family), zero_threshold_(zero_threshold) {}

void SparseRank3::set(std::size_t i, std::size_t j, std::size_t k, double v) {
  const Index3 key{i, j, k};
  if (std::abs(v) < zero_threshold_) {
    entries_.erase(key);
  } else {
    entries_[key] = v;
  }
}

double SparseRank3::operator()(std::size_t i, std::size_t j, std::size_t k) const {
  auto it = entries_.find(Index3{i, j, k});
  return it == entries_.end() ? 0.0 : it->second;
}

bool SparseRank3::contains(std::size_t i, std::size_t j, std::size_t k) const {
  return entries_.count(Index3{i, j, k}) != 0;
}

double SparseRank3::max_abs() const {
  double m = 0.0;
  for (const auto& [key, v] : entries_) m = std::max(m, std::abs(v));
  return m;
}

void SparseRank3::mark_not_applicable(std::string note) {
  status_ = TensorStatus::NotApplicable;
  note_ = std::move(note);
  entries_.clear();
}

}  // namespace lieconst
