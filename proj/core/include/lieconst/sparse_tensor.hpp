#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lieconst {

/// Structure-constant families. Slot kinds and written index order:
///   g, d, e, g_tilde, e_tilde : (mode, mode, mode)
///   k        : k_{alpha eps r}     (mode, mode, harmonic)
///   c        : c_{alpha alpha' r}  (mode, mode, harmonic)
///   c_tilde  : c~_{alpha r eps}    (mode, harmonic, mode)
///   y        : y_{alpha r r'}      (mode, harmonic, harmonic)
///   g_rr     : g_{r r' eps}        (harmonic, harmonic, mode)
///   g_alpha_r: g_{alpha r eps}     (mode, harmonic, mode)
enum class Family { G, D, E, GTilde, K, ETilde, C, CTilde, Y, GRR, GAlphaR };

enum class SlotKind { Mode, Harmonic };

std::string family_name(Family family);
Family parse_family(std::string_view name);
std::array<SlotKind, 3> family_slots(Family family);
bool has_harmonic_slot(Family family);
const std::vector<Family>& all_families();

inline constexpr double kZeroThreshold = 1e-12;

using Index3 = std::array<std::size_t, 3>;

enum class TensorStatus { Ok, NotApplicable };

/// Sparse rank-3 tensor keyed by index triples into one Basis.
class SparseRank3 {
 public:
  explicit SparseRank3(Family family, double zero_threshold = kZeroThreshold);

  Family family() const { return family_; }
  std::array<SlotKind, 3> slots() const { return family_slots(family_); }
  double zero_threshold() const { return zero_threshold_; }

  /// Stores v unless |v| is below the zero-threshold, in which case any
  /// existing entry is removed.
  void set(std::size_t i, std::size_t j, std::size_t k, double v);
  double operator()(std::size_t i, std::size_t j, std::size_t k) const;
  bool contains(std::size_t i, std::size_t j, std::size_t k) const;

  /// Calls f(k, value) for every stored entry (i, j, k).
  template <typename F>
  void for_each_in_slice(std::size_t i, std::size_t j, F&& f) const {
    for (auto it = entries_.lower_bound(Index3{i, j, 0});
         it != entries_.end() && it->first[0] == i && it->first[1] == j; ++it) {
      f(it->first[2], it->second);
    }
  }

  const std::map<Index3, double>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double max_abs() const;

  TensorStatus status() const { return status_; }
  const std::string& note() const { return note_; }
  void mark_not_applicable(std::string note);

 private:
  Family family_;
  double zero_threshold_;
  std::map<Index3, double> entries_;
  TensorStatus status_ = TensorStatus::Ok;
  std::string note_;
};

}  // namespace lieconst
