#pragma once

#include <Eigen/Core>

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "lieconst/geometry.hpp"

namespace lieconst {

/// L: gradient-type generator with divergence -Y_alpha.
/// Phi: divergence-free generator built from Y_alpha.
/// H: harmonic generator h_(r).
enum class GeneratorKind { L, Phi, H };

struct Generator {
  GeneratorKind kind = GeneratorKind::L;
  std::size_t index = 0;

  auto operator<=>(const Generator&) const = default;
};

std::string to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(std::string_view name);
/// "L[c:1,0]", "phi[sph:2,-1]", "H[h:1]".
std::string generator_label(const Basis& basis, Generator g);

/// L and Phi for every mode, then H for every harmonic index.
std::vector<Generator> all_generators(const Basis& basis);

/// Expansion of a vector field on the generators of one basis.
struct Coefficients {
  Eigen::VectorXd l;
  Eigen::VectorXd phi;
  Eigen::VectorXd h;

  static Coefficients zero(const Basis& basis);
  static Coefficients zero(Eigen::Index modes, Eigen::Index harmonics);
  static Coefficients unit(const Basis& basis, Generator g);

  double& at(Generator g);
  double at(Generator g) const;

  double max_abs() const;
  Coefficients& operator+=(const Coefficients& other);
  Coefficients& operator-=(const Coefficients& other);
  Coefficients& operator*=(double s);
};

Coefficients operator+(Coefficients a, const Coefficients& b);
Coefficients operator-(Coefficients a, const Coefficients& b);
Coefficients operator*(double s, Coefficients a);

}  // namespace lieconst
