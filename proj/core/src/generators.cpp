#include "lieconst/generators.hpp"

#include "lieconst/error.hpp"

namespace lieconst {

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::L: return "L";
    case GeneratorKind::Phi: return "phi";
    case GeneratorKind::H: return "H";
  }
  return "?";
}

GeneratorKind parse_generator_kind(std::string_view name) {
  if (name == "L") return GeneratorKind::L;
  if (name == "phi") return GeneratorKind::Phi;
  if (name == "H") return GeneratorKind::H;
  throw Error(ErrorCode::InvalidConfig, "unknown generator kind '" + std::string(name) + "'");
}

std::string generator_label(const Basis& basis, Generator g) {
  const std::string inner =
      g.kind == GeneratorKind::H ? harmonic_label(g.index) : basis.label(g.index);
  return to_string(g.kind) + "[" + inner + "]";
}

std::vector<Generator> all_generators(const Basis& basis) {
  std::vector<Generator> out;
  for (std::size_t a = 0; a < basis.size(); ++a) out.push_back({GeneratorKind::L, a});
  for (std::size_t a = 0; a < basis.size(); ++a) out.push_back({GeneratorKind::Phi, a});
  for (std::size_t r = 0; r < basis.harmonic_count(); ++r) out.push_back({GeneratorKind::H, r});
  return out;
}

Coefficients Coefficients::zero(Eigen::Index modes, Eigen::Index harmonics) {
  return {Eigen::VectorXd::Zero(modes), Eigen::VectorXd::Zero(modes),
          Eigen::VectorXd::Zero(harmonics)};
}

Coefficients Coefficients::zero(const Basis& basis) {
  return zero(static_cast<Eigen::Index>(basis.size()),
              static_cast<Eigen::Index>(basis.harmonic_count()));
}

Coefficients Coefficients::unit(const Basis& basis, Generator g) {
  Coefficients c = zero(basis);
  c.at(g) = 1.0;
  return c;
}

double& Coefficients::at(Generator g) {
  Eigen::VectorXd& block = g.kind == GeneratorKind::L ? l : g.kind == GeneratorKind::Phi ? phi : h;
  if (static_cast<Eigen::Index>(g.index) >= block.size()) {
    throw Error(ErrorCode::UnknownMode, "generator index out of range");
  }
  return block[static_cast<Eigen::Index>(g.index)];
}

double Coefficients::at(Generator g) const { return const_cast<Coefficients&>(*this).at(g); }

double Coefficients::max_abs() const {
  double m = 0.0;
  for (const auto* block : {&l, &phi, &h}) {
    if (block->size() > 0) m = std::max(m, block->cwiseAbs().maxCoeff());
  }
  return m;
}

Coefficients& Coefficients::operator+=(const Coefficients& other) {
  l += other.l;
  phi += other.phi;
  h += other.h;
  return *this;
}

Coefficients& Coefficients::operator-=(const Coefficients& other) {
  l -= other.l;
  phi -= other.phi;
  h -= other.h;
  return *this;
}

Coefficients& Coefficients::operator*=(double s) {
  l *= s;
  phi *= s;
  h *= s;
  return *this;
}

Coefficients operator+(Coefficients a, const Coefficients& b) { return a += b; }
Coefficients operator-(Coefficients a, const Coefficients& b) { return a -= b; }
Coefficients operator*(double s, Coefficients a) { return a *= s; }

}  // namespace lieconst
