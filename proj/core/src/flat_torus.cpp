#include <cmath>

#include "spectral_model.hpp"

namespace lieconst::detail {

namespace {

class FlatTorusModel final : public SpectralModel {
 public:
  explicit FlatTorusModel(const ManifoldSpec& spec) : band_(spec.band) {
    for (const auto& m : flat_torus_modes(band_)) {
      modes_.emplace_back(m);
      eigenvalues_.push_back(4.0 * kPi * kPi * m.norm2());
    }
  }

  ScalarJet evaluate(std::size_t mode, const Points& points) const override {
    ScalarJet jet = zero_jet(points.size());
    accumulate_torus_mode(std::get<TorusMode>(modes_.at(mode)), 1.0, points, jet);
    return jet;
  }

  MetricSamples metric(const Points& points) const override { return flat_metric(points.size()); }

  // Triple products of banded modes reach per-axis frequency 3*kmax.
  QuadratureGrid make_grid(std::optional<int> per_axis) const override {
    const int kmax = static_cast<int>(std::floor(std::sqrt(static_cast<double>(band_))));
    return uniform_torus_grid(per_axis.value_or(4 * kmax + 2));
  }

  Eigen::ArrayXd curvature(const Points& points) const override {
    return Eigen::ArrayXd::Zero(points.size());
  }

  std::vector<HarmonicField> harmonic_fields() const override {
    return {HarmonicField{0, {1.0, 0.0}}, HarmonicField{1, {0.0, 1.0}}};
  }

  bool band_closed() const override { return true; }

 private:
  int band_;
};

}  // namespace

std::shared_ptr<const SpectralModel> make_flat_torus_model(const ManifoldSpec& spec) {
  return std::make_shared<FlatTorusModel>(spec);
}

}  // namespace lieconst::detail
