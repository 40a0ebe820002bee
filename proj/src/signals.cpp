#include "lyclamp/signals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace lyclamp {

ReferenceSample reference_eval(const ReferenceKind& kind, double t) {
  return std::visit(
      [t](const auto& r) -> ReferenceSample {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, Sinusoid>) {
          const double w = r.angular_frequency;
          const double sn = std::sin(w * t);
          return {r.amplitude * sn, r.amplitude * w * std::cos(w * t), -r.amplitude * w * w * sn};
        } else {
          return {r.level, 0.0, 0.0};
        }
      },
      kind);
}

UniformNoise::UniformNoise(double lo, double hi, std::uint64_t seed)
    : lo_(lo), hi_(hi), engine_(seed) {
  if (!(lo < hi)) throw std::invalid_argument("noise range requires lo < hi");
}

double UniformNoise::next() noexcept {
  // top 53 bits -> [0, 1)
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return std::min(hi_, lo_ + (hi_ - lo_) * unit);
}

BaseLaw::BaseLaw(const BaseLawSpec& spec, double dt) : spec_(spec), dt_(dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("base law step must be > 0");
  if (const auto* n = std::get_if<NoiseLaw>(&spec_)) noise_.emplace<UniformNoise>(n->lo, n->hi, n->seed);
}

double BaseLaw::sample(double /*t*/, double e, double e_dot) {
  return std::visit(
      [&](const auto& law) -> double {
        using L = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<L, NoiseLaw>) {
          return std::get<UniformNoise>(noise_).next();
        } else if constexpr (std::is_same_v<L, ConstantLaw>) {
          return law.value;
        } else if constexpr (std::is_same_v<L, ZeroLaw>) {
          return 0.0;
        } else {
          // rectangle rule, current sample included
          integral_ += e * dt_;
          return law.kp * e + law.ki * integral_ + law.kd * e_dot;
        }
      },
      spec_);
}

}  // namespace lyclamp
