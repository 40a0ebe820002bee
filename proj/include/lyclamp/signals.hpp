#pragma once

#include <cstdint>
#include <random>
#include <variant>

namespace lyclamp {

struct ReferenceSample {
  double y_r = 0.0;
  double y_r_dot = 0.0;
  double y_r_ddot = 0.0;
};

struct Sinusoid {
  double amplitude = 1.0;
  double angular_frequency = 1.0;
};

/// Constant level for t >= 0. Derivatives are zero everywhere, t = 0 included.
struct Step {
  double level = 1.0;
};

using ReferenceKind = std::variant<Sinusoid, Step>;

ReferenceSample reference_eval(const ReferenceKind& kind, double t);

/// Uniform draws on [lo, hi] from std::mt19937_64. The engine's output is
/// fixed by the standard and the mapping below is ours, so sequences are
/// reproducible across platforms.
class UniformNoise {
 public:
  UniformNoise(double lo, double hi, std::uint64_t seed);

  double next() noexcept;

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
  std::mt19937_64 engine_;
};

struct NoiseLaw {
  double lo = -500.0;
  double hi = 500.0;
  std::uint64_t seed = 1;
};

struct ConstantLaw {
  double value = 0.0;
};

struct ZeroLaw {};

struct PidLaw {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
};

using BaseLawSpec = std::variant<NoiseLaw, ConstantLaw, ZeroLaw, PidLaw>;

/// A stateful base control law u_b. One instance per simulation loop.
class BaseLaw {
 public:
  /// `dt` is the control period (PID integral step). Throws std::invalid_argument
  /// on lo >= hi or dt <= 0.
  BaseLaw(const BaseLawSpec& spec, double dt);

  /// Next sample. Advances the PRNG / integral accumulator.
  double sample(double t, double e, double e_dot);

  const BaseLawSpec& spec() const noexcept { return spec_; }

 private:
  BaseLawSpec spec_;
  double dt_;
  std::variant<std::monostate, UniformNoise> noise_;
  double integral_ = 0.0;
};

}  // namespace lyclamp
