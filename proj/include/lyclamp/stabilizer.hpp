#pragma once

#include "lyclamp/dynamics.hpp"
#include "lyclamp/signals.hpp"

#include <string_view>

namespace lyclamp {

/// V1 = e^2 / 2 on the tracking error; V2 = s^2 / 2 on the surface s = k e + e_dot.
enum class Variant { v1, v2 };

std::string_view to_string(Variant v) noexcept;
bool parse_variant(std::string_view name, Variant& out) noexcept;

/// Default surface gain for V2. Chosen so that k * dt = 1.6 at dt = 0.01.
inline constexpr double kDefaultSurfaceGain = 160.0;

/// Slack allowed on the per-step decrease checks.
inline constexpr double kDecreaseTolerance = 1e-9;

struct StabilizerConfig {
  Variant variant = Variant::v1;
  double k = kDefaultSurfaceGain;  // V2 only
  double dt = 0.01;                // t - t', one control period
  DriftFn model_f;
  double model_b = 1.0;

  /// Throws DegenerateGain on b == 0 or b dt == 0, std::invalid_argument on
  /// dt <= 0 or (V2) k <= 0.
  void validate() const;
};

StabilizerConfig make_stabilizer(Variant variant, const PlantModel& plant, double dt,
                                 double k = kDefaultSurfaceGain);

struct ClampDecision {
  double threshold = 0.0;
  double sign_driver = 0.0;
  double u = 0.0;
  bool overridden = false;
};

/// M / gamma with t' = t - dt:
///   (y_r_dot - x2 - f(x1, x2) dt) / (b dt),
/// the control that makes the Euler-predicted y_r_dot - x2(t + dt) vanish.
double v1_threshold(const State& state, const ReferenceSample& ref, const StabilizerConfig& cfg);

struct SurfaceThreshold {
  double threshold = 0.0;  // N / b
  double s = 0.0;
};

/// e = y_r - x1, e_dot = y_r_dot - x2, s = k e + e_dot,
/// N = k e_dot + y_r_ddot - f(x1, x2).
SurfaceThreshold v2_threshold(const State& state, const ReferenceSample& ref,
                              const StabilizerConfig& cfg);

/// max(threshold, u_b) for sign_driver > 0, min for < 0, u_b for == 0.
ClampDecision clamp(double u_b, double threshold, double sign_driver) noexcept;

/// Threshold + clamp for the configured variant.
///
/// For V1 the driver is e. When e is exactly zero the driver falls back to the
/// one-step predicted error e + (y_r_dot - x2) dt, so a run that starts on the
/// reference is not left uncontrolled. For V2 the driver is s and s == 0 passes
/// u_b through.
ClampDecision stabilize(const State& state, const ReferenceSample& ref, double u_b,
                        const StabilizerConfig& cfg);

/// e * (y_r_dot - x2_next) with x2_next the Euler prediction under `u`.
/// Non-positive when V1 does not increase over the step.
double v1_decrease_margin(const State& state, const ReferenceSample& ref, double u,
                          const StabilizerConfig& cfg);

/// s * (N - b u), i.e. dV2/dt at the sample. Non-positive when V2 does not increase.
double v2_decrease_margin(const State& state, const ReferenceSample& ref, double u,
                          const StabilizerConfig& cfg);

/// Variant-appropriate margin compared against kDecreaseTolerance.
bool decrease_ok(const State& state, const ReferenceSample& ref, double u,
                 const StabilizerConfig& cfg);

}  // namespace lyclamp
