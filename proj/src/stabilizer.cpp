#include "lyclamp/stabilizer.hpp"

#include "lyclamp/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace lyclamp {

std::string_view to_string(Variant v) noexcept { return v == Variant::v1 ? "V1" : "V2"; }

bool parse_variant(std::string_view name, Variant& out) noexcept {
  if (name == "V1" || name == "v1") {
    out = Variant::v1;
    return true;
  }
  if (name == "V2" || name == "v2") {
    out = Variant::v2;
    return true;
  }
  return false;
}

void StabilizerConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("stabilizer dt must be > 0");
  if (model_b == 0.0 || model_b * dt == 0.0) throw DegenerateGain("stabilizer gain b*dt is zero");
  if (variant == Variant::v2 && !(k > 0.0)) throw std::invalid_argument("V2 requires k > 0");
  if (!model_f) throw std::invalid_argument("stabilizer has no drift model");
}

StabilizerConfig make_stabilizer(Variant variant, const PlantModel& plant, double dt, double k) {
  StabilizerConfig cfg;
  cfg.variant = variant;
  cfg.k = k;
  cfg.dt = dt;
  cfg.model_f = plant.drift;
  cfg.model_b = plant.gain_b;
  cfg.validate();
  return cfg;
}

double v1_threshold(const State& state, const ReferenceSample& ref, const StabilizerConfig& cfg) {
  const double gamma = cfg.model_b * cfg.dt;
  if (gamma == 0.0) throw DegenerateGain("b*dt is zero");
  const double m = ref.y_r_dot - state.x2 - cfg.model_f(state.x1, state.x2) * cfg.dt;
  return m / gamma;
}

SurfaceThreshold v2_threshold(const State& state, const ReferenceSample& ref,
                              const StabilizerConfig& cfg) {
  if (cfg.model_b == 0.0) throw DegenerateGain("b is zero");
  const double e = ref.y_r - state.x1;
  const double e_dot = ref.y_r_dot - state.x2;
  const double n = cfg.k * e_dot + ref.y_r_ddot - cfg.model_f(state.x1, state.x2);
  return {n / cfg.model_b, cfg.k * e + e_dot};
}

ClampDecision clamp(double u_b, double threshold, double sign_driver) noexcept {
  double u = u_b;
  if (sign_driver > 0.0) {
    u = std::max(threshold, u_b);
  } else if (sign_driver < 0.0) {
    u = std::min(threshold, u_b);
  }
  return {threshold, sign_driver, u, u != u_b};
}

ClampDecision stabilize(const State& state, const ReferenceSample& ref, double u_b,
                        const StabilizerConfig& cfg) {
  if (cfg.variant == Variant::v1) {
    const double threshold = v1_threshold(state, ref, cfg);
    double driver = ref.y_r - state.x1;
    if (driver == 0.0) driver = (ref.y_r_dot - state.x2) * cfg.dt;
    return clamp(u_b, threshold, driver);
  }
  const SurfaceThreshold st = v2_threshold(state, ref, cfg);
  return clamp(u_b, st.threshold, st.s);
}

double v1_decrease_margin(const State& state, const ReferenceSample& ref, double u,
                          const StabilizerConfig& cfg) {
  const double e = ref.y_r - state.x1;
  const double x2_next =
      state.x2 + (cfg.model_f(state.x1, state.x2) + cfg.model_b * u) * cfg.dt;
  return e * (ref.y_r_dot - x2_next);
}

double v2_decrease_margin(const State& state, const ReferenceSample& ref, double u,
                          const StabilizerConfig& cfg) {
  const double e = ref.y_r - state.x1;
  const double e_dot = ref.y_r_dot - state.x2;
  const double s = cfg.k * e + e_dot;
  const double n = cfg.k * e_dot + ref.y_r_ddot - cfg.model_f(state.x1, state.x2);
  return s * (n - cfg.model_b * u);
}

bool decrease_ok(const State& state, const ReferenceSample& ref, double u,
                 const StabilizerConfig& cfg) {
  const double margin = cfg.variant == Variant::v1 ? v1_decrease_margin(state, ref, u, cfg)
                                                   : v2_decrease_margin(state, ref, u, cfg);
  return margin <= kDecreaseTolerance;
}

}  // namespace lyclamp
