#include "lyclamp/dynamics.hpp"

#include "lyclamp/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lyclamp {

namespace {

State checked(const State& s) {
  if (!is_finite(s)) {
    throw NonFiniteState("non-finite plant state (x1=" + std::to_string(s.x1) +
                         ", x2=" + std::to_string(s.x2) + ")");
  }
  return s;
}

void require_positive_step(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("integration step must be > 0");
}

}  // namespace

bool is_finite(const State& s) noexcept { return std::isfinite(s.x1) && std::isfinite(s.x2); }

double linear_drift(double x1, double x2, double a1, double a2) noexcept {
  return -a1 * x1 - a2 * x2;
}

PlantModel make_linear_plant(double a1, double a2, double b) {
  if (b == 0.0) throw DegenerateGain("plant input gain b must be nonzero");
  PlantModel m;
  m.drift = [a1, a2](double x1, double x2) { return linear_drift(x1, x2, a1, a2); };
  m.gain_b = b;
  m.params = {{"a1", a1}, {"a2", a2}};
  return m;
}

Derivatives plant_derivatives(const State& state, double u, const PlantModel& model) {
  return {state.x2, model.f(state.x1, state.x2) + model.gain_b * u};
}

State euler_step(const State& state, double u, const PlantModel& model, double dt) {
  require_positive_step(dt);
  const Derivatives d = plant_derivatives(state, u, model);
  return checked({state.x1 + d.dx1 * dt, state.x2 + d.dx2 * dt});
}

State semi_implicit_euler_step(const State& state, double u, const PlantModel& model,
                               double dt) {
  require_positive_step(dt);
  const Derivatives d = plant_derivatives(state, u, model);
  const double x2_next = state.x2 + d.dx2 * dt;
  return checked({state.x1 + x2_next * dt, x2_next});
}

State rk4_step(const State& state, double u, const PlantModel& model, double dt) {
  require_positive_step(dt);
  auto at = [&](const State& s, const Derivatives& d, double h) {
    return State{s.x1 + d.dx1 * h, s.x2 + d.dx2 * h};
  };
  const Derivatives k1 = plant_derivatives(state, u, model);
  const Derivatives k2 = plant_derivatives(at(state, k1, dt / 2), u, model);
  const Derivatives k3 = plant_derivatives(at(state, k2, dt / 2), u, model);
  const Derivatives k4 = plant_derivatives(at(state, k3, dt), u, model);
  return checked({state.x1 + dt / 6 * (k1.dx1 + 2 * k2.dx1 + 2 * k3.dx1 + k4.dx1),
                  state.x2 + dt / 6 * (k1.dx2 + 2 * k2.dx2 + 2 * k3.dx2 + k4.dx2)});
}

State integrate_step(Integrator method, const State& state, double u, const PlantModel& model,
                     double dt) {
  switch (method) {
    case Integrator::euler:
      return euler_step(state, u, model, dt);
    case Integrator::semi_implicit_euler:
      return semi_implicit_euler_step(state, u, model, dt);
    case Integrator::rk4:
      return rk4_step(state, u, model, dt);
  }
  throw std::logic_error("unknown integrator");
}

std::string_view to_string(Integrator method) noexcept {
  switch (method) {
    case Integrator::euler:
      return "euler";
    case Integrator::semi_implicit_euler:
      return "semi_implicit_euler";
    case Integrator::rk4:
      return "rk4";
  }
  return "?";
}

bool parse_integrator(std::string_view name, Integrator& out) noexcept {
  for (Integrator m : {Integrator::euler, Integrator::semi_implicit_euler, Integrator::rk4}) {
    if (to_string(m) == name) {
      out = m;
      return true;
    }
  }
  return false;
}

}  // namespace lyclamp
