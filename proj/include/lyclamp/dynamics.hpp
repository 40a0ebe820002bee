#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>

namespace lyclamp {

struct State {
  double x1 = 0.0;  // position, also the output y
  double x2 = 0.0;  // velocity
};

bool is_finite(const State& s) noexcept;

/// f(x1, x2) in x2' = f(x1, x2) + b u.
using DriftFn = std::function<double(double, double)>;

struct PlantModel {
  DriftFn drift;
  double gain_b = 1.0;
  std::map<std::string, double> params;

  double f(double x1, double x2) const { return drift(x1, x2); }
};

/// f = -a1 x1 - a2 x2.
double linear_drift(double x1, double x2, double a1, double a2) noexcept;

/// Linear plant x1' = x2, x2' = -a1 x1 - a2 x2 + b u. Throws DegenerateGain if b == 0.
PlantModel make_linear_plant(double a1, double a2, double b);

struct Derivatives {
  double dx1 = 0.0;
  double dx2 = 0.0;
};

Derivatives plant_derivatives(const State& state, double u, const PlantModel& model);

// All steppers hold u constant over [t, t + dt] and throw NonFiniteState if
// the result is not finite.

/// Explicit forward Euler: x1 += x2 dt, x2 += (f + b u) dt, both from the old state.
State euler_step(const State& state, double u, const PlantModel& model, double dt);

/// Velocity first, then position from the new velocity. Same x2 update as
/// euler_step.
State semi_implicit_euler_step(const State& state, double u, const PlantModel& model,
                               double dt);

/// Classic RK4. Only for sensitivity studies; the discrete decrease check is
/// not exact under it.
State rk4_step(const State& state, double u, const PlantModel& model, double dt);

enum class Integrator { euler, semi_implicit_euler, rk4 };

State integrate_step(Integrator method, const State& state, double u, const PlantModel& model,
                     double dt);

std::string_view to_string(Integrator method) noexcept;
/// Returns false on an unrecognized name.
bool parse_integrator(std::string_view name, Integrator& out) noexcept;

}  // namespace lyclamp
