#pragma once

#include "lyclamp/dynamics.hpp"
#include "lyclamp/signals.hpp"
#include "lyclamp/stabilizer.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace lyclamp {

/// Everything a closed-loop run needs. `stabilizer.dt` is the control and
/// integration step.
struct SimulationSetup {
  PlantModel plant;
  ReferenceKind reference = Sinusoid{};
  BaseLawSpec base = ZeroLaw{};
  StabilizerConfig stabilizer;
  Integrator integrator = Integrator::semi_implicit_euler;
  double horizon = 60.0;
  State x0;
};

struct StepRecord {
  double t = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double y_r = 0.0;
  double y_r_dot = 0.0;
  double y_r_ddot = 0.0;
  double e = 0.0;
  double s = 0.0;  // 0 for V1 runs
  double u_b = 0.0;
  double threshold = 0.0;
  double u = 0.0;
  bool overridden = false;
  double V1 = 0.0;
  double V2 = 0.0;
  bool decrease_ok = true;
};

struct Termination {
  bool completed = true;
  std::size_t step = 0;  // failing step when aborted
  std::string reason;
};

struct Trace {
  SimulationSetup setup;
  std::vector<StepRecord> records;
  Termination termination;
};

/// floor(horizon / dt), tolerant to the representation error of dt.
std::size_t step_count(double horizon, double dt);

/// Runs the sampled loop for step_count(horizon, dt) steps. Per step:
/// reference at t_k, error from the pre-update state, u_b draw, clamp, log,
/// integrate. Divergence ends the run with termination.completed = false.
/// Throws std::invalid_argument / DegenerateGain on an invalid setup.
Trace simulate(const SimulationSetup& setup);

struct Metrics {
  double t_settle = 0.0;
  double max_abs_e_after = 0.0;
  double u_min = 0.0;
  double u_max = 0.0;
  double max_abs_u = 0.0;
  double ub_min = 0.0;
  double ub_max = 0.0;
  double override_fraction = 0.0;
  std::size_t decrease_violations = 0;
  double chattering_index = 0.0;  // sum |u_{k+1} - u_k| / horizon
  std::size_t steps = 0;
};

/// Throws EmptyTrace when the trace has no records.
Metrics compute_metrics(const Trace& trace, double t_settle);

}  // namespace lyclamp
