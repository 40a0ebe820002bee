#include "lyclamp/harness.hpp"

#include "lyclamp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lyclamp {

std::size_t step_count(double horizon, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(horizon >= dt)) throw std::invalid_argument("horizon must be >= dt");
  return static_cast<std::size_t>(std::floor(horizon / dt + 1e-9));
}

Trace simulate(const SimulationSetup& setup) {
  const StabilizerConfig& cfg = setup.stabilizer;
  cfg.validate();
  if (setup.plant.gain_b == 0.0) throw DegenerateGain("plant input gain b must be nonzero");
  if (!is_finite(setup.x0)) throw NonFiniteState("initial state is not finite");

  const double dt = cfg.dt;
  const std::size_t n = step_count(setup.horizon, dt);

  Trace trace;
  trace.setup = setup;
  trace.records.reserve(n);

  BaseLaw base(setup.base, dt);
  State x = setup.x0;

  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    const ReferenceSample ref = reference_eval(setup.reference, t);

    StepRecord r;
    r.t = t;
    r.x1 = x.x1;
    r.x2 = x.x2;
    r.y_r = ref.y_r;
    r.y_r_dot = ref.y_r_dot;
    r.y_r_ddot = ref.y_r_ddot;
    r.e = ref.y_r - x.x1;
    const double e_dot = ref.y_r_dot - x.x2;
    if (cfg.variant == Variant::v2) r.s = cfg.k * r.e + e_dot;

    r.u_b = base.sample(t, r.e, e_dot);
    const ClampDecision d = stabilize(x, ref, r.u_b, cfg);
    r.threshold = d.threshold;
    r.u = d.u;
    r.overridden = d.overridden;
    r.V1 = 0.5 * r.e * r.e;
    r.V2 = 0.5 * r.s * r.s;
    r.decrease_ok = decrease_ok(x, ref, d.u, cfg);
    trace.records.push_back(r);

    try {
      x = integrate_step(setup.integrator, x, d.u, setup.plant, dt);
    } catch (const NonFiniteState& ex) {
      trace.termination = {false, k, ex.what()};
      return trace;
    }
  }
  trace.termination = {true, n, {}};
  return trace;
}

Metrics compute_metrics(const Trace& trace, double t_settle) {
  const auto& recs = trace.records;
  if (recs.empty()) throw EmptyTrace("trace has no records");

  Metrics m;
  m.t_settle = t_settle;
  m.steps = recs.size();
  m.u_min = m.u_max = recs.front().u;
  m.ub_min = m.ub_max = recs.front().u_b;

  std::size_t overridden = 0;
  double variation = 0.0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const StepRecord& r = recs[i];
    if (r.t >= t_settle) m.max_abs_e_after = std::max(m.max_abs_e_after, std::abs(r.e));
    m.u_min = std::min(m.u_min, r.u);
    m.u_max = std::max(m.u_max, r.u);
    m.ub_min = std::min(m.ub_min, r.u_b);
    m.ub_max = std::max(m.ub_max, r.u_b);
    if (r.overridden) ++overridden;
    if (!r.decrease_ok) ++m.decrease_violations;
    if (i + 1 < recs.size()) variation += std::abs(recs[i + 1].u - r.u);
  }
  m.max_abs_u = std::max(std::abs(m.u_min), std::abs(m.u_max));
  m.override_fraction = static_cast<double>(overridden) / static_cast<double>(recs.size());
  const double horizon = trace.setup.horizon > 0.0
                             ? trace.setup.horizon
                             : static_cast<double>(recs.size()) * trace.setup.stabilizer.dt;
  m.chattering_index = variation / horizon;
  return m;
}

}  // namespace lyclamp
