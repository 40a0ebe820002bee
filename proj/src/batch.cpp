#include "lyclamp/batch.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lyclamp {

namespace {
RunOutcome run_one(const SimulationSetup& setup, double t_settle) {
  const Trace trace = simulate(setup);
  return {trace.termination, compute_metrics(trace, t_settle)};
}
}  // namespace

std::vector<RunOutcome> run_batch(std::span<const SimulationSetup> setups, double t_settle) {
  std::vector<RunOutcome> out(setups.size());
  std::vector<std::exception_ptr> errors(setups.size());
  const auto n = static_cast<long long>(setups.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    try {
      out[i] = run_one(setups[i], t_settle);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<RunOutcome> run_batch_serial(std::span<const SimulationSetup> setups,
                                         double t_settle) {
  std::vector<RunOutcome> out;
  out.reserve(setups.size());
  for (const auto& s : setups) out.push_back(run_one(s, t_settle));
  return out;
}

int batch_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace lyclamp
