#pragma once

#include "lyclamp/harness.hpp"

#include <span>
#include <vector>

namespace lyclamp {

struct RunOutcome {
  Termination termination;
  Metrics metrics;
};

/// Simulates every setup and reduces it to metrics. Runs are independent and
/// distributed over OpenMP threads; output order matches input order. An
/// exception from any run is rethrown after the parallel region.
std::vector<RunOutcome> run_batch(std::span<const SimulationSetup> setups, double t_settle);

/// Single-threaded reference for run_batch. Results must be bit-identical.
std::vector<RunOutcome> run_batch_serial(std::span<const SimulationSetup> setups,
                                         double t_settle);

/// Threads run_batch will use (1 without OpenMP).
int batch_threads() noexcept;

}  // namespace lyclamp
