#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lyclamp/batch.hpp"
#include "lyclamp/config.hpp"
#include "lyclamp/errors.hpp"

#include <cstring>

using namespace lyclamp;

namespace {
bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }
}  // namespace

TEST_CASE("parallel batch equals the serial reference bit for bit") {
  std::vector<SimulationSetup> setups;
  for (const char* p : {"test1", "test2", "test3", "test4"}) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) setups.push_back(to_setup(preset_config(p, seed)));
  }
  const auto par = run_batch(setups, 5.0);
  const auto ser = run_batch_serial(setups, 5.0);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    const auto& a = par[i].metrics;
    const auto& b = ser[i].metrics;
    CHECK(par[i].termination.completed == ser[i].termination.completed);
    CHECK(same_bits(a.max_abs_e_after, b.max_abs_e_after));
    CHECK(same_bits(a.u_min, b.u_min));
    CHECK(same_bits(a.u_max, b.u_max));
    CHECK(same_bits(a.chattering_index, b.chattering_index));
    CHECK(same_bits(a.override_fraction, b.override_fraction));
    CHECK(a.decrease_violations == b.decrease_violations);
    CHECK(a.steps == b.steps);
  }
  CHECK(batch_threads() >= 1);
}

TEST_CASE("batch output order follows input order") {
  std::vector<SimulationSetup> setups = {to_setup(preset_config("test1", 3)),
                                         to_setup(preset_config("test3", 3))};
  const auto out = run_batch(setups, 5.0);
  const auto only_second = run_batch_serial(std::span(setups).subspan(1), 5.0);
  CHECK(same_bits(out[1].metrics.u_max, only_second[0].metrics.u_max));
}

TEST_CASE("errors inside the parallel region propagate") {
  std::vector<SimulationSetup> setups = {to_setup(preset_config("test1", 1)),
                                         to_setup(preset_config("test1", 2))};
  setups[1].stabilizer.model_b = 0.0;
  CHECK_THROWS_AS(run_batch(setups, 5.0), DegenerateGain);
  CHECK(run_batch({}, 5.0).empty());
}
