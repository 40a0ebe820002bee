#pragma once

#include "lyclamp/dynamics.hpp"
#include "lyclamp/harness.hpp"
#include "lyclamp/signals.hpp"
#include "lyclamp/stabilizer.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace lyclamp {

struct PlantParams {
  double a1 = 3.0;
  double a2 = 2.0;
  double b = 1.0;
};

/// Pass criteria applied to a finished run (besides completion and zero
/// decrease violations).
struct AcceptanceLimits {
  double max_abs_e = 0.2;
  std::optional<double> min_peak_u;
  std::optional<double> max_peak_u;
};

/// File names written inside the output directory.
struct OutputPaths {
  std::string trace = "trace.csv";
  std::string summary = "summary.json";
  std::string plot = "plot.svg";
};

/// One experiment. The noise law's seed is taken from `seed`, not from
/// `base_law`.
struct RunConfig {
  std::string name = "custom";
  std::uint64_t seed = 1;
  double horizon = 60.0;
  double t_settle = 5.0;
  Integrator integrator = Integrator::semi_implicit_euler;
  State x0;
  PlantParams plant;
  ReferenceKind reference = Sinusoid{};
  BaseLawSpec base_law = NoiseLaw{};
  Variant variant = Variant::v1;
  double k = kDefaultSurfaceGain;
  double dt = 0.01;
  AcceptanceLimits acceptance;
  OutputPaths output;
};

inline constexpr std::array<std::string_view, 4> kPresetNames = {"test1", "test2", "test3",
                                                                 "test4"};

/// test1: V1 + sin(t); test2: V1 + step 1; test3: V2 + sin(t); test4: V2 + step 1.
/// Plant a1=3, a2=2, b=1, dt=0.01, 60 s, x0=(0,0), noise on [-500, 500].
/// Throws ConfigError for an unknown name.
RunConfig preset_config(std::string_view name, std::uint64_t seed);

bool is_preset_name(std::string_view name) noexcept;

/// Throws ConfigError naming the first offending field.
void validate(const RunConfig& cfg);

/// Parses the YAML (or JSON) config text. Unknown keys, wrong types and
/// invalid values raise ConfigError with the key path and line.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

/// Fully resolved config; parse_run_config(to_json(c).dump()) reproduces c.
nlohmann::json to_json(const RunConfig& cfg);

/// Validates, then builds the simulation setup.
SimulationSetup to_setup(const RunConfig& cfg);

}  // namespace lyclamp
