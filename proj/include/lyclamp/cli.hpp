#pragma once

#include "lyclamp/config.hpp"
#include "lyclamp/harness.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lyclamp::cli {

enum ExitCode : int { kPass = 0, kError = 1, kMetricFailure = 2 };

struct Options {
  bool plot = true;
};

/// Control spans of a V2 preset next to its V1 counterpart on the same seed.
struct SpanComparison {
  std::string against;
  double u_min = 0.0;
  double u_max = 0.0;
  double max_abs_u = 0.0;
};

/// Preset whose control span a preset is compared against (test3 -> test1,
/// test4 -> test2), if any.
std::optional<std::string> comparison_preset(std::string_view name);

/// Failed criteria for a finished run; empty means pass.
std::vector<std::string> check_acceptance(const RunConfig& cfg, const Termination& term,
                                          const Metrics& m);

nlohmann::json summary_json(const RunConfig& cfg, const Termination& term, const Metrics& m,
                            const std::vector<std::string>& failures,
                            const std::optional<SpanComparison>& comparison);

/// "3", "1,2,5" or "1..10" (inclusive). Throws ConfigError on bad input.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

int run_preset(std::string_view name, std::uint64_t seed, const std::filesystem::path& out_dir,
               const Options& opts, std::ostream& out, std::ostream& err);

int run_config(const std::filesystem::path& config_file, const std::filesystem::path& out_dir,
               const Options& opts, std::ostream& out, std::ostream& err);

/// Per-seed summaries under out_dir/seed_<n>/ plus out_dir/aggregate.json.
int sweep(std::string_view preset, const std::vector<std::uint64_t>& seeds,
          const std::filesystem::path& out_dir, const Options& opts, std::ostream& out,
          std::ostream& err);

/// Entry point used by the `simulate` executable.
int main(int argc, char** argv);

}  // namespace lyclamp::cli
