#include "lyclamp/cli.hpp"

#include "lyclamp/batch.hpp"
#include "lyclamp/errors.hpp"
#include "lyclamp/io.hpp"
#include "lyclamp/version.hpp"

#include "CLI11.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace lyclamp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::optional<std::string> comparison_preset(std::string_view name) {
  if (name == "test3") return "test1";
  if (name == "test4") return "test2";
  return std::nullopt;
}

std::vector<std::string> check_acceptance(const RunConfig& cfg, const Termination& term,
                                          const Metrics& m) {
  std::vector<std::string> failures;
  if (!term.completed) {
    failures.push_back(fmt::format("run aborted at step {}: {}", term.step, term.reason));
  }
  if (m.decrease_violations > 0) {
    failures.push_back(fmt::format("{} per-step Lyapunov decrease violations", m.decrease_violations));
  }
  if (m.max_abs_e_after > cfg.acceptance.max_abs_e) {
    failures.push_back(fmt::format("max |e| after t={} is {:.6g} > {}", cfg.t_settle,
                                   m.max_abs_e_after, cfg.acceptance.max_abs_e));
  }
  if (cfg.acceptance.min_peak_u && m.max_abs_u < *cfg.acceptance.min_peak_u) {
    failures.push_back(fmt::format("max |u| = {:.6g} < {}", m.max_abs_u, *cfg.acceptance.min_peak_u));
  }
  if (cfg.acceptance.max_peak_u && m.max_abs_u > *cfg.acceptance.max_peak_u) {
    failures.push_back(fmt::format("max |u| = {:.6g} > {}", m.max_abs_u, *cfg.acceptance.max_peak_u));
  }
  return failures;
}

json summary_json(const RunConfig& cfg, const Termination& term, const Metrics& m,
                  const std::vector<std::string>& failures,
                  const std::optional<SpanComparison>& comparison) {
  json j;
  j["tool"] = {{"name", "simulate"}, {"version", std::string(kVersion)}};
  j["config"] = to_json(cfg);
  j["termination"] = to_json(term);
  j["metrics"] = to_json(m);
  j["acceptance"] = {{"passed", failures.empty()}, {"failures", failures}};
  if (comparison) {
    j["comparison"] = {
        {"against", comparison->against},
        {"this_run", {{"u_min", m.u_min}, {"u_max", m.u_max}, {"max_abs_u", m.max_abs_u}}},
        {"against_run",
         {{"u_min", comparison->u_min},
          {"u_max", comparison->u_max},
          {"max_abs_u", comparison->max_abs_u}}},
        {"span_ratio", comparison->max_abs_u > 0.0 ? m.max_abs_u / comparison->max_abs_u : 0.0}};
  }
  return j;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  auto number = [&](std::string_view s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
      throw ConfigError("seeds", "bad seed '" + std::string(s) + "'");
    }
    return v;
  };

  std::vector<std::uint64_t> seeds;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const std::uint64_t a = number(text.substr(0, dots));
    const std::uint64_t b = number(text.substr(dots + 2));
    if (b < a) throw ConfigError("seeds", "empty range '" + std::string(text) + "'");
    if (b - a >= 1000000) throw ConfigError("seeds", "range too large");
    for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
    return seeds;
  }
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    seeds.push_back(number(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return seeds;
}

namespace {

SpanComparison to_comparison(const std::string& against, const Metrics& m) {
  return {against, m.u_min, m.u_max, m.max_abs_u};
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write '" + path.string() + "'");
  os << content;
  if (!os) throw Error("write failed for '" + path.string() + "'");
}

void print_metrics(std::ostream& out, const RunConfig& cfg, const Termination& term,
                   const Metrics& m, const std::vector<std::string>& failures,
                   const std::optional<SpanComparison>& cmp) {
  out << fmt::format("{} seed={} variant={} termination={}\n", cfg.name, cfg.seed,
                     to_string(cfg.variant), term.completed ? "completed" : "aborted");
  out << fmt::format("  max|e| (t>={:g}s)   {:.6g}\n", cfg.t_settle, m.max_abs_e_after);
  out << fmt::format("  u range            [{:.6g}, {:.6g}]\n", m.u_min, m.u_max);
  out << fmt::format("  u_b range          [{:.6g}, {:.6g}]\n", m.ub_min, m.ub_max);
  out << fmt::format("  override fraction  {:.4f}\n", m.override_fraction);
  out << fmt::format("  decrease violations {}\n", m.decrease_violations);
  out << fmt::format("  chattering index   {:.6g}\n", m.chattering_index);
  if (cmp) {
    out << fmt::format("  {} u range on same seed [{:.6g}, {:.6g}]\n", cmp->against, cmp->u_min,
                       cmp->u_max);
  }
  for (const auto& f : failures) out << "  FAIL: " << f << '\n';
  out << (failures.empty() ? "PASS\n" : "FAIL\n");
}

int execute(const RunConfig& cfg, const fs::path& out_dir, const Options& opts,
            std::ostream& out) {
  const Trace trace = simulate(to_setup(cfg));
  const Metrics metrics = compute_metrics(trace, cfg.t_settle);

  std::optional<SpanComparison> cmp;
  if (auto against = comparison_preset(cfg.name)) {
    const Trace other = simulate(to_setup(preset_config(*against, cfg.seed)));
    cmp = to_comparison(*against, compute_metrics(other, cfg.t_settle));
  }
  const auto failures = check_acceptance(cfg, trace.termination, metrics);

  fs::create_directories(out_dir);
  {
    std::ofstream os(out_dir / cfg.output.trace, std::ios::binary);
    if (!os) throw Error("cannot write '" + (out_dir / cfg.output.trace).string() + "'");
    write_trace_csv(os, trace);
  }
  write_file(out_dir / cfg.output.summary,
             summary_json(cfg, trace.termination, metrics, failures, cmp).dump(2) + "\n");
  if (opts.plot) {
    std::ofstream os(out_dir / cfg.output.plot, std::ios::binary);
    if (!os) throw Error("cannot write '" + (out_dir / cfg.output.plot).string() + "'");
    write_svg_plot(os, trace,
                   fmt::format("{} (seed {}, {})", cfg.name, cfg.seed, to_string(cfg.variant)));
  }

  print_metrics(out, cfg, trace.termination, metrics, failures, cmp);
  return failures.empty() ? kPass : kMetricFailure;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& ex) {
    err << "error: " << ex.what() << '\n';
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
  }
  return kError;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

int run_preset(std::string_view name, std::uint64_t seed, const fs::path& out_dir,
               const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] { return execute(preset_config(name, seed), out_dir, opts, out); });
}

int run_config(const fs::path& config_file, const fs::path& out_dir, const Options& opts,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] { return execute(load_run_config(config_file), out_dir, opts, out); });
}

int sweep(std::string_view preset, const std::vector<std::uint64_t>& seeds, const fs::path& out_dir,
          const Options& /*opts*/, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (seeds.empty()) throw ConfigError("seeds", "seed list is empty");
    const auto against = comparison_preset(preset);

    std::vector<RunConfig> configs;
    std::vector<SimulationSetup> setups;
    for (auto seed : seeds) {
      configs.push_back(preset_config(preset, seed));
      setups.push_back(to_setup(configs.back()));
    }
    if (against) {
      for (auto seed : seeds) setups.push_back(to_setup(preset_config(*against, seed)));
    }
    const double t_settle = configs.front().t_settle;
    const auto outcomes = run_batch(setups, t_settle);

    fs::create_directories(out_dir);
    std::map<std::string, std::vector<double>> columns;
    json failed = json::array();
    json passed = json::array();
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const RunConfig& cfg = configs[i];
      const RunOutcome& r = outcomes[i];
      std::optional<SpanComparison> cmp;
      if (against) cmp = to_comparison(*against, outcomes[seeds.size() + i].metrics);
      const auto failures = check_acceptance(cfg, r.termination, r.metrics);

      const fs::path seed_dir = out_dir / fmt::format("seed_{}", cfg.seed);
      fs::create_directories(seed_dir);
      write_file(seed_dir / cfg.output.summary,
                 summary_json(cfg, r.termination, r.metrics, failures, cmp).dump(2) + "\n");

      const json metrics = to_json(r.metrics);
      for (const auto& [key, value] : metrics.items()) {
        columns[key].push_back(value.get<double>());
      }
      (failures.empty() ? passed : failed).push_back(cfg.seed);
      out << fmt::format("seed {:>6}  max|e|={:.4g}  u=[{:.6g}, {:.6g}]  violations={}  {}\n",
                         cfg.seed, r.metrics.max_abs_e_after, r.metrics.u_min, r.metrics.u_max,
                         r.metrics.decrease_violations, failures.empty() ? "PASS" : "FAIL");
      for (const auto& f : failures) out << "    FAIL: " << f << '\n';
    }

    json agg;
    agg["tool"] = {{"name", "simulate"}, {"version", std::string(kVersion)}};
    agg["preset"] = std::string(preset);
    agg["seeds"] = seeds;
    agg["passed_seeds"] = passed;
    agg["failed_seeds"] = failed;
    agg["all_passed"] = failed.empty();
    json stats;
    for (const auto& [key, values] : columns) {
      stats[key] = {{"min", *std::min_element(values.begin(), values.end())},
                    {"median", median(values)},
                    {"max", *std::max_element(values.begin(), values.end())}};
    }
    agg["metrics"] = stats;
    write_file(out_dir / "aggregate.json", agg.dump(2) + "\n");

    out << fmt::format("{} seeds: {} passed, {} failed\n", seeds.size(), passed.size(),
                       failed.size());
    return failed.empty() ? kPass : kMetricFailure;
  });
}

int main(int argc, char** argv) {
  CLI::App app{"Lyapunov clamp controller simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Options opts;
  std::string out_dir;

  std::string config_path;
  auto* run = app.add_subcommand("run", "run a custom experiment from a config file");
  run->add_option("config", config_path, "YAML or JSON config file")->required();
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_flag("--no-plot", [&](std::int64_t) { opts.plot = false; }, "skip the SVG plot");

  std::string preset_name;
  std::uint64_t seed = 1;
  auto* preset = app.add_subcommand("preset", "run one of the built-in tests");
  preset->add_option("name", preset_name, "test1 | test2 | test3 | test4")->required();
  preset->add_option("--seed", seed, "noise seed")->capture_default_str();
  preset->add_option("--out", out_dir, "output directory")->required();
  preset->add_flag("--no-plot", [&](std::int64_t) { opts.plot = false; }, "skip the SVG plot");

  std::string sweep_preset;
  std::string seed_spec;
  auto* sw = app.add_subcommand("sweep", "run a preset over many seeds");
  sw->add_option("preset", sweep_preset, "test1 | test2 | test3 | test4")->required();
  sw->add_option("--seeds", seed_spec, "a..b (inclusive) or a,b,c")->required();
  sw->add_option("--out", out_dir, "output directory")->required();
  sw->add_flag("--no-plot", [&](std::int64_t) { opts.plot = false; }, "accepted; sweeps write no plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kError;
  }

  if (*run) return run_config(config_path, out_dir, opts, std::cout, std::cerr);
  if (*preset) return run_preset(preset_name, seed, out_dir, opts, std::cout, std::cerr);
  return guarded(std::cerr, [&] {
    return sweep(sweep_preset, parse_seed_list(seed_spec), out_dir, opts, std::cout, std::cerr);
  });
}

}  // namespace lyclamp::cli
