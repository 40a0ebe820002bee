#include "lyclamp/config.hpp"

#include "lyclamp/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

namespace lyclamp {

namespace {

std::size_t line_of(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  return mark.is_null() ? 0 : static_cast<std::size_t>(mark.line) + 1;
}

/// A YAML mapping being consumed key by key. finish() rejects anything left over.
class Section {
 public:
  Section(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.IsMap()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected a mapping", line_of(node_));
  }

  std::string key_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }

  YAML::Node take(const std::string& key) {
    used_.insert(key);
    const YAML::Node& view = node_;
    return view[key];
  }

  Section child(const std::string& key) {
    YAML::Node n = take(key);
    if (!n || n.IsNull()) return Section(YAML::Node(YAML::NodeType::Map), key_path(key));
    return Section(n, key_path(key));
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    YAML::Node n = take(key);
    if (!n) return;
    try {
      out = n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(key_path(key), std::string("expected ") + type_name<T>(), line_of(n));
    }
    if constexpr (std::is_floating_point_v<T>) {
      if (!std::isfinite(out)) throw ConfigError(key_path(key), "must be finite", line_of(n));
    }
  }

  void read_optional(const std::string& key, std::optional<double>& out) {
    YAML::Node n = take(key);
    if (!n) return;
    if (n.IsNull()) {
      out.reset();
      return;
    }
    double v = 0.0;
    used_.erase(key);
    read(key, v);
    out = v;
  }

  std::string required_string(const std::string& key) {
    if (!has(key)) throw ConfigError(key_path(key), "missing required key", line_of(node_));
    std::string s;
    read(key, s);
    return s;
  }

  std::size_t line(const std::string& key) const {
    const YAML::Node n = node_[key];
    return n ? line_of(n) : line_of(node_);
  }

  void finish() const {
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!used_.count(key)) throw ConfigError(key_path(key), "unknown key", line_of(kv.first));
    }
  }

 private:
  template <typename T>
  static const char* type_name() {
    if constexpr (std::is_same_v<T, std::string>) return "a string";
    else if constexpr (std::is_integral_v<T>) return "a non-negative integer";
    else return "a real number";
  }

  YAML::Node node_;
  std::string path_;
  std::set<std::string> used_;
};

ReferenceKind parse_reference(Section sec) {
  const std::string kind = sec.required_string("kind");
  ReferenceKind out;
  if (kind == "sinusoid") {
    Sinusoid s;
    sec.read("amplitude", s.amplitude);
    sec.read("angular_frequency", s.angular_frequency);
    out = s;
  } else if (kind == "step") {
    Step s;
    sec.read("level", s.level);
    out = s;
  } else {
    throw ConfigError(sec.key_path("kind"), "expected sinusoid or step, got '" + kind + "'",
                      sec.line("kind"));
  }
  sec.finish();
  return out;
}

BaseLawSpec parse_base_law(Section sec) {
  const std::string kind = sec.required_string("kind");
  BaseLawSpec out;
  if (kind == "noise") {
    NoiseLaw n;
    sec.read("lo", n.lo);
    sec.read("hi", n.hi);
    out = n;
  } else if (kind == "constant") {
    ConstantLaw c;
    sec.read("value", c.value);
    out = c;
  } else if (kind == "zero") {
    out = ZeroLaw{};
  } else if (kind == "pid") {
    PidLaw p;
    sec.read("kp", p.kp);
    sec.read("ki", p.ki);
    sec.read("kd", p.kd);
    out = p;
  } else {
    throw ConfigError(sec.key_path("kind"),
                      "expected noise, constant, zero or pid, got '" + kind + "'",
                      sec.line("kind"));
  }
  sec.finish();
  return out;
}

RunConfig parse_root(const YAML::Node& root) {
  RunConfig cfg;
  Section top(root, "");
  top.read("name", cfg.name);
  top.read("seed", cfg.seed);
  top.read("horizon", cfg.horizon);
  top.read("t_settle", cfg.t_settle);
  if (top.has("integrator")) {
    std::string name;
    top.read("integrator", name);
    if (!parse_integrator(name, cfg.integrator)) {
      throw ConfigError("integrator", "expected euler, semi_implicit_euler or rk4, got '" + name + "'",
                        top.line("integrator"));
    }
  }

  {
    Section x0 = top.child("x0");
    x0.read("x1", cfg.x0.x1);
    x0.read("x2", cfg.x0.x2);
    x0.finish();
  }
  {
    Section plant = top.child("plant");
    plant.read("a1", cfg.plant.a1);
    plant.read("a2", cfg.plant.a2);
    plant.read("b", cfg.plant.b);
    if (cfg.plant.b == 0.0) throw ConfigError("plant.b", "must be nonzero", plant.line("b"));
    plant.finish();
  }
  if (top.has("reference")) cfg.reference = parse_reference(top.child("reference"));
  if (top.has("base_law")) cfg.base_law = parse_base_law(top.child("base_law"));
  {
    Section stab = top.child("stabilizer");
    if (stab.has("variant")) {
      std::string v;
      stab.read("variant", v);
      if (!parse_variant(v, cfg.variant)) {
        throw ConfigError("stabilizer.variant", "expected V1 or V2, got '" + v + "'",
                          stab.line("variant"));
      }
    }
    stab.read("k", cfg.k);
    stab.read("dt", cfg.dt);
    stab.finish();
  }
  {
    Section acc = top.child("acceptance");
    acc.read("max_abs_e", cfg.acceptance.max_abs_e);
    acc.read_optional("min_peak_u", cfg.acceptance.min_peak_u);
    acc.read_optional("max_peak_u", cfg.acceptance.max_peak_u);
    acc.finish();
  }
  {
    Section out = top.child("output");
    out.read("trace", cfg.output.trace);
    out.read("summary", cfg.output.summary);
    out.read("plot", cfg.output.plot);
    out.finish();
  }
  top.finish();
  return cfg;
}

}  // namespace

bool is_preset_name(std::string_view name) noexcept {
  for (auto p : kPresetNames) {
    if (p == name) return true;
  }
  return false;
}

RunConfig preset_config(std::string_view name, std::uint64_t seed) {
  if (!is_preset_name(name)) {
    throw ConfigError("preset", "unknown preset '" + std::string(name) +
                                    "' (expected test1, test2, test3 or test4)");
  }
  RunConfig cfg;
  cfg.name = std::string(name);
  cfg.seed = seed;
  cfg.horizon = 60.0;
  cfg.t_settle = 5.0;
  cfg.integrator = Integrator::semi_implicit_euler;
  cfg.x0 = {0.0, 0.0};
  cfg.plant = {3.0, 2.0, 1.0};
  cfg.base_law = NoiseLaw{-500.0, 500.0, seed};
  cfg.dt = 0.01;
  cfg.k = kDefaultSurfaceGain;
  cfg.acceptance.max_abs_e = 0.2;

  const bool sine = name == "test1" || name == "test3";
  cfg.reference = sine ? ReferenceKind{Sinusoid{1.0, 1.0}} : ReferenceKind{Step{1.0}};
  cfg.variant = (name == "test1" || name == "test2") ? Variant::v1 : Variant::v2;
  if (name == "test1") {
    cfg.acceptance.min_peak_u = 500.0;
    cfg.acceptance.max_peak_u = 2000.0;
  }
  return cfg;
}

void validate(const RunConfig& cfg) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(cfg.plant.a1)) throw ConfigError("plant.a1", "must be finite");
  if (!finite(cfg.plant.a2)) throw ConfigError("plant.a2", "must be finite");
  if (!finite(cfg.plant.b) || cfg.plant.b == 0.0) throw ConfigError("plant.b", "must be nonzero");
  if (!(cfg.dt > 0.0) || !finite(cfg.dt)) throw ConfigError("stabilizer.dt", "must be > 0");
  if (cfg.variant == Variant::v2 && !(cfg.k > 0.0)) {
    throw ConfigError("stabilizer.k", "must be > 0 for V2");
  }
  if (!(cfg.horizon >= cfg.dt) || !finite(cfg.horizon)) {
    throw ConfigError("horizon", "must be >= stabilizer.dt");
  }
  if (!(cfg.t_settle >= 0.0 && cfg.t_settle < cfg.horizon)) {
    throw ConfigError("t_settle", "must lie in [0, horizon)");
  }
  if (!is_finite(cfg.x0)) throw ConfigError("x0", "must be finite");
  if (const auto* n = std::get_if<NoiseLaw>(&cfg.base_law); n && !(n->lo < n->hi)) {
    throw ConfigError("base_law.lo", "must be < base_law.hi");
  }
  if (const auto* s = std::get_if<Sinusoid>(&cfg.reference);
      s && !(finite(s->amplitude) && finite(s->angular_frequency))) {
    throw ConfigError("reference", "must be finite");
  }
  if (!(cfg.acceptance.max_abs_e > 0.0)) throw ConfigError("acceptance.max_abs_e", "must be > 0");
  if (cfg.acceptance.min_peak_u && cfg.acceptance.max_peak_u &&
      *cfg.acceptance.min_peak_u > *cfg.acceptance.max_peak_u) {
    throw ConfigError("acceptance.min_peak_u", "must be <= acceptance.max_peak_u");
  }
  if (cfg.output.trace.empty()) throw ConfigError("output.trace", "must not be empty");
  if (cfg.output.summary.empty()) throw ConfigError("output.summary", "must not be empty");
  if (cfg.output.plot.empty()) throw ConfigError("output.plot", "must not be empty");
}

RunConfig parse_run_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& ex) {
    throw ConfigError("", "parse error: " + ex.msg, static_cast<std::size_t>(ex.mark.line) + 1);
  }
  if (!root || root.IsNull()) throw ConfigError("", "empty config");
  RunConfig cfg = parse_root(root);
  validate(cfg);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

nlohmann::json to_json(const RunConfig& cfg) {
  using nlohmann::json;
  json j;
  j["name"] = cfg.name;
  j["seed"] = cfg.seed;
  j["horizon"] = cfg.horizon;
  j["t_settle"] = cfg.t_settle;
  j["integrator"] = std::string(to_string(cfg.integrator));
  j["x0"] = {{"x1", cfg.x0.x1}, {"x2", cfg.x0.x2}};
  j["plant"] = {{"a1", cfg.plant.a1}, {"a2", cfg.plant.a2}, {"b", cfg.plant.b}};
  j["reference"] = std::visit(
      [](const auto& r) -> json {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, Sinusoid>) {
          return {{"kind", "sinusoid"},
                  {"amplitude", r.amplitude},
                  {"angular_frequency", r.angular_frequency}};
        } else {
          return {{"kind", "step"}, {"level", r.level}};
        }
      },
      cfg.reference);
  j["base_law"] = std::visit(
      [](const auto& b) -> json {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, NoiseLaw>) {
          return {{"kind", "noise"}, {"lo", b.lo}, {"hi", b.hi}};
        } else if constexpr (std::is_same_v<B, ConstantLaw>) {
          return {{"kind", "constant"}, {"value", b.value}};
        } else if constexpr (std::is_same_v<B, ZeroLaw>) {
          return {{"kind", "zero"}};
        } else {
          return {{"kind", "pid"}, {"kp", b.kp}, {"ki", b.ki}, {"kd", b.kd}};
        }
      },
      cfg.base_law);
  j["stabilizer"] = {{"variant", std::string(to_string(cfg.variant))}, {"k", cfg.k}, {"dt", cfg.dt}};
  json acc = {{"max_abs_e", cfg.acceptance.max_abs_e}};
  acc["min_peak_u"] = cfg.acceptance.min_peak_u ? json(*cfg.acceptance.min_peak_u) : json(nullptr);
  acc["max_peak_u"] = cfg.acceptance.max_peak_u ? json(*cfg.acceptance.max_peak_u) : json(nullptr);
  j["acceptance"] = acc;
  j["output"] = {{"trace", cfg.output.trace}, {"summary", cfg.output.summary}, {"plot", cfg.output.plot}};
  return j;
}

SimulationSetup to_setup(const RunConfig& cfg) {
  validate(cfg);
  SimulationSetup s;
  s.plant = make_linear_plant(cfg.plant.a1, cfg.plant.a2, cfg.plant.b);
  s.reference = cfg.reference;
  s.base = cfg.base_law;
  if (auto* n = std::get_if<NoiseLaw>(&s.base)) n->seed = cfg.seed;
  s.stabilizer = make_stabilizer(cfg.variant, s.plant, cfg.dt, cfg.k);
  s.integrator = cfg.integrator;
  s.horizon = cfg.horizon;
  s.x0 = cfg.x0;
  return s;
}

}  // namespace lyclamp
