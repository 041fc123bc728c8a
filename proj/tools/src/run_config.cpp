#include "chemotaxis/cli/run_config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "chemotaxis/error.hpp"

namespace chemotaxis::cli {

namespace {

using KeyMap = std::map<std::string, YAML::Node>;

void flatten(const YAML::Node& node, const std::string& prefix, KeyMap& out) {
  if (node.IsMap()) {
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      flatten(kv.second, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  if (out.count(prefix) != 0) {
    throw ConfigError(prefix + ": duplicate key");
  }
  out[prefix] = node;
}

const std::set<std::string>& output_keys() {
  static const std::set<std::string> keys{"output_dir", "sample_every", "emit_snapshots", "samples"};
  return keys;
}

const std::set<std::string>& inline_keys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k{"name", "epsilon", "n_cells", "t_end", "cfl_guard", "initial", "initial.kind",
                            "initial.u", "initial.v", "figure_times", "expect"};
    for (const char* s : {"alpha1", "alpha2", "beta1", "beta2"}) {
      for (const char* p : {".kind", ".c", ".a", ".k"}) {
        k.insert(std::string(s) + p);
      }
    }
    return k;
  }();
  return keys;
}

// Typed access that reports the offending key.
class Document {
 public:
  explicit Document(KeyMap keys) : keys_(std::move(keys)) {}

  bool has(const std::string& key) const { return keys_.count(key) != 0; }

  template <typename T>
  T get(const std::string& key) const {
    const auto it = keys_.find(key);
    if (it == keys_.end()) {
      throw ConfigError(key + ": missing required key");
    }
    return convert<T>(key, it->second);
  }

  template <typename T>
  T get_or(const std::string& key, T fallback) const {
    return has(key) ? get<T>(key) : fallback;
  }

  const YAML::Node& node(const std::string& key) const { return keys_.at(key); }

  template <typename T>
  static T convert(const std::string& key, const YAML::Node& n) {
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(key + ": cannot read value '" + YAML::Dump(n) + "'");
    }
  }

 private:
  KeyMap keys_;
};

double finite(const std::string& key, double x) {
  if (!std::isfinite(x)) throw ConfigError(key + ": must be finite");
  return x;
}

std::vector<double> time_list(const Document& doc, const std::string& key) {
  const YAML::Node& n = doc.node(key);
  if (!n.IsSequence()) {
    throw ConfigError(key + ": expected a list of times");
  }
  std::vector<double> out;
  for (const auto& item : n) {
    const double t = Document::convert<double>(key, item);
    if (!(t >= 0.0) || !std::isfinite(t)) {
      throw ConfigError(key + ": times must be finite and >= 0");
    }
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BoundarySignal parse_signal(const Document& doc, const std::string& name) {
  BoundarySignal s;
  const std::string kind = doc.get<std::string>(name + ".kind");
  try {
    s.kind = parse_signal_kind(kind.c_str());
  } catch (const ConfigError& e) {
    throw ConfigError(name + ".kind: " + e.what());
  }
  s.c = finite(name + ".c", doc.get_or<double>(name + ".c", 0.0));
  s.a = finite(name + ".a", doc.get_or<double>(name + ".a", 0.0));
  s.k = finite(name + ".k", doc.get_or<double>(name + ".k", 0.0));
  try {
    s.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(name + ": " + e.what());
  }
  return s;
}

Fields parse_fields(const std::string& key, const std::string& value) {
  if (value == "u") return Fields::u;
  if (value == "v") return Fields::v;
  if (value == "both") return Fields::both;
  throw ConfigError(key + ": expected u, v or both");
}

Expectation parse_expectation(const YAML::Node& item, std::size_t index) {
  const std::string where = "expect[" + std::to_string(index) + "]";
  if (!item.IsMap() || !item["kind"]) {
    throw ConfigError(where + ": expected a map with a 'kind' key");
  }
  KeyMap keys;
  flatten(item, "", keys);
  const Document doc(std::move(keys));
  const std::string kind = doc.get<std::string>("kind");
  std::set<std::string> allowed{"kind"};
  Expectation out;
  if (kind == "converges_to") {
    allowed.insert({"fields", "u", "v", "tol"});
    ConvergesTo e;
    e.fields = parse_fields(where + ".fields", doc.get_or<std::string>("fields", "both"));
    e.u_target = doc.get_or<double>("u", 0.0);
    e.v_target = doc.get_or<double>("v", 0.0);
    e.tol = doc.get_or<double>("tol", e.tol);
    out = e;
  } else if (kind == "steady_off_interpolant") {
    allowed.insert({"fields", "margin", "residual_tol"});
    DiffersFromInterpolant e;
    e.fields = parse_fields(where + ".fields", doc.get_or<std::string>("fields", "both"));
    e.margin = doc.get_or<double>("margin", e.margin);
    e.residual_tol = doc.get_or<double>("residual_tol", e.residual_tol);
    out = e;
  } else if (kind == "v_away_from") {
    allowed.insert({"value", "margin"});
    VAwayFrom e;
    e.value = doc.get<double>("value");
    e.margin = doc.get_or<double>("margin", e.margin);
    out = e;
  } else if (kind == "v_diverges") {
    out = VDiverges{};
  } else if (kind == "manufactured_bound") {
    allowed.insert("coefficient");
    out = ManufacturedBound{doc.get<double>("coefficient")};
  } else {
    throw ConfigError(where + ".kind: unknown expectation '" + kind + "'");
  }
  for (const auto& kv : item) {
    const auto key = kv.first.as<std::string>();
    if (allowed.count(key) == 0) {
      throw ConfigError(where + "." + key + ": unknown key");
    }
  }
  return out;
}

Scenario parse_inline(const Document& doc) {
  Scenario scn;
  scn.name = doc.get_or<std::string>("name", "custom");

  const double epsilon = finite("epsilon", doc.get<double>("epsilon"));
  if (epsilon < 0.0) throw ConfigError("epsilon: must be >= 0");
  const long long n_cells = doc.get<long long>("n_cells");
  if (n_cells < 4) throw ConfigError("n_cells: n_cells >= 4 required (got " + std::to_string(n_cells) + ")");
  const double t_end = finite("t_end", doc.get<double>("t_end"));
  if (!(t_end > 0.0)) throw ConfigError("t_end: must be > 0");

  SchemeConfig& cfg = scn.cfg;
  cfg.mode = epsilon > 0.0 ? Mode::eps_positive : Mode::eps_zero;
  cfg.params.epsilon = epsilon;
  try {
    cfg.grid = make_grid(epsilon, static_cast<std::size_t>(n_cells));
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("n_cells: ") + e.what());
  }
  cfg.t_end = t_end;
  cfg.cfl_guard = doc.get_or<double>("cfl_guard", cfg.cfl_guard);
  if (!(cfg.cfl_guard > 0.0)) throw ConfigError("cfl_guard: must be > 0");

  cfg.boundary.alpha1 = parse_signal(doc, "alpha1");
  cfg.boundary.alpha2 = parse_signal(doc, "alpha2");
  if (cfg.mode == Mode::eps_positive) {
    cfg.boundary.beta1 = parse_signal(doc, "beta1");
    cfg.boundary.beta2 = parse_signal(doc, "beta2");
  } else {
    cfg.boundary.beta1 = doc.has("beta1.kind") ? parse_signal(doc, "beta1") : BoundarySignal::constant(0.0);
    cfg.boundary.beta2 = doc.has("beta2.kind") ? parse_signal(doc, "beta2") : BoundarySignal::constant(0.0);
  }

  const std::string init_key = doc.has("initial.kind") ? "initial.kind" : "initial";
  try {
    scn.initial.kind = parse_initial_kind(doc.get_or<std::string>(init_key, "paper"));
  } catch (const ConfigError& e) {
    throw ConfigError(init_key + ": " + e.what());
  }
  if (scn.initial.kind == InitialData::Kind::constant) {
    scn.initial.u = doc.get<double>("initial.u");
    scn.initial.v = doc.get<double>("initial.v");
    if (!(scn.initial.u > 0.0)) throw ConfigError("initial.u: must be > 0");
  }

  if (doc.has("samples")) {
    scn.samples = time_list(doc, "samples");
  } else {
    const std::vector<double> figures = doc.has("figure_times") ? time_list(doc, "figure_times")
                                                                  : std::vector<double>{};
    scn.samples = default_samples(figures, t_end);
  }

  if (doc.has("expect")) {
    const YAML::Node& list = doc.node("expect");
    if (!list.IsSequence()) throw ConfigError("expect: expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      scn.expectations.push_back(parse_expectation(list[i], i));
    }
  }

  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  return scn;
}

}  // namespace

RunConfig parse_config(std::string_view document) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(document));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed document: ") + e.what());
  }
  if (!root.IsMap()) {
    throw ConfigError("document must be a map of keys");
  }
  KeyMap keys;
  flatten(root, "", keys);

  const bool is_preset = keys.count("scenario") != 0;
  bool any_inline = false;
  for (const auto& [key, _] : keys) {
    if (key == "scenario" || output_keys().count(key) != 0) continue;
    if (inline_keys().count(key) == 0) {
      throw ConfigError(key + ": unknown key");
    }
    any_inline = true;
  }
  if (is_preset && any_inline) {
    throw ConfigError("scenario: a preset name excludes inline definition keys");
  }
  if (!is_preset && !any_inline) {
    throw ConfigError("scenario: missing required key (or an inline definition)");
  }

  const Document doc(std::move(keys));
  RunConfig rc;
  if (is_preset) {
    const auto name = doc.get<std::string>("scenario");
    try {
      rc.scenario = paper_preset(name);
    } catch (const LookupError& e) {
      throw ConfigError(std::string("scenario: ") + e.what());
    }
    rc.preset = name;
    if (doc.has("samples")) {
      rc.scenario.samples = time_list(doc, "samples");
    }
  } else {
    rc.scenario = parse_inline(doc);
  }

  rc.output_dir = doc.get_or<std::string>("output_dir", rc.output_dir.string());
  if (doc.has("sample_every")) {
    const double stride = doc.get<double>("sample_every");
    if (!(stride > 0.0) || !std::isfinite(stride)) throw ConfigError("sample_every: must be > 0");
    rc.sample_every = stride;
  }
  rc.emit_snapshots = doc.get_or<bool>("emit_snapshots", rc.emit_snapshots);
  return rc;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

Scenario effective_scenario(const RunConfig& rc) {
  Scenario scn = rc.scenario;
  if (rc.sample_every) {
    const double stride = *rc.sample_every;
    const auto count = static_cast<long long>(std::floor(scn.cfg.t_end / stride + 1e-9));
    for (long long k = 1; k <= count; ++k) {
      scn.samples.push_back(static_cast<double>(k) * stride);
    }
    std::sort(scn.samples.begin(), scn.samples.end());
    scn.samples.erase(std::unique(scn.samples.begin(), scn.samples.end()), scn.samples.end());
  }
  return scn;
}

}  // namespace chemotaxis::cli
