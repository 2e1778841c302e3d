// Copyright 2026 The risbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "risbf/experiment_config.hpp"

#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace risbf {

using nlohmann::json;

namespace {

struct KindName {
  ExperimentKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {ExperimentKind::kBoundSweep, "bound_sweep"},
    {ExperimentKind::kBoundVsPosition, "bound_vs_position"},
    {ExperimentKind::kSnrVsN, "snr_vs_N"},
    {ExperimentKind::kSnrVsEps, "snr_vs_eps"},
    {ExperimentKind::kConvergence, "convergence"},
    {ExperimentKind::kRestrictedSet, "restricted_set"},
};

std::string TypeName(const json& v) { return v.type_name(); }

// Walks one JSON object, remembering which keys were read so leftovers can
// be reported.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) {
      throw ConfigError(path_ + ": expected object, got " + TypeName(obj_));
    }
  }

  bool Has(const std::string& key) {
    if (!obj_.contains(key)) return false;
    seen_.insert(key);
    return true;
  }

  std::string Path(const std::string& key) const { return path_ + "." + key; }

  const json& At(const std::string& key) const { return obj_.at(key); }

  void Number(const std::string& key, double& out) {
    if (!Has(key)) return;
    out = AsNumber(At(key), Path(key));
  }

  void Integer(const std::string& key, int& out) {
    if (!Has(key)) return;
    const json& v = At(key);
    if (!v.is_number_integer()) throw ConfigError(Path(key) + ": expected integer, got " + TypeName(v));
    out = v.get<int>();
  }

  void Unsigned(const std::string& key, std::uint64_t& out) {
    if (!Has(key)) return;
    const json& v = At(key);
    if (!v.is_number_unsigned()) {
      throw ConfigError(Path(key) + ": expected non-negative integer");
    }
    out = v.get<std::uint64_t>();
  }

  void Boolean(const std::string& key, bool& out) {
    if (!Has(key)) return;
    const json& v = At(key);
    if (!v.is_boolean()) throw ConfigError(Path(key) + ": expected boolean, got " + TypeName(v));
    out = v.get<bool>();
  }

  bool String(const std::string& key, std::string& out) {
    if (!Has(key)) return false;
    const json& v = At(key);
    if (!v.is_string()) throw ConfigError(Path(key) + ": expected string, got " + TypeName(v));
    out = v.get<std::string>();
    return true;
  }

  void Point(const std::string& key, Vec3& out) {
    if (!Has(key)) return;
    const json& v = At(key);
    if (!v.is_array() || v.size() != 3) {
      throw ConfigError(Path(key) + ": expected array of 3 numbers");
    }
    for (int i = 0; i < 3; ++i) out(i) = AsNumber(v[i], Path(key) + "[" + std::to_string(i) + "]");
  }

  void NumberList(const std::string& key, std::vector<double>& out) {
    if (!Has(key)) return;
    const json& v = At(key);
    if (!v.is_array()) throw ConfigError(Path(key) + ": expected array, got " + TypeName(v));
    out.clear();
    for (size_t i = 0; i < v.size(); ++i) {
      out.push_back(AsNumber(v[i], Path(key) + "[" + std::to_string(i) + "]"));
    }
  }

  void IntegerList(const std::string& key, std::vector<int>& out) {
    if (!Has(key)) return;
    const json& v = At(key);
    if (!v.is_array()) throw ConfigError(Path(key) + ": expected array, got " + TypeName(v));
    out.clear();
    for (size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer()) {
        throw ConfigError(Path(key) + "[" + std::to_string(i) + "]: expected integer");
      }
      out.push_back(v[i].get<int>());
    }
  }

  // Number (watts) or unit string.
  void Power(const std::string& key, double& out) {
    if (!Has(key)) return;
    out = Quantity(At(key), Path(key), ParsePower);
  }

  void Ratio(const std::string& key, double& out) {
    if (!Has(key)) return;
    out = Quantity(At(key), Path(key), ParseRatio);
  }

  void Finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(Path(it.key()) + ": unknown key");
    }
  }

 private:
  static double AsNumber(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path + ": expected number, got " + TypeName(v));
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path + ": expected finite number");
    return x;
  }

  static double Quantity(const json& v, const std::string& path,
                         double (*parse)(const std::string&)) {
    if (v.is_number()) return AsNumber(v, path);
    if (!v.is_string()) throw ConfigError(path + ": expected number or string, got " + TypeName(v));
    try {
      return parse(v.get<std::string>());
    } catch (const ConfigError& e) {
      throw ConfigError(path + ": " + e.what());
    }
  }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

void Require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

json PointJson(const Vec3& p) { return json::array({p.x(), p.y(), p.z()}); }

}  // namespace

const char* ToString(ExperimentKind kind) {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

ExperimentKind ParseExperimentKind(const std::string& name) {
  for (const auto& k : kKindNames) {
    if (name == k.name) return k.kind;
  }
  throw ConfigError("unknown experiment kind '" + name + "'");
}

double ParsePower(const std::string& text) {
  static const std::regex pattern(R"(^\s*([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*(dBm|mW|W)?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw ConfigError("cannot parse power '" + text + "' (use e.g. \"27 dBm\" or \"0.5 W\")");
  }
  const double value = std::stod(m[1].str());
  const std::string unit = m[2].str();
  if (unit == "dBm") return DbmToWatts(value);
  if (unit == "mW") return 1e-3 * value;
  return value;
}

double ParseRatio(const std::string& text) {
  static const std::regex pattern(R"(^\s*([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*(dB)?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw ConfigError("cannot parse ratio '" + text + "' (use e.g. \"-30 dB\")");
  }
  const double value = std::stod(m[1].str());
  return m[2].matched ? DbToLinear(value) : value;
}

void ExperimentConfig::Validate() const {
  Require(geometry.d_bs > 0.0 && geometry.d_ris > 0.0, "config.layout: spacings must be positive");
  Require(geometry.num_bs_antennas >= 1, "config.layout.M: must be >= 1");
  for (int l : ris_sides) Require(l >= 1, "config.L: entries must be >= 1");
  for (double e : eps_dp) Require(e >= 0.0, "config.eps_dp: entries must be >= 0");
  Require(carrier_hz > 0.0, "config.channel.carrier_hz: must be positive");
  Require(channel.kappa_r >= 0.0, "config.channel.kappa_r: must be >= 0");
  Require(channel.delta_ru_nlos >= 0.0, "config.channel.delta_ru_nlos: must be >= 0");
  Require(channel.delta_bu >= 0.0, "config.channel.delta_bu: must be >= 0");
  Require(channel.beta > 0.0 && channel.beta <= 1.0, "config.channel.beta: must lie in (0, 1]");
  Require(path_loss.zeta0 > 0.0, "config.channel.zeta0: must be positive");
  Require(path_loss.d0 > 0.0, "config.channel.d0: must be positive");
  Require(path_loss.alpha > 0.0, "config.channel.alpha: must be positive");
  Require(transmit_power > 0.0, "config.power.P_T: must be positive");
  Require(noise_power > 0.0, "config.power.sigma_n2: must be positive");
  Require(eps_r >= 0.0, "config.solver.eps_r: must be >= 0");
  Require(tol_bnb >= 0.0, "config.solver.tol_bnb: must be >= 0");
  Require(max_bnb_nodes >= 1, "config.solver.max_bnb_nodes: must be >= 1");
  Require(max_iterations >= 1, "config.solver.max_iterations: must be >= 1");
  Require(trials >= 1, "config.solver.trials: must be >= 1");
  Require(random_starts >= 0, "config.solver.random_starts: must be >= 0");
  Require(position_axis == 'x' || position_axis == 'y' || position_axis == 'z',
          "config.position_sweep.axis: must be x, y or z");
  for (double u : restricted_uppers) {
    Require(u > 0.0 && u <= 2.0 * kPi, "config.restricted_uppers: entries must lie in (0, 2 pi]");
  }
  try {
    phase_set.Validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config.phase_set: ") + e.what());
  }
}

ExperimentConfig ParseConfigJson(const json& doc) {
  if (doc.is_object() && doc.contains("manifest_version")) {
    if (!doc.contains("config")) throw ConfigError("manifest: missing config");
    return ParseConfigJson(doc.at("config"));
  }
  ExperimentConfig c;
  ObjectReader root(doc, "config");

  std::string kind;
  if (root.String("experiment", kind)) {
    try {
      c.experiment = ParseExperimentKind(kind);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("config.experiment: ") + e.what());
    }
  }
  if (root.Has("layout")) {
    ObjectReader r(root.At("layout"), root.Path("layout"));
    r.Point("bs_anchor", c.geometry.bs_anchor);
    r.Point("ris_anchor", c.geometry.ris_anchor);
    r.Point("ue_estimate", c.ue_estimate);
    r.Number("d_bs", c.geometry.d_bs);
    r.Number("d_ris", c.geometry.d_ris);
    r.Integer("M", c.geometry.num_bs_antennas);
    r.Finish();
  }
  root.IntegerList("L", c.ris_sides);
  root.NumberList("eps_dp", c.eps_dp);
  if (root.Has("channel")) {
    ObjectReader r(root.At("channel"), root.Path("channel"));
    r.Number("carrier_hz", c.carrier_hz);
    r.Number("kappa_r", c.channel.kappa_r);
    r.Ratio("zeta0", c.path_loss.zeta0);
    r.Number("d0", c.path_loss.d0);
    r.Number("alpha", c.path_loss.alpha);
    r.Number("delta_ru_nlos", c.channel.delta_ru_nlos);
    r.Number("delta_bu", c.channel.delta_bu);
    r.Boolean("e_bu", c.channel.e_bu);
    r.Number("beta", c.channel.beta);
    r.Finish();
  }
  if (root.Has("power")) {
    ObjectReader r(root.At("power"), root.Path("power"));
    r.Power("P_T", c.transmit_power);
    r.Power("sigma_n2", c.noise_power);
    r.Finish();
  }
  if (root.Has("solver")) {
    ObjectReader r(root.At("solver"), root.Path("solver"));
    r.Number("eps_r", c.eps_r);
    r.Number("tol_bnb", c.tol_bnb);
    r.Integer("max_bnb_nodes", c.max_bnb_nodes);
    r.Integer("max_iterations", c.max_iterations);
    r.Integer("trials", c.trials);
    r.Integer("random_starts", c.random_starts);
    r.Unsigned("seed", c.seed);
    std::string name;
    try {
      if (r.String("phase_solver", name)) c.solver = ParsePhaseSolver(name);
      if (r.String("init", name)) c.init = ParseInitialPhase(name);
    } catch (const DomainError& e) {
      throw ConfigError(root.Path("solver") + ": " + e.what());
    }
    r.Finish();
  }
  if (root.Has("phase_set")) {
    ObjectReader r(root.At("phase_set"), root.Path("phase_set"));
    std::string name = "full";
    r.String("kind", name);
    if (name == "full") {
      c.phase_set = PhaseSet::Full();
    } else if (name == "interval") {
      c.phase_set.kind = PhaseSetKind::kInterval;
      c.phase_set.lower = 0.0;
      c.phase_set.upper = kPi;
      r.Number("lower", c.phase_set.lower);
      r.Number("upper", c.phase_set.upper);
    } else if (name == "discrete") {
      c.phase_set.kind = PhaseSetKind::kDiscrete;
      c.phase_set.levels = 4;
      r.Integer("levels", c.phase_set.levels);
    } else {
      throw ConfigError(r.Path("kind") + ": expected full, interval or discrete");
    }
    r.Finish();
  }
  if (root.Has("position_sweep")) {
    ObjectReader r(root.At("position_sweep"), root.Path("position_sweep"));
    std::string axis;
    if (r.String("axis", axis)) {
      if (axis.size() != 1) throw ConfigError(r.Path("axis") + ": must be x, y or z");
      c.position_axis = axis[0];
    }
    r.NumberList("values", c.position_values);
    r.Finish();
  }
  root.NumberList("restricted_uppers", c.restricted_uppers);
  root.Finish();

  c.channel.wavelength = kSpeedOfLight / c.carrier_hz;
  c.Validate();
  return c;
}

ExperimentConfig ParseConfigText(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return ParseConfigJson(doc);
}

ExperimentConfig ParseConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfigText(text.str());
}

json ConfigToJson(const ExperimentConfig& c) {
  json phase = {{"kind", "full"}};
  if (c.phase_set.kind == PhaseSetKind::kInterval) {
    phase = {{"kind", "interval"}, {"lower", c.phase_set.lower}, {"upper", c.phase_set.upper}};
  } else if (c.phase_set.kind == PhaseSetKind::kDiscrete) {
    phase = {{"kind", "discrete"}, {"levels", c.phase_set.levels}};
  }
  return {
      {"experiment", ToString(c.experiment)},
      {"layout",
       {{"bs_anchor", PointJson(c.geometry.bs_anchor)},
        {"ris_anchor", PointJson(c.geometry.ris_anchor)},
        {"ue_estimate", PointJson(c.ue_estimate)},
        {"d_bs", c.geometry.d_bs},
        {"d_ris", c.geometry.d_ris},
        {"M", c.geometry.num_bs_antennas}}},
      {"L", c.ris_sides},
      {"eps_dp", c.eps_dp},
      {"channel",
       {{"carrier_hz", c.carrier_hz},
        {"kappa_r", c.channel.kappa_r},
        {"zeta0", c.path_loss.zeta0},
        {"d0", c.path_loss.d0},
        {"alpha", c.path_loss.alpha},
        {"delta_ru_nlos", c.channel.delta_ru_nlos},
        {"delta_bu", c.channel.delta_bu},
        {"e_bu", c.channel.e_bu},
        {"beta", c.channel.beta}}},
      {"power", {{"P_T", c.transmit_power}, {"sigma_n2", c.noise_power}}},
      {"solver",
       {{"eps_r", c.eps_r},
        {"tol_bnb", c.tol_bnb},
        {"max_bnb_nodes", c.max_bnb_nodes},
        {"max_iterations", c.max_iterations},
        {"trials", c.trials},
        {"random_starts", c.random_starts},
        {"seed", c.seed},
        {"phase_solver", ToString(c.solver)},
        {"init", ToString(c.init)}}},
      {"phase_set", phase},
      {"position_sweep",
       {{"axis", std::string(1, c.position_axis)}, {"values", c.position_values}}},
      {"restricted_uppers", c.restricted_uppers},
  };
}

}  // namespace risbf
