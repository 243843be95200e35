#include "kerrqnd/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <limits>

#include "kerrqnd/analytic.hpp"
#include "kerrqnd/error.hpp"

namespace kerrqnd {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& what) {
  if (!j.is_object()) throw ConfigError(what, "expected a JSON object");
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(key, "unknown key");
  }
}

void read_number(const json& j, const char* key, double& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  out = v.get<double>();
}

template <typename Int>
void read_unsigned(const json& j, const char* key, Int& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    out = v.get<Int>();
  } else if (v.is_number_float() && v.get<double>() >= 0.0 && v.get<double>() == std::floor(v.get<double>()) &&
             v.get<double>() <= static_cast<double>(std::numeric_limits<Int>::max())) {
    out = static_cast<Int>(v.get<double>());
  } else {
    throw ConfigError(key, "expected a non-negative integer");
  }
}

void read_bool(const json& j, const char* key, bool& out) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_boolean()) throw ConfigError(key, "expected true or false");
  out = j.at(key).get<bool>();
}

void read_probe_photons(const json& j, std::optional<double>& out) {
  if (!j.contains("probe_photons")) return;
  const json& v = j.at("probe_photons");
  if (v.is_string() && v.get<std::string>() == "optimal") {
    out.reset();
  } else if (v.is_number()) {
    out = v.get<double>();
  } else {
    throw ConfigError("probe_photons", "expected a number or \"optimal\"");
  }
}

/// "angles": a mode name or an explicit {theta, phi, zeta} object.
void read_angles(const json& j, AngleMode& mode, double& theta, double& phi, double& zeta) {
  if (!j.contains("angles")) return;
  const json& v = j.at("angles");
  if (v.is_string()) {
    mode = parse_angle_mode(v.get<std::string>());
    if (mode == AngleMode::fixed) throw ConfigError("angles", "fixed angles need an object {theta, phi, zeta}");
    return;
  }
  if (!v.is_object()) throw ConfigError("angles", "expected a mode name or {theta, phi, zeta}");
  for (const char* k : {"theta", "phi", "zeta"}) {
    if (!v.contains(k)) throw ConfigError(std::string("angles.") + k, "missing");
  }
  for (const auto& [key, value] : v.items()) {
    if (key != "theta" && key != "phi" && key != "zeta") throw ConfigError("angles." + key, "unknown key");
    if (!value.is_number()) throw ConfigError("angles." + key, "expected a number");
  }
  mode = AngleMode::fixed;
  theta = v.at("theta").get<double>();
  phi = v.at("phi").get<double>();
  zeta = v.at("zeta").get<double>();
}

json angles_json(AngleMode mode, double theta, double phi, double zeta) {
  if (mode == AngleMode::fixed) return json{{"theta", theta}, {"phi", phi}, {"zeta", zeta}};
  return to_string(mode);
}

void check(bool ok, const char* field, const char* message) {
  if (!ok) throw ConfigError(field, message);
}

void check_coupling(double gamma_x, double gamma_s, double eta) {
  check(std::isfinite(gamma_x) && gamma_x > 0.0, "gamma_x", "must be positive");
  check(std::isfinite(gamma_s) && gamma_s >= 0.0, "gamma_s", "must be non-negative");
  check(eta > 0.0 && eta <= 1.0, "eta", "must lie in (0, 1]");
}

void check_db(double db, const char* field) {
  check(std::isfinite(db) && db >= 0.0 && db <= 100.0, field, "must lie in [0, 100] dB");
}

void check_angles(double theta, double phi, double zeta) {
  check(std::isfinite(theta), "angles.theta", "must be finite");
  check(std::isfinite(phi), "angles.phi", "must be finite");
  check(std::isfinite(zeta), "angles.zeta", "must be finite");
}

constexpr std::initializer_list<const char*> kErrorKeys = {
    "gamma_x", "gamma_s", "eta", "squeeze_db", "amplification_db", "probe_photons", "angles", "optimizer"};

void fill_error(const json& j, ErrorConfig& c) {
  read_number(j, "gamma_x", c.gamma_x);
  read_number(j, "gamma_s", c.gamma_s);
  read_number(j, "eta", c.eta);
  read_number(j, "squeeze_db", c.squeeze_db);
  read_number(j, "amplification_db", c.amplification_db);
  read_probe_photons(j, c.probe_photons);
  read_angles(j, c.angles, c.theta, c.phi, c.zeta);
  read_bool(j, "optimizer", c.optimizer);
}

}  // namespace

void ErrorConfig::validate() const {
  check_coupling(gamma_x, gamma_s, eta);
  check_db(squeeze_db, "squeeze_db");
  check_db(amplification_db, "amplification_db");
  if (probe_photons) check(std::isfinite(*probe_photons) && *probe_photons > 0.0, "probe_photons", "must be positive");
  check_angles(theta, phi, zeta);
}

ChainConfig ErrorConfig::chain(double n_p) const {
  ChainConfig cfg;
  cfg.n_p = n_p;
  cfg.gamma_x = gamma_x;
  cfg.gamma_s = gamma_s;
  cfg.eta = eta;
  cfg.squeeze.r = db_to_squeeze(squeeze_db);
  cfg.amplifier.r = db_to_squeeze(amplification_db);
  if (angles == AngleMode::fixed) {
    cfg.squeeze.theta = theta;
    cfg.amplifier.theta = phi;
    cfg.zeta = zeta;
    return cfg;
  }
  return with_optimal_angles(cfg);
}

void McSettings::validate() const {
  error.validate();
  check(samples >= 1, "samples", "must be at least 1");
  check(std::isfinite(injected_dns) && injected_dns >= 0.0, "injected_dns", "must be non-negative");
}

void ThresholdConfig::validate() const {
  check(mu > 0.0 && mu <= 1.0, "mu", "must lie in (0, 1]");
  check(std::isfinite(dns) && dns >= 0.0, "dns", "must be non-negative");
}

void ResonatorConfig::validate() const { check(eta > 0.0 && eta < 1.0, "eta", "must lie in (0, 1)"); }

ErrorConfig error_config_from_json(const json& j) {
  require_object(j, "<root>");
  reject_unknown(j, kErrorKeys);
  ErrorConfig c;
  fill_error(j, c);
  c.validate();
  return c;
}

McSettings mc_settings_from_json(const json& j) {
  require_object(j, "<root>");
  reject_unknown(j, {"gamma_x", "gamma_s", "eta", "squeeze_db", "amplification_db", "probe_photons", "angles",
                     "optimizer", "seed", "samples", "injected_dns"});
  McSettings c;
  fill_error(j, c.error);
  read_unsigned(j, "seed", c.seed);
  read_unsigned(j, "samples", c.samples);
  read_number(j, "injected_dns", c.injected_dns);
  c.validate();
  return c;
}

ThresholdConfig threshold_config_from_json(const json& j) {
  require_object(j, "<root>");
  reject_unknown(j, {"mu", "dns"});
  ThresholdConfig c;
  read_number(j, "mu", c.mu);
  read_number(j, "dns", c.dns);
  c.validate();
  return c;
}

ResonatorConfig resonator_config_from_json(const json& j, const std::filesystem::path& base_dir) {
  require_object(j, "<root>");
  reject_unknown(j, {"preset", "eta"});
  ResonatorConfig c;
  if (j.contains("preset")) {
    if (!j.at("preset").is_string()) throw ConfigError("preset", "expected a path string");
    std::filesystem::path p = j.at("preset").get<std::string>();
    c.preset = p.is_relative() ? base_dir / p : p;
  }
  read_number(j, "eta", c.eta);
  c.validate();
  return c;
}

SweepSpec sweep_spec_from_json(const json& j) {
  require_object(j, "<root>");
  reject_unknown(j, {"preset", "axis", "min", "max", "points", "log", "scenarios", "gamma_x", "gamma_s", "eta",
                     "probe_photons", "angles", "mu_reference"});
  std::string preset = "fig3";
  if (j.contains("preset")) {
    if (!j.at("preset").is_string()) throw ConfigError("preset", "expected \"fig3\" or \"fig5\"");
    preset = j.at("preset").get<std::string>();
  }
  SweepSpec s = sweep_preset(preset);
  if (j.contains("axis")) {
    if (!j.at("axis").is_string()) throw ConfigError("axis", "expected a string");
    s.axis = parse_sweep_axis(j.at("axis").get<std::string>());
  }
  read_number(j, "min", s.min);
  read_number(j, "max", s.max);
  read_unsigned(j, "points", s.points);
  read_bool(j, "log", s.log);
  if (j.contains("scenarios")) {
    const json& arr = j.at("scenarios");
    if (!arr.is_array()) throw ConfigError("scenarios", "expected an array");
    s.scenarios.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string field = "scenarios[" + std::to_string(i) + "]";
      const json& e = arr[i];
      if (!e.is_object()) throw ConfigError(field, "expected {squeeze_db, amplification_db}");
      Scenario sc;
      for (const auto& [key, value] : e.items()) {
        if (key != "squeeze_db" && key != "amplification_db") throw ConfigError(field + "." + key, "unknown key");
        if (!value.is_number()) throw ConfigError(field + "." + key, "expected a number");
      }
      if (e.contains("squeeze_db")) sc.squeeze_db = e.at("squeeze_db").get<double>();
      if (e.contains("amplification_db")) sc.amplification_db = e.at("amplification_db").get<double>();
      s.scenarios.push_back(sc);
    }
  }
  read_number(j, "gamma_x", s.gamma_x);
  read_number(j, "gamma_s", s.gamma_s);
  read_number(j, "eta", s.eta);
  read_probe_photons(j, s.probe_photons);
  read_angles(j, s.angle_mode, s.theta, s.phi, s.zeta);
  read_number(j, "mu_reference", s.mu_reference);
  s.validate();
  return s;
}

json to_json(const ErrorConfig& c) {
  json j;
  j["gamma_x"] = c.gamma_x;
  j["gamma_s"] = c.gamma_s;
  j["eta"] = c.eta;
  j["squeeze_db"] = c.squeeze_db;
  j["amplification_db"] = c.amplification_db;
  j["probe_photons"] = c.probe_photons ? json(*c.probe_photons) : json("optimal");
  j["angles"] = angles_json(c.angles, c.theta, c.phi, c.zeta);
  j["optimizer"] = c.optimizer;
  return j;
}

json to_json(const McSettings& c) {
  json j = to_json(c.error);
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["injected_dns"] = c.injected_dns;
  return j;
}

json to_json(const ThresholdConfig& c) { return json{{"mu", c.mu}, {"dns", c.dns}}; }

json to_json(const ResonatorConfig& c) { return json{{"preset", c.preset.string()}, {"eta", c.eta}}; }

json to_json(const SweepSpec& s) {
  json j;
  j["preset"] = s.name;
  j["axis"] = to_string(s.axis);
  j["min"] = s.min;
  j["max"] = s.max;
  j["points"] = s.points;
  j["log"] = s.log;
  json sc = json::array();
  for (const Scenario& e : s.scenarios) {
    sc.push_back(json{{"squeeze_db", e.squeeze_db}, {"amplification_db", e.amplification_db}});
  }
  j["scenarios"] = sc;
  j["gamma_x"] = s.gamma_x;
  j["gamma_s"] = s.gamma_s;
  j["eta"] = s.eta;
  j["probe_photons"] = s.probe_photons ? json(*s.probe_photons) : json("optimal");
  j["angles"] = angles_json(s.angle_mode, s.theta, s.phi, s.zeta);
  j["mu_reference"] = s.mu_reference;
  return j;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<syntax>", path.string() + ": " + e.what());
  }
}

}  // namespace kerrqnd
