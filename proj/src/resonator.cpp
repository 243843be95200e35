#include "kerrqnd/resonator.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "kerrqnd/error.hpp"

namespace kerrqnd {

void ResonatorSpec::validate() const {
  const std::pair<const char*, double> fields[] = {{"q_load", q_load}, {"q_intr", q_intr},
                                                   {"n0", n0},         {"n2", n2},
                                                   {"lambda0", lambda0}, {"v_eff", v_eff}};
  for (const auto& [name, value] : fields) {
    if (!(std::isfinite(value) && value > 0.0)) {
      throw InvalidArgument(std::string("ResonatorSpec: ") + name + " must be positive");
    }
  }
}

double ResonatorSpec::omega0() const { return 2.0 * std::numbers::pi * kSpeedOfLight / lambda0; }

GammaFactors gamma_factors(const ResonatorSpec& spec) {
  spec.validate();
  const double gx = 2.0 * spec.q_load * (spec.n2 / spec.n0) * kHbar * spec.omega0() * kSpeedOfLight / spec.v_eff;
  return {gx, 0.5 * gx};
}

std::string to_string(LoadingVerdict v) {
  switch (v) {
    case LoadingVerdict::pass:
      return "PASS";
    case LoadingVerdict::marginal:
      return "MARGINAL";
    case LoadingVerdict::fail:
      return "FAIL";
  }
  return "FAIL";
}

LoadingReport loading_check(const ResonatorSpec& spec, double eta) {
  spec.validate();
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidArgument("loading_check: eta must lie in (0, 1)");
  LoadingReport rep;
  rep.ratio = spec.q_load / spec.q_intr;
  rep.epsilon_sq = (1.0 - eta) / eta;
  if (rep.ratio <= rep.epsilon_sq / 3.0) {
    rep.verdict = LoadingVerdict::pass;
  } else if (rep.ratio <= rep.epsilon_sq) {
    rep.verdict = LoadingVerdict::marginal;
  } else {
    rep.verdict = LoadingVerdict::fail;
  }
  return rep;
}

ResonatorSpec parse_resonator_preset(std::istream& in) {
  std::map<std::string, double> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (eq == std::string::npos) {
      if (!trim(line).empty()) {
        throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
      }
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string text = trim(line.substr(eq + 1));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) throw ConfigError(key, "not a number: '" + text + "'");
    values[key] = v;
  }

  ResonatorSpec spec;
  const std::pair<const char*, double*> fields[] = {{"q_load", &spec.q_load}, {"q_intr", &spec.q_intr},
                                                    {"n0", &spec.n0},         {"n2", &spec.n2},
                                                    {"lambda0", &spec.lambda0}, {"v_eff", &spec.v_eff}};
  for (const auto& [name, dst] : fields) {
    const auto it = values.find(name);
    if (it == values.end()) throw ConfigError(name, "missing");
    if (!(std::isfinite(it->second) && it->second > 0.0)) throw ConfigError(name, "must be positive");
    *dst = it->second;
    values.erase(it);
  }
  if (!values.empty()) throw ConfigError(values.begin()->first, "unknown key");
  return spec;
}

ResonatorSpec load_resonator_preset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open resonator preset " + path.string());
  return parse_resonator_preset(in);
}

}  // namespace kerrqnd
