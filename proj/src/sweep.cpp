#include "kerrqnd/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "kerrqnd/analytic.hpp"
#include "kerrqnd/config.hpp"
#include "kerrqnd/error.hpp"
#include "kerrqnd/optimizer.hpp"

#ifndef KERRQND_VERSION
#define KERRQND_VERSION "unknown"
#endif

namespace kerrqnd {

std::string to_string(AngleMode mode) {
  switch (mode) {
    case AngleMode::analytic_optimal: return "analytic_optimal";
    case AngleMode::numeric_optimal: return "numeric_optimal";
    case AngleMode::fixed: return "fixed";
  }
  return "?";
}

AngleMode parse_angle_mode(const std::string& name, const std::string& field) {
  if (name == "analytic_optimal") return AngleMode::analytic_optimal;
  if (name == "numeric_optimal") return AngleMode::numeric_optimal;
  if (name == "fixed") return AngleMode::fixed;
  throw ConfigError(field, "unknown angle mode '" + name + "' (analytic_optimal, numeric_optimal, fixed)");
}

std::string to_string(SweepAxis axis) {
  return axis == SweepAxis::probe_photons ? "probe_photons" : "amplification_db";
}

SweepAxis parse_sweep_axis(const std::string& name, const std::string& field) {
  if (name == "probe_photons") return SweepAxis::probe_photons;
  if (name == "amplification_db") return SweepAxis::amplification_db;
  throw ConfigError(field, "unknown axis '" + name + "' (probe_photons, amplification_db)");
}

void SweepSpec::validate() const {
  if (points < 2) throw ConfigError("points", "must be at least 2");
  if (!(std::isfinite(min) && std::isfinite(max) && min < max)) throw ConfigError("max", "need finite min < max");
  if (axis == SweepAxis::probe_photons && !(min > 0.0)) throw ConfigError("min", "probe photons must be positive");
  if (axis == SweepAxis::amplification_db && !(min >= 0.0 && max <= 100.0)) {
    throw ConfigError("min", "amplification must lie in [0, 100] dB");
  }
  if (log && !(min > 0.0)) throw ConfigError("log", "log spacing needs min > 0");
  if (scenarios.empty()) throw ConfigError("scenarios", "at least one scenario required");
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const Scenario& s = scenarios[i];
    const std::string field = "scenarios[" + std::to_string(i) + "]";
    if (!(s.squeeze_db >= 0.0 && s.squeeze_db <= 100.0)) throw ConfigError(field + ".squeeze_db", "must lie in [0, 100]");
    if (!(s.amplification_db >= 0.0 && s.amplification_db <= 100.0)) {
      throw ConfigError(field + ".amplification_db", "must lie in [0, 100]");
    }
  }
  if (!(std::isfinite(gamma_x) && gamma_x > 0.0)) throw ConfigError("gamma_x", "must be positive");
  if (!(std::isfinite(gamma_s) && gamma_s >= 0.0)) throw ConfigError("gamma_s", "must be non-negative");
  if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("eta", "must lie in (0, 1]");
  if (probe_photons) {
    if (axis == SweepAxis::probe_photons) throw ConfigError("probe_photons", "conflicts with the probe_photons axis");
    if (!(std::isfinite(*probe_photons) && *probe_photons > 0.0)) throw ConfigError("probe_photons", "must be positive");
  }
  if (!(mu_reference > 0.0 && mu_reference < 1.0)) throw ConfigError("mu_reference", "must lie in (0, 1)");
}

std::vector<std::string> SweepSpec::labels() const {
  std::vector<std::string> out;
  for (const Scenario& s : scenarios) out.push_back(scenario_label(s, axis));
  return out;
}

std::vector<double> SweepSpec::axis_values() const {
  std::vector<double> out(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / last;
    if (log) {
      out[i] = std::pow(10.0, std::log10(min) + t * (std::log10(max) - std::log10(min)));
    } else {
      out[i] = min + t * (max - min);
    }
  }
  out.front() = min;
  out.back() = max;
  return out;
}

SweepSpec fig3_preset() {
  SweepSpec s;
  s.name = "fig3";
  s.axis = SweepAxis::probe_photons;
  s.min = 1e4;
  s.max = 1e9;
  s.points = 51;
  s.log = true;
  s.scenarios = {{0.0, 0.0}, {10.0, 0.0}, {0.0, 40.0}, {10.0, 40.0}};
  return s;
}

SweepSpec fig5_preset() {
  SweepSpec s;
  s.name = "fig5";
  s.axis = SweepAxis::amplification_db;
  s.min = 0.0;
  s.max = 40.0;
  s.points = 41;
  s.log = false;
  s.scenarios = {{10.0, 0.0}};
  return s;
}

SweepSpec sweep_preset(const std::string& name) {
  if (name == "fig3") return fig3_preset();
  if (name == "fig5") return fig5_preset();
  if (name == "custom") {
    SweepSpec s = fig3_preset();
    s.name = "custom";
    return s;
  }
  throw ConfigError("preset", "unknown preset '" + name + "' (fig3, fig5, custom)");
}

std::string scenario_label(const Scenario& s, SweepAxis axis) {
  char buf[64];
  if (axis == SweepAxis::amplification_db) {
    std::snprintf(buf, sizeof buf, "sq%gdB", s.squeeze_db);
  } else {
    std::snprintf(buf, sizeof buf, "sq%gdB_amp%gdB", s.squeeze_db, s.amplification_db);
  }
  return buf;
}

double sweep_point(const SweepSpec& spec, const Scenario& s, double x) {
  const double r = db_to_squeeze(s.squeeze_db);
  double big_r = db_to_squeeze(s.amplification_db);
  double n_p = x;
  if (spec.axis == SweepAxis::amplification_db) {
    big_r = db_to_squeeze(x);
    n_p = spec.probe_photons ? *spec.probe_photons : np_opt(spec.gamma_s, spec.eta, r, big_r);
  }
  if (spec.angle_mode == AngleMode::analytic_optimal) {
    return std::sqrt(dns2_squeezed(n_p, spec.gamma_x, spec.gamma_s, spec.eta, r, big_r));
  }
  ChainConfig cfg;
  cfg.n_p = n_p;
  cfg.gamma_x = spec.gamma_x;
  cfg.gamma_s = spec.gamma_s;
  cfg.eta = spec.eta;
  cfg.squeeze = {r, spec.theta};
  cfg.amplifier = {big_r, spec.phi};
  cfg.zeta = spec.zeta;
  if (spec.angle_mode == AngleMode::numeric_optimal) return std::sqrt(minimize_angles(cfg).best_value);
  return measurement_error(cfg).delta_ns;
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  SweepResult res;
  res.axis = spec.axis_values();
  res.labels = spec.labels();
  const std::size_t n_pts = res.axis.size();
  const std::size_t n_sc = spec.scenarios.size();
  res.dns.assign(n_sc, std::vector<double>(n_pts, 0.0));

  const std::size_t tasks = n_pts * n_sc;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      const std::size_t sc = t / n_pts;
      const std::size_t i = t % n_pts;
      try {
        res.dns[sc][i] = sweep_point(spec, spec.scenarios[sc], res.axis[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks;
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  res.metadata = {{"tool", "kerrqnd"},
                  {"version", KERRQND_VERSION},
                  {"timestamp", utc_timestamp()},
                  {"parameters", to_json(spec)},
                  {"columns", res.labels},
                  {"quantity", "Delta N_s (photons)"}};
  return res;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << "axis";
  for (const std::string& l : result.labels) out << ',' << l;
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < result.axis.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", result.axis[i]);
    out << buf;
    for (const auto& col : result.dns) {
      std::snprintf(buf, sizeof buf, "%.17g", col[i]);
      out << ',' << buf;
    }
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& cell, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != cell.size()) {
    throw IoError("csv line " + std::to_string(line) + ": not a number '" + cell + "'");
  }
  return v;
}

}  // namespace

SweepResult read_csv(std::istream& in) {
  SweepResult res;
  std::string line;
  if (!std::getline(in, line)) throw IoError("csv: empty input");
  auto header = split_commas(line);
  if (header.empty() || header.front() != "axis") throw IoError("csv: header must start with 'axis'");
  res.labels.assign(header.begin() + 1, header.end());
  res.dns.resize(res.labels.size());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cells = split_commas(line);
    if (cells.size() != header.size()) throw IoError("csv line " + std::to_string(lineno) + ": wrong column count");
    res.axis.push_back(parse_cell(cells[0], lineno));
    for (std::size_t c = 1; c < cells.size(); ++c) res.dns[c - 1].push_back(parse_cell(cells[c], lineno));
  }
  return res;
}

}  // namespace kerrqnd
