#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "kerrqnd/analytic.hpp"
#include "kerrqnd/config.hpp"
#include "kerrqnd/error.hpp"
#include "kerrqnd/montecarlo.hpp"
#include "kerrqnd/optimizer.hpp"
#include "kerrqnd/resonator.hpp"
#include "kerrqnd/svg_plot.hpp"
#include "kerrqnd/sweep.hpp"
#include "kerrqnd/thresholds.hpp"

#ifndef KERRQND_DEFAULT_PRESET
#define KERRQND_DEFAULT_PRESET "data/caf2.preset"
#endif

namespace kerrqnd::cli {

using nlohmann::json;

namespace {

std::string num(double v, int digits = 6) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

class Report {
 public:
  void line(std::string s) { lines_.push_back(std::move(s)); }
  void kv(const std::string& key, json value) { kv_.emplace_back(key, std::move(value)); }

  void emit(std::ostream& out) const {
    for (const auto& l : lines_) out << l << '\n';
    out << '\n';
    for (const auto& [k, v] : kv_) out << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }

  json results() const {
    json j = json::object();
    for (const auto& [k, v] : kv_) j[k] = v;
    return j;
  }

 private:
  std::vector<std::string> lines_;
  std::vector<std::pair<std::string, json>> kv_;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json merged_config(const GlobalOptions& g, const json& overrides) {
  json j = g.config ? load_json(*g.config) : json::object();
  if (!j.is_object()) throw ConfigError("<root>", "expected a JSON object");
  for (const auto& [k, v] : overrides.items()) j[k] = v;
  return j;
}

std::filesystem::path output_dir(const GlobalOptions& g) {
  const std::filesystem::path dir = g.out ? *g.out : std::filesystem::path(".");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw IoError("cannot write " + path.string());
}

/// With --out, stores parameters and results as <out>/<command>.json.
void save_run(const GlobalOptions& g, const std::string& command, const json& params, const Report& rep) {
  if (!g.out) return;
  const json doc = {{"command", command},
                    {"version", KERRQND_VERSION},
                    {"timestamp", utc_timestamp()},
                    {"parameters", params},
                    {"results", rep.results()}};
  write_text(output_dir(g) / (command + ".json"), doc.dump(2) + "\n");
}

struct ResolvedChain {
  ChainConfig chain;
  bool np_optimal = false;
  std::optional<OptimizationResult> search;
};

ResolvedChain resolve_chain(const ErrorConfig& c, bool run_search) {
  ResolvedChain out;
  out.np_optimal = !c.probe_photons;
  const double n_p = c.probe_photons ? *c.probe_photons
                                     : np_opt(c.gamma_s, c.eta, db_to_squeeze(c.squeeze_db),
                                              db_to_squeeze(c.amplification_db));
  out.chain = c.chain(n_p);
  if (run_search || c.angles == AngleMode::numeric_optimal) out.search = minimize_angles(out.chain);
  if (c.angles == AngleMode::numeric_optimal) {
    out.chain.squeeze.theta = out.search->theta;
    out.chain.amplifier.theta = out.search->phi;
    out.chain.zeta = out.search->zeta;
  }
  return out;
}

void describe_chain(Report& rep, const ErrorConfig& c, const ResolvedChain& rc) {
  const ChainConfig& ch = rc.chain;
  rep.line("  coupling       gamma_x=" + num(c.gamma_x) + "  gamma_s=" + num(c.gamma_s) + "  eta=" + num(c.eta));
  rep.line("  squeezing      " + num(c.squeeze_db) + " dB (r=" + num(ch.squeeze.r) + ")");
  rep.line("  amplification  " + num(c.amplification_db) + " dB (R=" + num(ch.amplifier.r) + ")");
  rep.line("  probe photons  " + num(ch.n_p) + (rc.np_optimal ? " (optimal)" : ""));
  rep.line("  angles         theta=" + num(ch.squeeze.theta) + "  phi=" + num(ch.amplifier.theta) +
           "  zeta=" + num(ch.zeta) + "  (" + to_string(c.angles) + ")");
  if (!ch.linearization_valid()) {
    rep.line("  warning: fewer than " + num(kLinearizationWarnPhotons) + " probe photons, linearization is suspect");
  }
}

}  // namespace

void cmd_error(const GlobalOptions& g, const json& overrides, std::ostream& out) {
  const ErrorConfig c = error_config_from_json(merged_config(g, overrides));
  const ResolvedChain rc = resolve_chain(c, c.optimizer);
  const ChainConfig& ch = rc.chain;
  const double analytic = std::sqrt(dns2_squeezed(ch.n_p, c.gamma_x, c.gamma_s, c.eta, ch.squeeze.r, ch.amplifier.r));
  const ChainOutput res = measurement_error(ch);

  Report rep;
  rep.line("Photon-number measurement error");
  describe_chain(rep, c, rc);
  rep.line("");
  rep.line("  analytic (optimal angles)  Delta N_s = " + num(analytic, 8));
  rep.line("  numeric chain              Delta N_s = " + num(res.delta_ns, 8) + "   gain = " + num(res.gain, 8));
  if (rc.search) {
    rep.line("  numeric optimizer          Delta N_s = " + num(std::sqrt(rc.search->best_value), 8) + "   (" +
             std::to_string(rc.search->evaluations) + " evaluations" + (rc.search->converged ? "" : ", not converged") +
             ")");
  }
  std::optional<double> baseline;
  if (c.gamma_s > 0.0 && c.eta < 1.0) {
    baseline = std::sqrt(dns2_coherent_min(c.gamma_x, c.gamma_s, c.eta));
    rep.line("  coherent-probe optimum     Delta N_s = " + num(*baseline, 8) + "   improvement x" +
             num(*baseline / res.delta_ns, 5));
  }

  rep.kv("n_p", ch.n_p);
  rep.kv("r", ch.squeeze.r);
  rep.kv("big_r", ch.amplifier.r);
  rep.kv("theta", ch.squeeze.theta);
  rep.kv("phi", ch.amplifier.theta);
  rep.kv("zeta", ch.zeta);
  rep.kv("dns_analytic", analytic);
  rep.kv("dns_chain", res.delta_ns);
  rep.kv("gain", res.gain);
  rep.kv("noise_variance", res.noise_variance);
  if (rc.search) {
    rep.kv("dns_optimizer", std::sqrt(rc.search->best_value));
    rep.kv("optimizer_evaluations", rc.search->evaluations);
    rep.kv("optimizer_converged", rc.search->converged);
  }
  if (baseline) rep.kv("dns_coherent_min", *baseline);
  rep.kv("linearization_warning", res.linearization_warning);
  rep.emit(out);
  save_run(g, "error", to_json(c), rep);
}

void cmd_sweep(const GlobalOptions& g, const json& overrides, std::ostream& out) {
  const SweepSpec spec = sweep_spec_from_json(merged_config(g, overrides));
  const SweepResult res = run_sweep(spec, g.threads);
  const std::filesystem::path dir = output_dir(g);
  const std::filesystem::path csv = dir / (spec.name + ".csv");
  const std::filesystem::path meta = dir / (spec.name + ".meta.json");
  {
    std::ofstream f(csv, std::ios::binary);
    if (!f) throw IoError("cannot write " + csv.string());
    write_csv(f, res);
    f.close();
    if (!f) throw IoError("cannot write " + csv.string());
  }
  write_text(meta, res.metadata.dump(2) + "\n");

  Report rep;
  rep.line("Sweep " + spec.name + ": " + std::to_string(spec.points) + " points over " + to_string(spec.axis) + " [" +
           num(spec.min) + ", " + num(spec.max) + "], angles " + to_string(spec.angle_mode));
  rep.kv("csv", csv.string());
  rep.kv("metadata", meta.string());
  if (g.svg) {
    const std::filesystem::path svg = dir / (spec.name + ".svg");
    std::ofstream f(svg, std::ios::binary);
    if (!f) throw IoError("cannot write " + svg.string());
    write_svg(f, sweep_plot(spec, res));
    f.close();
    if (!f) throw IoError("cannot write " + svg.string());
    rep.kv("svg", svg.string());
  }
  rep.kv("points", spec.points);
  for (std::size_t k = 0; k < res.labels.size(); ++k) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < res.axis.size(); ++i) {
      if (res.dns[k][i] < res.dns[k][best]) best = i;
    }
    rep.line("  " + res.labels[k] + ": minimum Delta N_s = " + num(res.dns[k][best]) + " at " + num(res.axis[best]));
    rep.kv("min_" + res.labels[k], res.dns[k][best]);
    rep.kv("argmin_" + res.labels[k], res.axis[best]);
  }
  rep.emit(out);
}

void cmd_thresholds(const GlobalOptions& g, const json& overrides, std::ostream& out) {
  const ThresholdConfig c = threshold_config_from_json(merged_config(g, overrides));
  const ThresholdReport t = single_photon_check(c.dns, c.mu);

  Report rep;
  rep.line("Preparation thresholds (order-of-magnitude estimates)");
  rep.line("  signal efficiency mu        " + num(c.mu));
  rep.line("  measurement error Delta N_s " + num(c.dns));
  rep.line("  optimal signal photons      " + num(t.ns_star));
  rep.line("  largest admissible error    " + num(t.dns_max) + " (margin " + num(t.dns_max * t.dns_max) + ")");
  rep.line(std::string("  single-photon sensitivity   ") + (t.single_photon_feasible ? "feasible" : "not feasible"));
  rep.line(std::string("  non-Gaussian preparation    ") + (t.non_gaussian_feasible ? "feasible" : "not feasible"));
  if (t.min_ns_single_photon) {
    rep.line("  margin >= 1 from n_s        " + num(*t.min_ns_single_photon));
  }
  if (t.max_ns_fock) rep.line("  Fock-state variance <= 1 up to n_s " + num(*t.max_ns_fock));

  rep.kv("mu", c.mu);
  rep.kv("dns", c.dns);
  rep.kv("ns_star", t.ns_star);
  rep.kv("margin_max", t.dns_max * t.dns_max);
  rep.kv("dns_max", t.dns_max);
  rep.kv("single_photon_feasible", t.single_photon_feasible);
  rep.kv("non_gaussian_feasible", t.non_gaussian_feasible);
  if (t.min_ns_single_photon) rep.kv("min_ns_single_photon", *t.min_ns_single_photon);
  if (t.max_ns_fock) rep.kv("max_ns_fock", *t.max_ns_fock);
  rep.kv("order_of_magnitude", ThresholdReport::order_of_magnitude);
  rep.emit(out);
  save_run(g, "thresholds", to_json(c), rep);
}

void cmd_resonator(const GlobalOptions& g, const json& overrides, std::ostream& out) {
  json j = g.config ? load_json(*g.config) : json::object();
  if (!j.is_object()) throw ConfigError("<root>", "expected a JSON object");
  // A preset named in the file is relative to the file; one given as a flag, to the working directory.
  if (g.config && j.contains("preset") && j["preset"].is_string()) {
    const std::filesystem::path p = j["preset"].get<std::string>();
    if (p.is_relative()) j["preset"] = (g.config->parent_path() / p).string();
  }
  for (const auto& [k, v] : overrides.items()) j[k] = v;
  ResonatorConfig c = resonator_config_from_json(j, std::filesystem::path());
  if (c.preset.empty()) c.preset = KERRQND_DEFAULT_PRESET;

  const ResonatorSpec spec = load_resonator_preset(c.preset);
  spec.validate();
  const GammaFactors gf = gamma_factors(spec);
  const LoadingReport lr = loading_check(spec, c.eta);

  Report rep;
  rep.line("Resonator " + c.preset.string());
  rep.line("  Q_load=" + num(spec.q_load) + "  Q_intr=" + num(spec.q_intr) + "  n0=" + num(spec.n0) +
           "  n2=" + num(spec.n2) + " m^2/W  lambda=" + num(spec.lambda0) + " m  V_eff=" + num(spec.v_eff) + " m^3");
  rep.line("  gamma_x = " + num(gf.gamma_x) + "   gamma_s = " + num(gf.gamma_s));
  rep.line("  loading Q_load/Q_intr = " + num(lr.ratio) + " vs eps^2 = " + num(lr.epsilon_sq) + ": " +
           to_string(lr.verdict));
  if (spec.q_ordering_suspicious()) rep.line("  warning: loaded Q exceeds intrinsic Q");

  rep.kv("gamma_x", gf.gamma_x);
  rep.kv("gamma_s", gf.gamma_s);
  rep.kv("loading_ratio", lr.ratio);
  rep.kv("epsilon_sq", lr.epsilon_sq);
  rep.kv("loading", to_string(lr.verdict));
  rep.kv("q_ordering_suspicious", spec.q_ordering_suspicious());
  rep.emit(out);
  save_run(g, "resonator", to_json(c), rep);
}

void cmd_mc(const GlobalOptions& g, const json& overrides, std::ostream& out) {
  json j = merged_config(g, overrides);
  if (g.seed) j["seed"] = *g.seed;
  const McSettings s = mc_settings_from_json(j);
  const ResolvedChain rc = resolve_chain(s.error, false);

  McConfig mc;
  mc.seed = s.seed;
  mc.n_samples = s.samples;
  mc.injected_dns = s.injected_dns;
  mc.chain = rc.chain;
  mc.threads = g.threads;
  const McReport r = run_monte_carlo(mc);

  Report rep;
  rep.line("Monte-Carlo check, " + std::to_string(r.n_samples) + " samples, seed " + std::to_string(s.seed));
  describe_chain(rep, s.error, rc);
  rep.line("");
  rep.line("  Delta N_s  empirical " + num(r.empirical_dns, 8) + " +- " + num(r.stderr_dns, 3) + "   analytic " +
           num(r.analytic_dns, 8) + "   (" + num((r.empirical_dns - r.analytic_dns) / r.stderr_dns, 3) + " sigma)");
  if (r.empirical_gain) {
    rep.line("  gain       empirical " + num(*r.empirical_gain, 8) + " +- " + num(*r.stderr_gain, 3) + "   analytic " +
             num(r.analytic_gain, 8) + "   (" + num((*r.empirical_gain - r.analytic_gain) / *r.stderr_gain, 3) +
             " sigma)");
  }

  rep.kv("seed", s.seed);
  rep.kv("samples", r.n_samples);
  rep.kv("n_p", rc.chain.n_p);
  rep.kv("empirical_dns", r.empirical_dns);
  rep.kv("stderr_dns", r.stderr_dns);
  rep.kv("analytic_dns", r.analytic_dns);
  if (r.empirical_gain) {
    rep.kv("empirical_gain", *r.empirical_gain);
    rep.kv("stderr_gain", *r.stderr_gain);
  }
  rep.kv("analytic_gain", r.analytic_gain);
  rep.emit(out);
  save_run(g, "mc", to_json(s), rep);
}

}  // namespace kerrqnd::cli
