#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"
#include "kerrqnd/error.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kNumeric = 3, kIo = 4 };

using nlohmann::json;

template <typename T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

/// Mode names go through as strings; numbers and "optimal" for probe photons.
void put_probe(json& j, const std::optional<std::string>& v) {
  if (!v) return;
  if (*v == "optimal") {
    j["probe_photons"] = *v;
    return;
  }
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(*v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v->size()) throw kerrqnd::ConfigError("probe_photons", "expected a number or 'optimal'");
  j["probe_photons"] = x;
}

struct ChainFlags {
  std::optional<double> gamma_x, gamma_s, eta, squeeze_db, amplification_db;
  std::optional<std::string> probe_photons, angles;
  bool optimizer = false;

  void add(CLI::App* app) {
    app->add_option("--gamma-x", gamma_x, "cross-phase factor");
    app->add_option("--gamma-s", gamma_s, "self-phase factor");
    app->add_option("--eta", eta, "probe detection efficiency");
    app->add_option("--squeeze-db", squeeze_db, "input squeezing, dB");
    app->add_option("--amplification-db", amplification_db, "output amplification, dB");
    app->add_option("--probe-photons", probe_photons, "probe photons or 'optimal'");
    app->add_option("--angles", angles, "analytic_optimal | numeric_optimal");
    app->add_flag("--optimizer", optimizer, "also run the numeric angle search");
  }

  void apply(json& j) const {
    put(j, "gamma_x", gamma_x);
    put(j, "gamma_s", gamma_s);
    put(j, "eta", eta);
    put(j, "squeeze_db", squeeze_db);
    put(j, "amplification_db", amplification_db);
    put_probe(j, probe_photons);
    put(j, "angles", angles);
    if (optimizer) j["optimizer"] = true;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Squeezed-light Kerr QND photon-number measurement: error budget, sweeps, thresholds"};
  app.set_version_flag("--version", std::string(KERRQND_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  kerrqnd::cli::GlobalOptions g;
  g.threads = std::max(1u, std::thread::hardware_concurrency());
  std::optional<std::string> config, out;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config, "JSON config for the command");
  app.add_option("--out", out, "output directory");
  app.add_flag("--svg", g.svg, "also write an SVG plot (sweep)");
  app.add_option("--seed", seed, "random seed (mc)");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1u, 1024u));

  ChainFlags error_flags, mc_flags;
  auto* error_cmd = app.add_subcommand("error", "Delta N_s for one configuration");
  error_flags.add(error_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "sweep a preset or configured axis; writes CSV");
  std::optional<std::string> preset, axis, sweep_angles, sweep_probe;
  std::optional<double> s_min, s_max, s_eta, s_gx, s_gs, s_mu;
  std::optional<std::size_t> s_points;
  sweep_cmd->add_option("--preset", preset, "fig3 | fig5 | custom");
  sweep_cmd->add_option("--axis", axis, "probe_photons | amplification_db");
  sweep_cmd->add_option("--min", s_min);
  sweep_cmd->add_option("--max", s_max);
  sweep_cmd->add_option("--points", s_points);
  sweep_cmd->add_option("--eta", s_eta);
  sweep_cmd->add_option("--gamma-x", s_gx);
  sweep_cmd->add_option("--gamma-s", s_gs);
  sweep_cmd->add_option("--probe-photons", sweep_probe, "fixed probe photons or 'optimal' (amplification axis)");
  sweep_cmd->add_option("--angles", sweep_angles, "analytic_optimal | numeric_optimal");
  sweep_cmd->add_option("--mu-reference", s_mu, "signal efficiency for the non-Gaussianity line");

  auto* thr_cmd = app.add_subcommand("thresholds", "feasibility of single-photon and non-Gaussian preparation");
  std::optional<double> t_mu, t_dns;
  thr_cmd->add_option("--mu", t_mu, "signal efficiency");
  thr_cmd->add_option("--dns", t_dns, "measurement error Delta N_s, photons");

  auto* res_cmd = app.add_subcommand("resonator", "coupling factors and loading check from a resonator preset");
  std::optional<std::string> r_preset;
  std::optional<double> r_eta;
  res_cmd->add_option("--preset", r_preset, "key = value preset file");
  res_cmd->add_option("--eta", r_eta, "probe detection efficiency");

  auto* mc_cmd = app.add_subcommand("mc", "Monte-Carlo check of Delta N_s and the gain");
  mc_flags.add(mc_cmd);
  std::optional<std::size_t> m_samples;
  std::optional<double> m_inject;
  mc_cmd->add_option("--samples", m_samples);
  mc_cmd->add_option("--injected-dns", m_inject, "stdev of the injected signal fluctuation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (config) g.config = *config;
    if (out) g.out = *out;
    g.seed = seed;
    json overrides = json::object();
    if (error_cmd->parsed()) {
      error_flags.apply(overrides);
      kerrqnd::cli::cmd_error(g, overrides, std::cout);
    } else if (sweep_cmd->parsed()) {
      put(overrides, "preset", preset);
      put(overrides, "axis", axis);
      put(overrides, "min", s_min);
      put(overrides, "max", s_max);
      put(overrides, "points", s_points);
      put(overrides, "eta", s_eta);
      put(overrides, "gamma_x", s_gx);
      put(overrides, "gamma_s", s_gs);
      put_probe(overrides, sweep_probe);
      put(overrides, "angles", sweep_angles);
      put(overrides, "mu_reference", s_mu);
      kerrqnd::cli::cmd_sweep(g, overrides, std::cout);
    } else if (thr_cmd->parsed()) {
      put(overrides, "mu", t_mu);
      put(overrides, "dns", t_dns);
      kerrqnd::cli::cmd_thresholds(g, overrides, std::cout);
    } else if (res_cmd->parsed()) {
      put(overrides, "preset", r_preset);
      put(overrides, "eta", r_eta);
      kerrqnd::cli::cmd_resonator(g, overrides, std::cout);
    } else if (mc_cmd->parsed()) {
      mc_flags.apply(overrides);
      put(overrides, "samples", m_samples);
      put(overrides, "injected_dns", m_inject);
      kerrqnd::cli::cmd_mc(g, overrides, std::cout);
    }
  } catch (const kerrqnd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const kerrqnd::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const kerrqnd::NoFiniteOptimum& e) {
    std::cerr << "numeric failure: no finite optimum: " << e.what() << '\n'
              << "hint: with gamma_s = 0 or eta = 1 the error keeps falling as N_p grows; "
                 "set probe_photons to a number\n";
    return kNumeric;
  } catch (const kerrqnd::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const kerrqnd::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
