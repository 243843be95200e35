#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kerrqnd/chain.hpp"

namespace kerrqnd {

enum class AngleMode { analytic_optimal, numeric_optimal, fixed };

std::string to_string(AngleMode mode);

/// Throws ConfigError(field, ...) for unknown names.
AngleMode parse_angle_mode(const std::string& name, const std::string& field = "angles");

enum class SweepAxis { probe_photons, amplification_db };

std::string to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& name, const std::string& field = "axis");

struct Scenario {
  double squeeze_db = 0.0;
  double amplification_db = 0.0;  ///< ignored on the amplification_db axis
};

struct SweepSpec {
  std::string name = "custom";
  SweepAxis axis = SweepAxis::probe_photons;
  double min = 1e4;
  double max = 1e9;
  std::size_t points = 51;
  bool log = true;
  std::vector<Scenario> scenarios;
  double gamma_x = 0.85e-5;
  double gamma_s = 0.425e-5;
  double eta = 0.9;
  /// Fixed probe photons on the amplification axis; empty means the analytic optimum per point.
  std::optional<double> probe_photons;
  AngleMode angle_mode = AngleMode::analytic_optimal;
  double theta = 0.0;  ///< fixed mode only
  double phi = 0.0;
  double zeta = 0.0;
  double mu_reference = 0.9;  ///< signal efficiency for the non-Gaussianity reference line

  /// Throws ConfigError naming the offending field.
  void validate() const;

  std::vector<std::string> labels() const;
  std::vector<double> axis_values() const;
};

/// Error against probe photons for four squeeze/amplify pairs.
SweepSpec fig3_preset();
/// Optimized error against amplification at 10 dB squeezing.
SweepSpec fig5_preset();
/// "fig3", "fig5", or "custom" (fig3 under another name); ConfigError otherwise.
SweepSpec sweep_preset(const std::string& name);

/// Label such as "sq10dB_amp40dB" (or "sq10dB" on the amplification axis).
std::string scenario_label(const Scenario& s, SweepAxis axis);

struct SweepResult {
  std::vector<double> axis;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> dns;  ///< dns[scenario][point]
  nlohmann::json metadata;
};

/// Delta N_s for one scenario at one axis value.
double sweep_point(const SweepSpec& spec, const Scenario& s, double axis_value);

/// Points are evaluated on up to `threads` workers; output order follows the axis.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 1);

nlohmann::json to_json(const SweepSpec& spec);

/// Header `axis,<label>...`, 17 significant digits, LF line endings.
void write_csv(std::ostream& out, const SweepResult& result);

/// Inverse of write_csv; metadata is left empty. Throws IoError on malformed input.
SweepResult read_csv(std::istream& in);

}  // namespace kerrqnd
