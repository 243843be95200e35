#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "kerrqnd/chain.hpp"
#include "kerrqnd/sweep.hpp"

// JSON configuration for the command-line tool. One file holds one command's
// inputs. Parsers reject unknown keys and wrong types with ConfigError naming
// the field; defaults are the reference coupling parameters.

namespace kerrqnd {

struct ErrorConfig {
  double gamma_x = 0.85e-5;
  double gamma_s = 0.425e-5;
  double eta = 0.9;
  double squeeze_db = 0.0;
  double amplification_db = 0.0;
  std::optional<double> probe_photons;  ///< empty: "optimal"
  AngleMode angles = AngleMode::analytic_optimal;
  double theta = 0.0;  ///< fixed mode only
  double phi = 0.0;
  double zeta = 0.0;
  bool optimizer = false;  ///< also run the numeric angle search

  void validate() const;

  /// Chain with dB values converted and the given probe photon number. Angles
  /// are the fixed ones or, otherwise, the analytic optimum.
  ChainConfig chain(double n_p) const;
};

struct McSettings {
  ErrorConfig error;
  std::uint64_t seed = 42;
  std::size_t samples = 1'000'000;
  double injected_dns = 10.0;

  void validate() const;
};

struct ThresholdConfig {
  double mu = 0.9;
  double dns = 1.0;

  void validate() const;
};

struct ResonatorConfig {
  std::filesystem::path preset;  ///< empty: the built-in CaF2 preset
  double eta = 0.9;

  void validate() const;
};

ErrorConfig error_config_from_json(const nlohmann::json& j);
McSettings mc_settings_from_json(const nlohmann::json& j);
ThresholdConfig threshold_config_from_json(const nlohmann::json& j);
/// Relative preset paths are resolved against base_dir.
ResonatorConfig resonator_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
/// Starts from the named "preset" (default fig3) and applies the remaining keys.
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ErrorConfig& c);
nlohmann::json to_json(const McSettings& c);
nlohmann::json to_json(const ThresholdConfig& c);
nlohmann::json to_json(const ResonatorConfig& c);

/// Reads and parses a JSON file. IoError when unreadable, ConfigError on syntax errors.
nlohmann::json load_json(const std::filesystem::path& path);

}  // namespace kerrqnd
