#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

namespace kerrqnd {

inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kSpeedOfLight = 2.99792458e8;  // m / s

/// Whispering-gallery resonator parameters, SI units.
struct ResonatorSpec {
  double q_load = 0.0;   ///< loaded quality factor
  double q_intr = 0.0;   ///< intrinsic quality factor
  double n0 = 0.0;       ///< refractive index
  double n2 = 0.0;       ///< Kerr coefficient, m^2/W
  double lambda0 = 0.0;  ///< vacuum wavelength, m
  double v_eff = 0.0;    ///< effective mode volume, m^3

  /// Throws InvalidArgument unless every field is positive and finite.
  void validate() const;
  /// q_load > q_intr is physically odd; reported, not rejected.
  bool q_ordering_suspicious() const { return q_load > q_intr; }
  double omega0() const;
};

struct GammaFactors {
  double gamma_x = 0.0;
  double gamma_s = 0.0;
};

/// gamma_x = 2 q_load (n2/n0) hbar omega0 c / v_eff, gamma_s = gamma_x / 2.
GammaFactors gamma_factors(const ResonatorSpec& spec);

enum class LoadingVerdict { pass, marginal, fail };

std::string to_string(LoadingVerdict v);

/// Intracavity loss may be neglected when q_load / q_intr << eps^2. "<<" is
/// taken as a factor of three: pass at ratio <= eps^2/3, marginal up to eps^2.
struct LoadingReport {
  double ratio = 0.0;
  double epsilon_sq = 0.0;
  LoadingVerdict verdict = LoadingVerdict::fail;
};

/// eta must lie in (0, 1).
LoadingReport loading_check(const ResonatorSpec& spec, double eta);

/// Key-value preset: one `key = value` per line, `#` starts a comment. Keys
/// are the ResonatorSpec field names; all six are required. Throws ConfigError.
ResonatorSpec parse_resonator_preset(std::istream& in);
ResonatorSpec load_resonator_preset(const std::filesystem::path& path);

}  // namespace kerrqnd
