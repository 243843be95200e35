#pragma once

#include <optional>
#include <utility>
#include <vector>

// Feasibility thresholds for non-Gaussian and Fock-state preparation. The
// underlying criterion Delta N <~ N^{1/3} holds only up to factors of order
// unity; the functions below evaluate it with those factors set to one and
// keep the exact algebra that follows (8/27, 4/27).

namespace kerrqnd {

/// N^{1/3}
double non_gaussian_bound(double n);

/// Admissible measurement variance for a signal of n_s photons after loss
/// mu: n_s^{2/3} - (1 - mu) n_s.
double margin(double n_s, double mu);

/// Maximizer of margin: 8 / (27 (1 - mu)^3). Throws NoFiniteOptimum for mu = 1.
double ns_star(double mu);

/// margin(ns_star(mu), mu) = 4 / (27 (1 - mu)^2)
double margin_max(double mu);

/// sqrt(margin_max(mu)) = (2 / sqrt(27)) / (1 - mu), the largest admissible error.
double dns_max(double mu);

struct ThresholdReport {
  double mu = 1.0;
  double dns_meas = 0.0;
  double ns_star = 0.0;  ///< +inf when mu = 1
  double dns_max = 0.0;  ///< +inf when mu = 1
  /// (n_s, margin) on a log grid spanning [1, 10 ns_star].
  std::vector<std::pair<double, double>> margin_table;
  bool single_photon_feasible = false;  ///< dns_meas <= 1
  bool non_gaussian_feasible = false;   ///< dns_meas^2 <= margin_max
  /// Smallest n_s with margin(n_s, mu) >= 1, if any.
  std::optional<double> min_ns_single_photon;
  /// Largest n_s whose prepared state keeps a photon-number variance of at
  /// most one: mu^2 dns_meas^2 + mu (1 - mu) n_s <= 1. Empty when even n_s = 0
  /// fails, +inf for mu = 1.
  std::optional<double> max_ns_fock;
  /// All values are order-of-magnitude estimates.
  static constexpr bool order_of_magnitude = true;
};

ThresholdReport single_photon_check(double dns_meas, double mu);

}  // namespace kerrqnd
