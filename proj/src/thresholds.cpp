#include "kerrqnd/thresholds.hpp"

#include <cmath>
#include <limits>

#include "kerrqnd/error.hpp"

namespace kerrqnd {

namespace {

void require_mu(double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) throw InvalidArgument("signal efficiency mu must lie in (0, 1]");
}

}  // namespace

double non_gaussian_bound(double n) {
  if (!(n >= 0.0)) throw InvalidArgument("non_gaussian_bound: n must be non-negative");
  return std::cbrt(n);
}

double margin(double n_s, double mu) {
  require_mu(mu);
  if (!(n_s >= 0.0)) throw InvalidArgument("margin: n_s must be non-negative");
  const double c = std::cbrt(n_s);
  return c * c - (1.0 - mu) * n_s;
}

double ns_star(double mu) {
  require_mu(mu);
  if (mu >= 1.0) throw NoFiniteOptimum("ns_star: margin grows without bound for mu = 1");
  const double loss = 1.0 - mu;
  return 8.0 / (27.0 * loss * loss * loss);
}

double margin_max(double mu) {
  require_mu(mu);
  if (mu >= 1.0) return std::numeric_limits<double>::infinity();
  const double loss = 1.0 - mu;
  return 4.0 / (27.0 * loss * loss);
}

double dns_max(double mu) { return std::sqrt(margin_max(mu)); }

ThresholdReport single_photon_check(double dns_meas, double mu) {
  require_mu(mu);
  if (!(dns_meas >= 0.0)) throw InvalidArgument("single_photon_check: dns_meas must be non-negative");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  ThresholdReport rep;
  rep.mu = mu;
  rep.dns_meas = dns_meas;
  rep.ns_star = mu < 1.0 ? ns_star(mu) : kInf;
  rep.dns_max = dns_max(mu);
  rep.single_photon_feasible = dns_meas <= 1.0;
  rep.non_gaussian_feasible = dns_meas * dns_meas <= margin_max(mu);

  const double table_top = mu < 1.0 ? 10.0 * rep.ns_star : 1e6;
  constexpr int kRows = 41;
  for (int i = 0; i < kRows; ++i) {
    const double n = std::exp(std::log(table_top) * i / (kRows - 1));
    rep.margin_table.emplace_back(n, margin(n, mu));
  }

  // margin is increasing on [0, ns_star] and margin(0) = 0 < 1.
  double hi = mu < 1.0 ? rep.ns_star : 1.0;
  if (margin(hi, mu) >= 1.0) {
    double lo = 0.0;
    double mid = hi;
    for (int iter = 0; iter < 200; ++iter) {
      mid = 0.5 * (lo + hi);
      const double f = margin(mid, mu) - 1.0;
      if (std::abs(f) < 1e-12 || hi - lo < 1e-14 * hi) break;
      (f < 0.0 ? lo : hi) = mid;
    }
    rep.min_ns_single_photon = mid;
  }

  const double floor_var = mu * mu * dns_meas * dns_meas;
  if (floor_var <= 1.0) rep.max_ns_fock = mu < 1.0 ? (1.0 - floor_var) / (mu * (1.0 - mu)) : kInf;
  return rep;
}

}  // namespace kerrqnd
