#include "kerrqnd/analytic.hpp"

#include <cmath>
#include <numbers>

#include "kerrqnd/error.hpp"

namespace kerrqnd {

namespace {

void require_eta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("eta must lie in (0, 1]");
}

void require_finite_optimum(double gamma_s, double eta) {
  if (gamma_s <= 0.0) {
    throw NoFiniteOptimum("gamma_s = 0: without self-phase modulation the error falls as 1/n_p");
  }
  if (eta >= 1.0) {
    throw NoFiniteOptimum("eta = 1: lossless readout fully compensates self-phase modulation");
  }
}

}  // namespace

double sql(double n) {
  if (!(n >= 0.0)) throw InvalidArgument("sql: n must be non-negative");
  return std::sqrt(n);
}

double epsilon(double eta) {
  require_eta(eta);
  return std::sqrt((1.0 - eta) / eta);
}

double dns2_coherent(double n_p, double gamma_x, double gamma_s, double eta) {
  require_eta(eta);
  return (1.0 / (4.0 * eta * n_p) + (1.0 - eta) * n_p * gamma_s * gamma_s) / (gamma_x * gamma_x);
}

double dns2_coherent_min(double gamma_x, double gamma_s, double eta) {
  return gamma_s / (gamma_x * gamma_x) * epsilon(eta);
}

double dns2_squeezed(double n_p, double gamma_x, double gamma_s, double eta, double r, double big_r) {
  require_eta(eta);
  const double e2 = (1.0 - eta) / eta;
  const double shot = (std::exp(-2.0 * r) + e2 * std::exp(-2.0 * big_r)) / (4.0 * n_p);
  const double back = n_p * gamma_s * gamma_s * e2 / (std::exp(2.0 * big_r) + e2 * std::exp(2.0 * r));
  return (shot + back) / (gamma_x * gamma_x);
}

double np_opt(double gamma_s, double eta, double r, double big_r) {
  require_eta(eta);
  require_finite_optimum(gamma_s, eta);
  const double eps = epsilon(eta);
  return (std::exp(big_r - r) + eps * eps * std::exp(r - big_r)) / (2.0 * gamma_s * eps);
}

double dns2_squeezed_min(double gamma_x, double gamma_s, double eta, double r, double big_r) {
  require_eta(eta);
  require_finite_optimum(gamma_s, eta);
  return gamma_s / (gamma_x * gamma_x) * epsilon(eta) * std::exp(-r - big_r);
}

AppendixIntermediates appendix_intermediates(double big_r, double phi, double zeta, double n_p,
                                             double gamma_s) {
  const double up = std::exp(big_r);
  const double down = std::exp(-big_r);
  const double cd = std::cos(zeta - phi);
  const double sd = std::sin(zeta - phi);
  AppendixIntermediates out;
  out.c_term = up * cd * std::cos(phi) - down * sd * std::sin(phi);
  out.s_term = up * cd * std::sin(phi) + down * sd * std::cos(phi);
  out.a_term = out.s_term;
  out.b_term = out.c_term + 2.0 * n_p * gamma_s * out.s_term;
  return out;
}

double optimal_theta(double a_term, double b_term) {
  if (a_term == 0.0 && b_term == 0.0) {
    throw DegenerateDirection("optimal_theta: A = B = 0 leaves the squeeze angle undetermined");
  }
  // (cos 2theta, sin 2theta) is proportional to (A^2 - B^2, -2AB).
  double two_theta = std::atan2(-2.0 * a_term * b_term, a_term * a_term - b_term * b_term);
  if (two_theta < 0.0) two_theta += 2.0 * std::numbers::pi;
  double theta = 0.5 * two_theta;
  if (theta >= std::numbers::pi) theta -= std::numbers::pi;
  return theta;
}

OptimalAngles optimal_phi(double n_p, double gamma_s, double eta, double r, double big_r) {
  require_eta(eta);
  const double e2 = (1.0 - eta) / eta;
  const double cot_phi = -2.0 * n_p * gamma_s / (1.0 + e2 * std::exp(2.0 * r - 2.0 * big_r));
  OptimalAngles out;
  // atan2(1, cot) lands in (0, pi), which keeps sin(phi) and hence the gain positive.
  out.phi = std::atan2(1.0, cot_phi);
  out.zeta = out.phi;
  const AppendixIntermediates m = appendix_intermediates(big_r, out.phi, out.zeta, n_p, gamma_s);
  out.theta = optimal_theta(m.a_term, m.b_term);
  return out;
}

ChainConfig with_optimal_angles(ChainConfig cfg) {
  const OptimalAngles a = optimal_phi(cfg.n_p, cfg.gamma_s, cfg.eta, cfg.squeeze.r, cfg.amplifier.r);
  cfg.squeeze.theta = a.theta;
  cfg.amplifier.theta = a.phi;
  cfg.zeta = a.zeta;
  return cfg;
}

double noise_variance_closed_form(const ChainConfig& cfg) {
  const AppendixIntermediates m =
      appendix_intermediates(cfg.amplifier.r, cfg.amplifier.theta, cfg.zeta, cfg.n_p, cfg.gamma_s);
  const double a = m.a_term;
  const double b = m.b_term;
  const double two_r = 2.0 * cfg.squeeze.r;
  const double two_theta = 2.0 * cfg.squeeze.theta;
  const double e2 = (1.0 - cfg.eta) / cfg.eta;
  return 0.5 * cfg.eta *
         ((a * a + b * b) * std::cosh(two_r) +
          ((b * b - a * a) * std::cos(two_theta) + 2.0 * a * b * std::sin(two_theta)) * std::sinh(two_r) +
          e2);
}

}  // namespace kerrqnd
