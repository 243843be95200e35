#include "kerrqnd/chain.hpp"

#include <cmath>
#include <string>

#include "kerrqnd/error.hpp"

namespace kerrqnd {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument("ChainConfig: " + message);
}

}  // namespace

void ChainConfig::validate() const {
  require(std::isfinite(n_p) && n_p > 0.0, "n_p must be positive");
  require(std::isfinite(gamma_x) && gamma_x > 0.0, "gamma_x must be positive");
  require(std::isfinite(gamma_s) && gamma_s >= 0.0, "gamma_s must be non-negative");
  require(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
  require(std::isfinite(squeeze.r) && squeeze.r >= 0.0, "r must be non-negative");
  require(std::isfinite(amplifier.r) && amplifier.r >= 0.0, "R must be non-negative");
  require(std::isfinite(squeeze.theta) && std::isfinite(amplifier.theta) && std::isfinite(zeta),
          "angles must be finite");
}

double ChainConfig::epsilon() const { return std::sqrt((1.0 - eta) / eta); }

GaussianMode probe_input_state(const ChainConfig& cfg) {
  GaussianMode probe = propagate(GaussianMode::vacuum(), squeeze_matrix(cfg.squeeze));
  probe.mean = {std::sqrt(2.0 * cfg.n_p), 0.0};
  return probe;
}

GaussianMode probe_output_state(const ChainConfig& cfg) {
  const GaussianMode cavity = propagate(probe_input_state(cfg), spm_matrix(cfg.n_p, cfg.gamma_s));
  return propagate(cavity, squeeze_matrix(cfg.amplifier));
}

Quad2 readout_direction(const ChainConfig& cfg) {
  const Mat2 f = spm_matrix(cfg.n_p, cfg.gamma_s);
  const Mat2 s = squeeze_matrix(cfg.amplifier);
  return f.transposed() * (s.transposed() * homodyne_vector(cfg.zeta));
}

double signal_projection(const ChainConfig& cfg) {
  return dot(homodyne_vector(cfg.zeta), squeeze_matrix(cfg.amplifier) * Quad2{0.0, 1.0});
}

double gain(const ChainConfig& cfg) {
  return std::sqrt(2.0 * cfg.eta * cfg.n_p) * cfg.gamma_x * signal_projection(cfg);
}

double noise_variance(const ChainConfig& cfg) {
  // v^T S (I/2) S^T v = |S^T v|^2 / 2; the squared norm avoids the e^{4r}
  // cancellation of the explicit quadratic form.
  const Quad2 w = squeeze_matrix(cfg.squeeze).transposed() * readout_direction(cfg);
  return apply_loss_quadrature(0.5 * dot(w, w), cfg.eta);
}

ChainOutput measurement_error(const ChainConfig& cfg) {
  cfg.validate();
  const double projection = signal_projection(cfg);
  // |H^T S (0,1)^T| is at most e^R; compare against that scale.
  if (std::abs(projection) <= 1e-14 * std::exp(cfg.amplifier.r)) {
    throw ZeroGain("homodyne angle is blind to the cross-phase signal");
  }
  ChainOutput out;
  out.gain = std::sqrt(2.0 * cfg.eta * cfg.n_p) * cfg.gamma_x * projection;
  out.noise_variance = noise_variance(cfg);
  out.delta_ns = std::sqrt(out.noise_variance) / std::abs(out.gain);
  out.linearization_warning = !cfg.linearization_valid();
  return out;
}

}  // namespace kerrqnd
