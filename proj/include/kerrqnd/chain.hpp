#pragma once

#include "kerrqnd/gaussian.hpp"

namespace kerrqnd {

/// Below this probe photon number the linearized probe dynamics are suspect.
inline constexpr double kLinearizationWarnPhotons = 100.0;

/// One measurement configuration: squeezer -> Kerr cavity -> amplifier -> lossy homodyne.
struct ChainConfig {
  double n_p = 1.0;      ///< mean probe photons
  double gamma_x = 0.0;  ///< cross-phase factor gamma_X * tau
  double gamma_s = 0.0;  ///< self-phase factor gamma_S * tau
  double eta = 1.0;      ///< probe detection efficiency, (0, 1]
  SqueezeOp squeeze;     ///< input squeezer (r, theta)
  SqueezeOp amplifier;   ///< output anti-squeezer (R, phi)
  double zeta = 0.0;     ///< homodyne angle

  /// Throws InvalidArgument on out-of-range fields.
  void validate() const;

  /// sqrt((1 - eta) / eta)
  double epsilon() const;

  bool linearization_valid() const { return n_p >= kLinearizationWarnPhotons; }
};

struct ChainOutput {
  double gain = 0.0;            ///< homodyne units per signal photon
  double noise_variance = 0.0;  ///< variance of the signal-independent part d0
  double delta_ns = 0.0;        ///< sqrt(noise_variance) / |gain|
  bool linearization_warning = false;
};

/// Probe state entering the cavity: mean (sqrt(2 n_p), 0), covariance S(r,theta) (I/2) S^T.
GaussianMode probe_input_state(const ChainConfig& cfg);

/// Probe state after the Kerr cavity and the amplifier, by forward propagation.
/// Loss-free; the beamsplitter only acts on the measured quadrature.
GaussianMode probe_output_state(const ChainConfig& cfg);

/// Homodyne direction pulled back to the cavity input: F^T S(R,phi)^T H(zeta).
/// Its components are the (B, A) pair of the angle analysis.
Quad2 readout_direction(const ChainConfig& cfg);

/// H^T S(R,phi) (0,1)^T, the amplifier-projected signal direction.
double signal_projection(const ChainConfig& cfg);

/// sqrt(2 eta n_p) gamma_x H^T S(R,phi) (0,1)^T
double gain(const ChainConfig& cfg);

/// Variance of d0 after loss: eta * v^T cov_in v + (1-eta)/2 with
/// v = readout_direction(cfg) and cov_in = S(r,theta) (I/2) S^T. This equals
/// H^T cov_out H without forming cov_out, whose entries grow as
/// (n_p gamma_s)^2 e^{2r} e^{2R} and cancel.
double noise_variance(const ChainConfig& cfg);

/// Throws ZeroGain when the homodyne angle is blind to the signal.
ChainOutput measurement_error(const ChainConfig& cfg);

}  // namespace kerrqnd
