#pragma once

// Signal-mode loss as binomial thinning of the photon-number moments. Two
// scenarios: loss before the cavity (measuring the incident number) and loss
// after it (preparing an output state).

namespace kerrqnd {

struct SignalLossConfig {
  double mu = 1.0;      ///< signal efficiency, (0, 1]
  double n_s = 0.0;     ///< mean photons at the reference plane
  double var_in = 0.0;  ///< incident photon-number variance (measurement scenario)

  void validate() const;
};

struct PhotonMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean mu*n, variance mu^2 var + mu(1-mu) n.
PhotonMoments input_loss(double n_s_in, double var_in, double mu);

/// Error on the incident photon number when the cavity holds n_s (post-loss)
/// photons and the meter alone contributes dns2_meas:
/// (1/mu^2) [mu(1-mu) n_s + dns2_meas].
double measurement_error_with_input_loss(double n_s, double dns2_meas, double mu);

/// Same error divided by the photon number it was evaluated at:
/// (1-mu)/mu + dns2_meas/(mu^2 n_s_in).
/// Values below 1 beat the standard quantum limit.
double normalized_error_with_input_loss(double n_s_in, double dns2_meas, double mu);

/// Output state after loss, taking the intracavity uncertainty to be the
/// measurement error: mean mu n_s, variance mu^2 dns2_meas + mu(1-mu) n_s.
PhotonMoments prepared_state(double n_s, double dns2_meas, double mu);

/// variance / mean = 1 - mu (1 - dns2_meas / n_s)
double prepared_fano_factor(double n_s, double dns2_meas, double mu);

/// var_prep < n_prep. Requires n_prep > 0.
bool is_sub_poissonian(double n_prep, double var_prep);

}  // namespace kerrqnd
