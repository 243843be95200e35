#include "kerrqnd/signal_loss.hpp"

#include <cmath>
#include <string>

#include "kerrqnd/error.hpp"

namespace kerrqnd {

namespace {

void require_mu(double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) throw InvalidArgument("signal efficiency mu must lie in (0, 1]");
}

void require_non_negative(double v, const char* name) {
  if (!(v >= 0.0)) throw InvalidArgument(std::string(name) + " must be non-negative");
}

}  // namespace

void SignalLossConfig::validate() const {
  require_mu(mu);
  require_non_negative(n_s, "n_s");
  require_non_negative(var_in, "var_in");
}

PhotonMoments input_loss(double n_s_in, double var_in, double mu) {
  require_mu(mu);
  require_non_negative(n_s_in, "n_s_in");
  require_non_negative(var_in, "var_in");
  return {mu * n_s_in, mu * mu * var_in + mu * (1.0 - mu) * n_s_in};
}

double measurement_error_with_input_loss(double n_s, double dns2_meas, double mu) {
  require_mu(mu);
  require_non_negative(n_s, "n_s");
  require_non_negative(dns2_meas, "dns2_meas");
  return (mu * (1.0 - mu) * n_s + dns2_meas) / (mu * mu);
}

double normalized_error_with_input_loss(double n_s_in, double dns2_meas, double mu) {
  require_mu(mu);
  if (!(n_s_in > 0.0)) throw InvalidArgument("n_s_in must be positive");
  require_non_negative(dns2_meas, "dns2_meas");
  return (1.0 - mu) / mu + dns2_meas / (mu * mu * n_s_in);
}

PhotonMoments prepared_state(double n_s, double dns2_meas, double mu) {
  require_mu(mu);
  require_non_negative(n_s, "n_s");
  require_non_negative(dns2_meas, "dns2_meas");
  return {mu * n_s, mu * mu * dns2_meas + mu * (1.0 - mu) * n_s};
}

double prepared_fano_factor(double n_s, double dns2_meas, double mu) {
  require_mu(mu);
  if (!(n_s > 0.0)) throw InvalidArgument("n_s must be positive");
  return 1.0 - mu * (1.0 - dns2_meas / n_s);
}

bool is_sub_poissonian(double n_prep, double var_prep) {
  if (!(n_prep > 0.0)) throw InvalidArgument("is_sub_poissonian: mean must be positive");
  return var_prep < n_prep;
}

}  // namespace kerrqnd
