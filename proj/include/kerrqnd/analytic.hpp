#pragma once

#include "kerrqnd/chain.hpp"

// Closed-form sensitivity results. All squared errors are in photons^2.

namespace kerrqnd {

/// Standard quantum limit sqrt(n).
double sql(double n);

/// Normalized loss factor sqrt((1 - eta) / eta); eta in (0, 1].
double epsilon(double eta);

/// Coherent probe with the optimal readout quadrature:
/// (1/gx^2) [1/(4 eta n_p) + (1 - eta) n_p gs^2].
double dns2_coherent(double n_p, double gamma_x, double gamma_s, double eta);

/// Minimum of dns2_coherent over n_p: (gs / gx^2) * epsilon.
double dns2_coherent_min(double gamma_x, double gamma_s, double eta);

/// Squeezed and anti-squeezed probe at optimal angles:
/// (1/gx^2) [(e^{-2r} + eps^2 e^{-2R}) / (4 n_p) + n_p gs^2 eps^2 / (e^{2R} + eps^2 e^{2r})].
double dns2_squeezed(double n_p, double gamma_x, double gamma_s, double eta, double r, double big_r);

/// Probe photon number minimizing dns2_squeezed. Throws NoFiniteOptimum when
/// gamma_s = 0 or eta = 1, where the error keeps falling with n_p.
double np_opt(double gamma_s, double eta, double r, double big_r);

/// (gs / gx^2) eps e^{-r-R}; same error conditions as np_opt.
double dns2_squeezed_min(double gamma_x, double gamma_s, double eta, double r, double big_r);

/// (C, S) = H^T(zeta) S(R,phi) in closed trigonometric form, plus
/// A = S and B = C + 2 n_p gs S, the coefficients of the cavity-input
/// quadratures in the measured output.
struct AppendixIntermediates {
  double c_term = 0.0;
  double s_term = 0.0;
  double a_term = 0.0;
  double b_term = 0.0;
};

AppendixIntermediates appendix_intermediates(double big_r, double phi, double zeta, double n_p,
                                             double gamma_s);

/// Input squeeze angle in [0, pi) that minimizes the d0 variance for the
/// readout coefficients (A, B):
/// cos 2theta = (A^2 - B^2)/(A^2 + B^2), sin 2theta = -2AB/(A^2 + B^2).
/// Throws DegenerateDirection when A = B = 0.
double optimal_theta(double a_term, double b_term);

struct OptimalAngles {
  double theta = 0.0;
  double phi = 0.0;
  double zeta = 0.0;  ///< always equal to phi
};

/// cot phi = -2 n_p gs / (1 + eps^2 e^{2r-2R}) with phi in (0, pi), zeta = phi,
/// theta from optimal_theta at the resulting (A, B).
OptimalAngles optimal_phi(double n_p, double gamma_s, double eta, double r, double big_r);

/// Copy of cfg with theta, phi, zeta replaced by optimal_phi's choice.
ChainConfig with_optimal_angles(ChainConfig cfg);

/// Variance of d0 from the (A, B) closed form:
/// (eta/2) {(A^2+B^2) cosh 2r + [(B^2-A^2) cos 2theta + 2AB sin 2theta] sinh 2r + eps^2}.
double noise_variance_closed_form(const ChainConfig& cfg);

}  // namespace kerrqnd
