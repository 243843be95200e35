#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "kerrqnd/chain.hpp"

// Derivative-free minimization of the chain error, independent of the closed forms.

namespace kerrqnd {

struct OptimizationResult {
  double theta = 0.0;
  double phi = 0.0;
  double zeta = 0.0;
  std::optional<double> n_p;  ///< set by minimize_np
  double best_value = 0.0;    ///< Delta N_s^2, photons^2
  std::size_t evaluations = 0;
  bool converged = false;
};

struct AngleSearchOptions {
  double tol = 1e-12;                      ///< relative tolerance on the objective
  std::size_t max_evaluations = 1'000'000;  ///< chain evaluations, then NonConvergence
  int grid_points = 16;                    ///< per angle on [0, pi)
  int starts = 5;                          ///< best grid cells refined locally
};

/// Minimizes measurement_error(cfg)^2 over (theta, phi, zeta); the angles in
/// `cfg` are ignored. Coarse grid over [0, pi)^3; from the best cells with
/// distinct offsets zeta - phi, a 1-D simplex over that offset, where each
/// vertex is the minimum over phi (scan, then golden section) of the minimum
/// over theta (exact sinusoid fit). Deterministic. Returned angles lie in [0, pi).
OptimizationResult minimize_angles(const ChainConfig& cfg, const AngleSearchOptions& options = {});

struct NpSearchOptions {
  double lo = 1e2;
  double hi = 1e12;
  double log_tol = 1e-8;  ///< final bracket width in ln(n_p)
  AngleSearchOptions angles;
};

/// Golden-section search over ln(n_p) of the angle-minimized error. Throws
/// NoFiniteOptimum when the minimum sits on the bracket edge.
OptimizationResult minimize_np(const ChainConfig& cfg, const NpSearchOptions& options = {});

namespace detail {

struct LineMinimum {
  double x = 0.0;
  double value = 0.0;
  double width = 0.0;  ///< final bracket width
  std::size_t evaluations = 0;
};

/// Golden-section search on [a, b] until the bracket is narrower than x_tol.
/// Assumes f is unimodal on the bracket.
LineMinimum golden_section(const std::function<double(double)>& f, double a, double b, double x_tol);

struct SimplexOptions {
  double step = 0.1;
  double f_tol = 1e-12;    ///< relative spread of vertex values ...
  double x_tol = 1e-7;     ///< ... reached with a diameter (max-norm) below this
  double x_floor = 1e-14;  ///< diameter that stops the search regardless of values
  std::size_t max_iterations = 10'000;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
  double diameter = 0.0;
  bool converged = false;
};

/// Nelder-Mead with standard coefficients (1, 2, 1/2, 1/2), axis-aligned initial simplex.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::span<const double> start, const SimplexOptions& options);

}  // namespace detail

}  // namespace kerrqnd
