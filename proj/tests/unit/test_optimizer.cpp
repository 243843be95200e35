#include <chrono>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "kerrqnd/analytic.hpp"
#include "kerrqnd/error.hpp"
#include "kerrqnd/optimizer.hpp"
#include "random_configs.hpp"

using namespace kerrqnd;
using std::numbers::pi;
using kerrqnd::testkit::rel_err;

namespace {

ChainConfig reference_coupling(double n_p, double r, double big_r) {
  ChainConfig c;
  c.n_p = n_p;
  c.gamma_x = 0.85e-5;
  c.gamma_s = 0.425e-5;
  c.eta = 0.9;
  c.squeeze.r = r;
  c.amplifier.r = big_r;
  return c;
}

double closed_form(const ChainConfig& c) {
  return dns2_squeezed(c.n_p, c.gamma_x, c.gamma_s, c.eta, c.squeeze.r, c.amplifier.r);
}

}  // namespace

TEST(GoldenSection, FindsParabolaVertex) {
  const auto m = detail::golden_section([](double x) { return (x - 1.3) * (x - 1.3) + 2.0; }, -4.0, 9.0, 1e-10);
  EXPECT_NEAR(m.x, 1.3, 1e-7);
  EXPECT_NEAR(m.value, 2.0, 1e-15);
  EXPECT_LE(m.width, 1e-10);
}

TEST(NelderMead, MinimizesRosenbrock) {
  auto rosen = [](std::span<const double> x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  const std::vector<double> start{-1.2, 1.0};
  detail::SimplexOptions opt;
  opt.f_tol = 1e-14;
  opt.x_tol = 1e-9;
  const auto res = detail::nelder_mead(rosen, start, opt);
  EXPECT_TRUE(res.converged);
  EXPECT_NEAR(res.x[0], 1.0, 1e-6);
  EXPECT_NEAR(res.x[1], 1.0, 1e-6);
}

TEST(Optimizer, PhaseQuadratureWithoutSelfPhase) {
  ChainConfig c = reference_coupling(1e6, 0.0, 0.0);
  c.gamma_s = 0.0;
  const OptimizationResult res = minimize_angles(c);
  EXPECT_TRUE(res.converged);
  EXPECT_NEAR(std::remainder(res.zeta - pi / 2, pi), 0.0, 1e-6);
  EXPECT_LT(rel_err(res.best_value, 1.0 / (4.0 * 0.9 * 1e6 * c.gamma_x * c.gamma_x)), 1e-9);
}

TEST(Optimizer, MatchesClosedFormAtStrongAmplification) {
  testkit::ConfigSampler gen(21, {.big_r_lo = 4.60517, .big_r_hi = 4.60518});
  for (int i = 0; i < 5; ++i) {
    const ChainConfig c = gen.next();
    const OptimizationResult res = minimize_angles(c);
    EXPECT_LT(rel_err(res.best_value, closed_form(c)), 1e-6) << i;
    EXPECT_LE(res.best_value, closed_form(c) + 1e-9) << i;
  }
}

TEST(Optimizer, NoGapWithoutAmplification) {
  const ChainConfig c = reference_coupling(1e6, db_to_squeeze(10.0), 0.0);
  const OptimizationResult res = minimize_angles(c);
  const double gap = (closed_form(c) - res.best_value) / closed_form(c);
  RecordProperty("relative_gap", std::to_string(gap));
  EXPECT_LE(res.best_value, closed_form(c) + 1e-9);
  EXPECT_LT(std::abs(gap), 1e-9);
}

TEST(Optimizer, Deterministic) {
  const ChainConfig c = reference_coupling(3e6, 0.7, 1.9);
  const OptimizationResult a = minimize_angles(c);
  const OptimizationResult b = minimize_angles(c);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.theta, b.theta);
  EXPECT_EQ(a.phi, b.phi);
  EXPECT_EQ(a.zeta, b.zeta);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(Optimizer, AnglesInHalfOpenRange) {
  const OptimizationResult res = minimize_angles(reference_coupling(1e5, 1.0, 2.0));
  for (double a : {res.theta, res.phi, res.zeta}) {
    EXPECT_GE(a, 0.0);
    EXPECT_LT(a, pi);
  }
}

TEST(Optimizer, BudgetExhaustionThrows) {
  AngleSearchOptions opt;
  opt.max_evaluations = 500;
  EXPECT_THROW(minimize_angles(reference_coupling(1e6, 1.0, 3.0), opt), NonConvergence);
}

TEST(Optimizer, ProbePhotonSearchCoherent) {
  NpSearchOptions opt;
  opt.log_tol = 1e-6;
  const OptimizationResult res = minimize_np(reference_coupling(1.0, 0.0, 0.0), opt);
  ASSERT_TRUE(res.n_p.has_value());
  EXPECT_LT(rel_err(*res.n_p, 392156.86274509804), 1e-4);
  EXPECT_NEAR(std::sqrt(res.best_value), 140.02800840280098, 1e-6);
  EXPECT_TRUE(res.converged);
}

TEST(Optimizer, ProbePhotonSearchSqueezed) {
  NpSearchOptions opt;
  opt.log_tol = 1e-6;
  const OptimizationResult res = minimize_np(reference_coupling(1.0, db_to_squeeze(10.0), db_to_squeeze(40.0)), opt);
  ASSERT_TRUE(res.n_p.has_value());
  EXPECT_LT(rel_err(*res.n_p, 11162220.085951209), 1e-4);
  EXPECT_NEAR(std::sqrt(res.best_value), 7.874353580899644, 1e-6);
}

TEST(Optimizer, ProbePhotonSearchLosslessHasNoOptimum) {
  ChainConfig c = reference_coupling(1.0, 0.0, 0.0);
  c.eta = 1.0;
  NpSearchOptions opt;
  opt.lo = 1e3;
  opt.hi = 1e7;
  opt.log_tol = 1e-4;
  EXPECT_THROW(minimize_np(c, opt), NoFiniteOptimum);
}
