#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "kerrqnd/error.hpp"
#include "kerrqnd/thresholds.hpp"

using namespace kerrqnd;

TEST(Thresholds, NonGaussianBound) {
  EXPECT_EQ(non_gaussian_bound(0.0), 0.0);
  EXPECT_NEAR(non_gaussian_bound(1000.0), 10.0, 1e-13);
  EXPECT_NEAR(non_gaussian_bound(1e6), 100.0, 1e-12);
}

TEST(Thresholds, Margin) {
  EXPECT_NEAR(margin(1000.0, 1.0), 100.0, 1e-12);
  EXPECT_NEAR(margin(1e6, 0.99), 0.0, 1e-8);
  EXPECT_NEAR(margin(296.3, 0.9), 14.81, 5e-3);
}

TEST(Thresholds, ExactOptimum) {
  EXPECT_NEAR(ns_star(0.9), 296.2962962962963, 1e-9);
  EXPECT_NEAR(ns_star(0.99), 2.962962962962963e5, 1e-5);
  EXPECT_NEAR(margin_max(0.9), 14.814814814814815, 1e-11);
  EXPECT_NEAR(margin(ns_star(0.9), 0.9), margin_max(0.9), 1e-11);
  EXPECT_NEAR(dns_max(0.9), 3.8490017945975051, 1e-13);
  EXPECT_NEAR(dns_max(0.9) * (1.0 - 0.9), 2.0 / std::sqrt(27.0), 1e-15);
  EXPECT_THROW(ns_star(1.0), NoFiniteOptimum);
  EXPECT_EQ(margin_max(1.0), std::numeric_limits<double>::infinity());
}

TEST(Thresholds, MarginConcaveWithInteriorMaximum) {
  for (double mu : {0.5, 0.9, 0.99}) {
    const double star = ns_star(mu);
    double prev_slope = std::numeric_limits<double>::infinity();
    for (double n = star / 100.0; n < star * 100.0; n *= 1.1) {
      const double h = 1e-4 * n;
      const double slope = (margin(n + h, mu) - margin(n - h, mu)) / (2 * h);
      EXPECT_LT(slope, prev_slope * (1 + 1e-6) + 1e-9);
      EXPECT_EQ(slope > 0.0, n < star) << n;
      prev_slope = slope;
    }
  }
}

TEST(Thresholds, SinglePhotonReport) {
  const ThresholdReport r = single_photon_check(1.0, 0.9);
  EXPECT_TRUE(r.single_photon_feasible);
  EXPECT_TRUE(r.non_gaussian_feasible);
  EXPECT_TRUE(ThresholdReport::order_of_magnitude);
  ASSERT_TRUE(r.min_ns_single_photon.has_value());
  EXPECT_NEAR(*r.min_ns_single_photon, 1.1825233354251717, 1e-9);
  EXPECT_NEAR(margin(*r.min_ns_single_photon, 0.9), 1.0, 1e-9);
  ASSERT_TRUE(r.max_ns_fock.has_value());
  EXPECT_NEAR(*r.max_ns_fock, (1.0 - 0.81) / 0.09, 1e-12);
  ASSERT_EQ(r.margin_table.size(), 41u);
  for (const auto& [n, m] : r.margin_table) EXPECT_LE(m, r.dns_max * r.dns_max * (1 + 1e-12));
  EXPECT_NEAR(r.margin_table.back().first, 10.0 * r.ns_star, 1e-9);
}

TEST(Thresholds, NonGaussianVerdicts) {
  EXPECT_TRUE(single_photon_check(7.88, 0.99).non_gaussian_feasible);
  EXPECT_FALSE(single_photon_check(7.88, 0.99).single_photon_feasible);
  EXPECT_FALSE(single_photon_check(140.0, 0.9).non_gaussian_feasible);
  EXPECT_FALSE(single_photon_check(140.0, 0.9).max_ns_fock.has_value());
}

TEST(Thresholds, LosslessSignal) {
  const ThresholdReport r = single_photon_check(1.0, 1.0);
  EXPECT_TRUE(std::isinf(r.ns_star));
  EXPECT_TRUE(std::isinf(r.dns_max));
  EXPECT_TRUE(r.min_ns_single_photon.has_value());
  EXPECT_NEAR(*r.min_ns_single_photon, 1.0, 1e-9);
}

TEST(Thresholds, RejectsBadInputs) {
  EXPECT_THROW(single_photon_check(-1.0, 0.9), InvalidArgument);
  EXPECT_THROW(single_photon_check(1.0, 0.0), InvalidArgument);
  EXPECT_THROW(margin(-1.0, 0.9), InvalidArgument);
}
