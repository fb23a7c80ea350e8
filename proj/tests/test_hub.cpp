#include "oracles.hpp"

#include <starwalk/starwalk.hpp>

#include <gtest/gtest.h>

using namespace starwalk;

TEST(Hub, StandardLargeN) {
  const auto h = hub_coefficients(1000000, 1);
  EXPECT_NEAR(std::abs(h.r - Complex(-1.0 + 2e-6, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h.t - Complex(2e-6, 0.0)), 0.0, 1e-18);
  EXPECT_EQ(h.epsilon.M, 1);
  EXPECT_EQ(h.epsilon.N, 1000000);
  EXPECT_LT(hub_residuals(h).max(), 1e-12);
}

TEST(Hub, DegreeTwoIsSwap) {
  const auto h = hub_coefficients(2, 1);
  EXPECT_NEAR(std::abs(h.r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h.t - 1.0), 0.0, 1e-15);
  EXPECT_LT(hub_residuals(h).max(), 1e-12);
}

TEST(Hub, GeneralizedQuarterTurn) {
  const auto h = hub_coefficients(100, 1, kPi / 2, 0.0);
  const double n = 100.0;
  // Substitute into the uncollapsed unitarity conditions directly.
  EXPECT_NEAR(std::norm(h.r) + (n - 1) * std::norm(h.t), 1.0, 1e-12);
  EXPECT_NEAR(2.0 * (std::conj(h.r) * h.t).real() + (n - 2) * std::norm(h.t), 0.0, 1e-12);
  EXPECT_LT(hub_residuals(h).max(), 1e-12);
}

TEST(Hub, RejectsBadArguments) {
  EXPECT_THROW(hub_coefficients(10, 10), std::invalid_argument);
  EXPECT_THROW(hub_coefficients(10, 11), std::invalid_argument);
  EXPECT_THROW(hub_coefficients(10, 0), std::invalid_argument);
  EXPECT_THROW(hub_coefficients(10, 1, 0.3, 0.3), std::invalid_argument);
  EXPECT_THROW(hub_coefficients(10, 1, 2.0 * kPi, 0.0), std::invalid_argument);
}

TEST(Hub, CollapsedStandardMatchesEpsilon) {
  for (const auto& [N, M] : {std::pair{7, 1}, {100, 3}, {1000, 10}}) {
    const auto h = hub_coefficients(N, M);
    const double e = static_cast<double>(M) / N;
    EXPECT_NEAR(std::abs(h.collapsed.R_L - (1.0 - 2.0 * e)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(h.collapsed.R_R - (-1.0 + 2.0 * e)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(h.collapsed.T - 2.0 * std::sqrt(e - e * e)), 0.0, 1e-14);
  }
}

TEST(Hub, GeneralizedGridIdentities) {
  for (double x = -3.0; x <= 3.0; x += 0.37)
    for (double y = -3.0; y <= 3.0; y += 0.41) {
      if (!(std::cos(x - y) < 1.0 - 1e-9)) continue;
      for (const auto& [N, M] : {std::pair{3, 1}, {10, 1}, {10, 4}, {1000, 7}}) {
        const auto h = hub_coefficients(N, M, x, y);
        const auto r = hub_residuals(h);
        EXPECT_LT(r.max(), 1e-12) << "x=" << x << " y=" << y << " N=" << N << " M=" << M;
      }
    }
}

TEST(Hub, GeneralizedReducesToStandardAtPi) {
  // x = pi, y = 0 through the generalized formulas gives the diffusive hub.
  const HubFamily std_family{};
  const HubFamily nudged{kPi - 1e-13, 0.0};
  const auto a = std_family.at(0.01), b = nudged.at(0.01);
  EXPECT_NEAR(std::abs(a.R_L - b.R_L), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(a.R_R - b.R_R), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(a.T - b.T), 0.0, 1e-10);
}

TEST(Hub, FamilyMatchesModelForSingleCopy) {
  const double x = 2.2, y = -0.4;
  const HubFamily f{x, y};
  for (const int N : {5, 50, 5000}) {
    const auto h = hub_coefficients(N, 1, x, y);
    const auto c = f.at(1.0 / N);
    EXPECT_NEAR(std::abs(c.R_L - h.collapsed.R_L), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(c.R_R - h.collapsed.R_R), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(c.T - h.collapsed.T), 0.0, 1e-12);
  }
}

TEST(Hub, TransmissionSlope) {
  EXPECT_NEAR(std::abs(HubFamily{}.transmission_slope() - 2.0), 0.0, 0.0);
  const HubFamily f{1.9, 0.3};
  const double e = 1e-10;
  const Complex numeric = f.at(e).T / std::sqrt(e);
  EXPECT_NEAR(std::abs(numeric - f.transmission_slope()), 0.0, 1e-8);
}
