#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rasec/geometry.hpp"

using namespace rasec;

namespace {

Scenario default_scenario() { return Scenario{}; }

double angle_between(const Vec3& a, const Vec3& b) {
  return std::acos(std::clamp(dot(a, b) / (norm(a) * norm(b)), -1.0, 1.0));
}

}  // namespace

TEST(Boresight, AlphaOnePointsAtUser) {
  const Scenario s = default_scenario();
  const Boresight b = boresight_from_alpha(s, 1.0);
  EXPECT_NEAR(b.direction.x, std::cos(deg2rad(60.0)), 1e-12);
  EXPECT_NEAR(b.direction.y, 0.0, 1e-12);
  EXPECT_NEAR(b.direction.z, std::sin(deg2rad(60.0)), 1e-12);
}

TEST(Boresight, AlphaMaxIsOrthogonalToEavesdropper) {
  const Scenario s = default_scenario();
  const Boresight b = boresight_from_alpha(s, alpha_max(s));
  EXPECT_LE(std::abs(dot(b.direction, s.q_e)), 1e-9 * norm(s.q_e));
}

TEST(Boresight, HandComputedDirection) {
  Scenario s;
  s.q_b = {1, 0, 0};
  s.q_e = {0, 1, 0};
  const Boresight b = boresight_from_alpha(s, 2.0);
  const double r5 = std::sqrt(5.0);
  EXPECT_NEAR(b.direction.x, 2.0 / r5, 1e-14);
  EXPECT_NEAR(b.direction.y, -1.0 / r5, 1e-14);
  EXPECT_NEAR(b.direction.z, 0.0, 1e-14);
}

TEST(Boresight, ZeroDirectionThrows) {
  Scenario s;
  s.q_b = {1, 0, 0};
  s.q_e = {2, 0, 0};
  // q_e + 2 (q_b - q_e) = 0
  EXPECT_THROW(boresight_from_alpha(s, 2.0), DegenerateGeometry);
}

TEST(Boresight, AnglesRoundTripOnRandomScenarios) {
  oracle::ScenarioFuzzer fuzz(11);
  for (int i = 0; i < 1000; ++i) {
    const Scenario s = fuzz.next();
    const double a = fuzz.uniform(1.0, alpha_max(s));
    const Boresight b = boresight_from_alpha(s, a);
    const Vec3 back = direction_from_angles(b.angles);
    ASSERT_LE(norm(back - b.direction), 1e-9) << "scenario " << i;
    ASSERT_GE(b.angles.theta_z, 0.0);
    ASSERT_LE(b.angles.theta_z, std::numbers::pi);
    ASSERT_GT(b.angles.theta_a, -std::numbers::pi);
    ASSERT_LE(b.angles.theta_a, std::numbers::pi);
  }
}

TEST(Boresight, OrthogonalAtAlphaMaxOnRandomScenarios) {
  oracle::ScenarioFuzzer fuzz(12);
  for (int i = 0; i < 1000; ++i) {
    const Scenario s = fuzz.next();
    const Vec3 v = boresight_vector(s, alpha_max(s));
    ASSERT_LE(std::abs(dot(v, s.q_e)), 1e-9 * norm(s.q_e) * norm(v)) << "scenario " << i;
  }
}

TEST(AlphaMax, ReferenceSetup) { EXPECT_NEAR(alpha_max(default_scenario()), 2.62, 0.01); }

TEST(AlphaMax, OrthogonalPositionsGiveOne) {
  Scenario s;
  s.q_b = {0, 0, 5};
  s.q_e = {3, 0, 0};
  EXPECT_DOUBLE_EQ(alpha_max(s), 1.0);
}

TEST(AlphaMax, HandComputed) {
  Scenario s;
  s.q_b = {0, 0, 1};
  s.q_e = {1, 0, 1};
  EXPECT_DOUBLE_EQ(alpha_max(s), 2.0);
}

TEST(AlphaMax, UndefinedWhenEavesdropperIsNotFartherAlongUser) {
  Scenario s;
  s.q_b = {0, 0, 2};
  s.q_e = {0, 0, 1};
  EXPECT_THROW(alpha_max(s), AlphaMaxUndefined);
}

TEST(Gain, CosineOfKnownAngles) {
  EXPECT_DOUBLE_EQ(cos_epsilon({1, 0, 0}, {1, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(cos_epsilon({1, 0, 0}, {0, 1, 0}), 0.0);
  EXPECT_NEAR(cos_epsilon({1, 0, 0}, normalized({1, 1, 0})), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Gain, PatternValues) {
  EXPECT_DOUBLE_EQ(effective_gain({1, 0, 0}, {3, 0, 0}, 4.0), 4.0);
  const Vec3 at120{std::cos(deg2rad(120.0)), std::sin(deg2rad(120.0)), 0.0};
  EXPECT_EQ(effective_gain({1, 0, 0}, at120, 4.0), 0.0);
  const Vec3 at60{std::cos(deg2rad(60.0)), std::sin(deg2rad(60.0)), 0.0};
  EXPECT_NEAR(effective_gain({1, 0, 0}, at60, 4.0), 2.0, 1e-14);
}

TEST(Gain, AlwaysWithinPatternRange) {
  oracle::ScenarioFuzzer fuzz(13);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 u = normalized(fuzz.front_point(1, 2) - fuzz.front_point(1, 2));
    const Vec3 q = fuzz.front_point(1, 100);
    const double g = effective_gain(u, q, 4.0);
    ASSERT_GE(g, 0.0);
    ASSERT_LE(g, 4.0);
  }
}

TEST(PhiInv, EndpointValues) {
  const Scenario s = default_scenario();
  const double am = alpha_max(s);
  EXPECT_NEAR(phi_inv(s, 1.0, LinkEnd::user), 1.0, 1e-15);
  EXPECT_EQ(phi_inv(s, am, LinkEnd::eavesdropper), 0.0);
  EXPECT_NEAR(phi_inv(s, am, LinkEnd::user), 0.5, 1e-12);
}

TEST(PhiInv, MatchesAngleBetweenBoresightAndTarget) {
  oracle::ScenarioFuzzer fuzz(14);
  for (int i = 0; i < 500; ++i) {
    const Scenario s = fuzz.next();
    const double a = fuzz.uniform(1.0, alpha_max(s));
    const Vec3 v = boresight_vector(s, a);
    ASSERT_NEAR(phi_inv(s, a, LinkEnd::user), std::cos(angle_between(v, s.q_b)), 1e-9);
    ASSERT_NEAR(phi_inv(s, a, LinkEnd::eavesdropper), std::cos(angle_between(v, s.q_e)), 1e-9);
  }
}

TEST(AngleBae, KnownConfigurations) {
  EXPECT_NEAR(angle_bae(default_scenario()), std::numbers::pi / 6.0, 1e-14);
  Scenario s;
  s.q_b = {1, 2, 3};
  s.q_e = {2, 4, 6};
  EXPECT_EQ(angle_bae(s), 0.0);
  EXPECT_TRUE(collinear(s));
  s.q_e = {3, 0, -1};
  EXPECT_NEAR(angle_bae(s), std::numbers::pi / 2.0, 1e-15);
}

TEST(Psi, NondecreasingOnDefaultAndRandomScenarios) {
  oracle::ScenarioFuzzer fuzz(15);
  for (int i = 0; i < 200; ++i) {
    const Scenario s = i == 0 ? default_scenario() : fuzz.next();
    const double am = alpha_max(s);
    // psi is +inf at alpha_max itself, so stop just short of it
    const int n = 400;
    double prev = 0.0;
    for (int k = 0; k < n; ++k) {
      const double a = 1.0 + (am - 1.0) * k / n;
      const double p = psi(s, a);
      ASSERT_GE(p, prev * (1.0 - 1e-12)) << "scenario " << i << " alpha " << a;
      prev = p;
    }
  }
}

TEST(Scenario, DefaultsAndUnits) {
  const Scenario s = default_scenario();
  EXPECT_NEAR(norm(s.q_b), 50.0, 1e-12);
  EXPECT_NEAR(norm(s.q_e), 70.0, 1e-12);
  EXPECT_NEAR(s.q_b.x, 25.0, 1e-12);
  EXPECT_NEAR(s.q_b.z, 43.30127018922193, 1e-12);
  EXPECT_NEAR(dbm_to_watts(30.0), 1.0, 1e-15);
  EXPECT_NEAR(snr_linear(25.0, -60.0), std::pow(10.0, 8.5), 1e-3);
}

TEST(Scenario, ValidationRejectsNonphysicalValues) {
  Scenario s;
  s.beta_b = -1.0;
  EXPECT_THROW(validate(s), ValidationError);
  s = Scenario{};
  s.K_e = -0.5;
  EXPECT_THROW(validate(s), ValidationError);
  s = Scenario{};
  s.q_e = {0, 0, 0};
  EXPECT_THROW(validate(s), ValidationError);
  EXPECT_NO_THROW(validate(Scenario{}));
}
