#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "spinlimit/errors.hpp"
#include "spinlimit/singlet.hpp"
#include "wigner_oracle.hpp"

using namespace spinlimit;
using std::numbers::pi;

namespace {

const double kAngles[] = {0.1, 0.5, pi / 2, 2.5, pi - 0.1};

}  // namespace

TEST(Geometry, FromVectorsAndPlanar) {
  const auto g = MeasurementGeometry::from_vectors({0, 0, 1}, {1, 0, 0});
  EXPECT_NEAR(g.beta(), pi / 2, 1e-15);
  ASSERT_TRUE(g.vectors().has_value());
  EXPECT_THROW(MeasurementGeometry::from_vectors({0, 0, 2}, {1, 0, 0}), InvalidInputError);
  EXPECT_NEAR(MeasurementGeometry::from_planar(0.2, -0.3).beta(), 0.5, 1e-15);
  EXPECT_NEAR(MeasurementGeometry::from_planar(0.0, 1.5 * pi).beta(), pi / 2, 1e-14);
  EXPECT_THROW(MeasurementGeometry::from_angle(-0.5), DomainError);
}

TEST(Geometry, FoldAngle) {
  EXPECT_NEAR(fold_angle(-0.3), 0.3, 1e-15);
  EXPECT_NEAR(fold_angle(2 * pi + 0.3), 0.3, 1e-14);
  EXPECT_NEAR(fold_angle(pi + 0.3), pi - 0.3, 1e-14);
  EXPECT_NEAR(fold_angle(-3.5 * pi), pi / 2, 1e-14);
}

TEST(JointAmplitude, PerfectAnticorrelationAtZero) {
  const auto g = MeasurementGeometry::from_angle(0.0);
  // (-1)^{j-m1} d_{-m1,m2}(0) / sqrt(2) with m1 = 1/2, m2 = -1/2
  const double a = joint_amplitude(SpinNumber(1), MagneticIndex(1), MagneticIndex(-1), g);
  EXPECT_NEAR(a, 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(a * a, 0.5, 1e-15);
  EXPECT_EQ(joint_amplitude(SpinNumber(1), MagneticIndex(1), MagneticIndex(1), g), 0.0);
}

TEST(JointAmplitude, MatchesOracle) {
  const auto j = SpinNumber::from_int(10);
  const auto g = MeasurementGeometry::from_angle(pi / 2);
  for (int two_m1 = -20; two_m1 <= 20; two_m1 += 2) {
    for (int two_m2 = -20; two_m2 <= 20; two_m2 += 2) {
      const double d = oracle::wigner_d(20, -two_m1, two_m2, pi / 2);
      const double want = parity_sign((20 - two_m1) / 2) * d / std::sqrt(21.0);
      ASSERT_NEAR(joint_amplitude(j, MagneticIndex(two_m1), MagneticIndex(two_m2), g), want,
                  1e-14);
    }
  }
  const double a = joint_amplitude(j, MagneticIndex(2), MagneticIndex(-14), g);
  const double d = oracle::wigner_d(20, -2, -14, pi / 2);
  EXPECT_NEAR(a * a, d * d / 21.0, 1e-15);
}

TEST(JointDistribution, SpinHalfAtPiIsDiagonal) {
  const auto dist = joint_distribution(SpinNumber(1), MeasurementGeometry::from_angle(pi));
  EXPECT_DOUBLE_EQ(dist(MagneticIndex(1), MagneticIndex(1)), 0.5);
  EXPECT_DOUBLE_EQ(dist(MagneticIndex(-1), MagneticIndex(-1)), 0.5);
  EXPECT_EQ(dist(MagneticIndex(1), MagneticIndex(-1)), 0.0);
  EXPECT_EQ(dist(MagneticIndex(-1), MagneticIndex(1)), 0.0);
}

TEST(JointDistribution, AmplitudeSquared) {
  const auto j = SpinNumber(7);
  const auto g = MeasurementGeometry::from_angle(1.3);
  const auto dist = joint_distribution(j, g);
  for (int r = 0; r < j.dim(); ++r)
    for (int c = 0; c < j.dim(); ++c) {
      const double a = joint_amplitude(j, j.at(r), j.at(c), g);
      ASSERT_NEAR(dist.p(r, c), a * a, 1e-15);
    }
}

TEST(JointDistribution, NormalizedWithFlatMarginals) {
  for (int two_j : {1, 2, 7, 20, 55, 100, 200}) {
    const SpinNumber j(two_j);
    for (double beta : kAngles) {
      const auto dist = joint_distribution(j, MeasurementGeometry::from_angle(beta));
      const int n = j.dim();
      double total = 0.0;
      for (int r = 0; r < n; ++r) {
        double row = 0.0;
        double col = 0.0;
        for (int c = 0; c < n; ++c) {
          ASSERT_GE(dist.p(r, c), 0.0);
          row += dist.p(r, c);
          col += dist.p(c, r);
        }
        ASSERT_NEAR(row, 1.0 / n, 1e-10);
        ASSERT_NEAR(col, 1.0 / n, 1e-10);
        total += row;
      }
      ASSERT_NEAR(total, 1.0, 1e-10);
    }
  }
}

TEST(JointDistribution, DependsOnlyOnAngle) {
  const auto j = SpinNumber::from_int(6);
  const double c = std::cos(0.8);
  const double s = std::sin(0.8);
  const auto g1 = MeasurementGeometry::from_vectors({0, 0, 1}, {s, 0, c});
  const auto g2 = MeasurementGeometry::from_vectors({1, 0, 0}, {c, s, 0});
  const auto g3 = MeasurementGeometry::from_angle(g1.beta());
  const auto p1 = joint_distribution(j, g1).p;
  EXPECT_EQ(p1, joint_distribution(j, g3).p);
  ASSERT_EQ(g1.beta(), g2.beta());
  EXPECT_EQ(p1, joint_distribution(j, g2).p);
}

TEST(JointDistribution, ReflectionSymmetry) {
  for (int two_j : {1, 6, 31}) {
    const SpinNumber j(two_j);
    for (double beta : kAngles) {
      const auto p = joint_distribution(j, MeasurementGeometry::from_angle(beta)).p;
      const auto q = joint_distribution(j, MeasurementGeometry::from_angle(pi - beta)).p;
      for (int r = 0; r <= two_j; ++r)
        for (int c = 0; c <= two_j; ++c) ASSERT_NEAR(p(r, c), q(r, two_j - c), 1e-12);
    }
  }
}

TEST(QuantumCorrelation, Examples) {
  EXPECT_NEAR(quantum_correlation(SpinNumber(1), MeasurementGeometry::from_angle(0.0)), -0.25,
              1e-15);
  EXPECT_NEAR(quantum_correlation(SpinNumber(2), MeasurementGeometry::from_angle(pi / 2)), 0.0,
              1e-15);
  EXPECT_NEAR(quantum_correlation(SpinNumber::from_int(9), MeasurementGeometry::from_angle(pi / 3)),
              -15.0, 1e-12);
}

TEST(QuantumCorrelation, GridSumMatchesClosedForm) {
  for (int j : {1, 5, 20, 50}) {
    const auto spin = SpinNumber::from_int(j);
    for (double beta : kAngles) {
      const auto g = MeasurementGeometry::from_angle(beta);
      const double want = -(j * (j + 1.0) / 3.0) * std::cos(beta);
      // Relative to the amplitude j(j+1)/3 so the zero at pi/2 is covered.
      EXPECT_NEAR(grid_correlation(joint_distribution(spin, g)), want, 1e-8 * j * (j + 1.0) / 3.0);
      if (std::abs(std::cos(beta)) > 0.01) {
        EXPECT_NEAR(grid_correlation(joint_distribution(spin, g)), want, 1e-8 * std::abs(want));
      }
      EXPECT_NEAR(quantum_correlation(spin, g), want, 1e-14 * std::abs(want) + 1e-300);
    }
  }
}

TEST(CorrelationDecomposition, Examples) {
  const auto d1 = correlation_decomposition(SpinNumber(2), MeasurementGeometry::from_angle(0.0));
  EXPECT_NEAR(d1.e_classical_part, -1.0 / 3.0, 1e-15);
  EXPECT_NEAR(d1.e_quantum_part, -1.0 / 3.0, 1e-15);
  EXPECT_NEAR(d1.e_total, -2.0 / 3.0, 1e-15);

  const auto d10 =
      correlation_decomposition(SpinNumber::from_int(10), MeasurementGeometry::from_angle(pi / 4));
  EXPECT_NEAR(d10.e_quantum_part, -std::cos(pi / 4) / 30.0, 1e-15);
  EXPECT_EQ(d10.e_total, d10.e_classical_part + d10.e_quantum_part);

  EXPECT_THROW(correlation_decomposition(SpinNumber(0), MeasurementGeometry::from_angle(1.0)),
               DomainError);
}

TEST(CorrelationDecomposition, QuantumPartShrinksLikeInverseJ) {
  const auto g = MeasurementGeometry::from_angle(0.4);
  double previous = 1e9;
  for (int j = 1; j <= 64; j *= 2) {
    const auto d = correlation_decomposition(SpinNumber::from_int(j), g);
    EXPECT_NEAR(d.e_quantum_part * j, -std::cos(0.4) / 3.0, 1e-15);
    EXPECT_LT(std::abs(d.e_quantum_part), previous);
    previous = std::abs(d.e_quantum_part);
  }
}
