#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "spinlimit/errors.hpp"
#include "spinlimit/statistics.hpp"

using namespace spinlimit;
using std::numbers::pi;

TEST(CorrectionGrid, SpinHalfByHand) {
  const auto grid = correction_grid(SpinNumber(1), MeasurementGeometry::from_angle(pi / 2));
  // Both cell midpoints (+-1, +-1) lie outside the support at theta = pi/2,
  // so delta_p is the quantum p = cos^2(pi/4) / 2 = 1/4 everywhere.
  for (double v : grid.delta_p.flat()) EXPECT_NEAR(v, 0.25, 1e-15);
  for (auto m : grid.boundary_mask.flat()) EXPECT_EQ(m, 1);
  EXPECT_EQ(grid.classical_total, 0.0);
}

TEST(CorrectionGrid, CornerMaskedAndSumIdentity) {
  const auto j = SpinNumber::from_int(10);
  const auto grid = correction_grid(j, MeasurementGeometry::from_angle(pi / 2));
  EXPECT_EQ(grid.boundary_mask(0, 0), 1);
  EXPECT_EQ(grid.boundary_mask(10, 10), 0);
  double sum = 0.0;
  for (double v : grid.delta_p.flat()) sum += v;
  EXPECT_NEAR(sum, 1.0 - grid.classical_total, 1e-12);
}

TEST(CorrectionGrid, DegenerateAngles) {
  EXPECT_THROW(correction_grid(SpinNumber(4), MeasurementGeometry::from_angle(0.0)),
               DegenerateGeometryError);
  EXPECT_THROW(correction_grid(SpinNumber(4), MeasurementGeometry::from_angle(pi)),
               DegenerateGeometryError);
}

TEST(CorrectionStats, ZeroGrid) {
  const auto j = SpinNumber(6);
  CorrectionGrid grid{j, 1.0, Grid<double>(7, 7), Grid<std::uint8_t>(7, 7), 1.0};
  const auto st = correction_stats(grid, 11, false);
  EXPECT_EQ(st.dp_av, 0.0);
  EXPECT_EQ(st.dp2_av, 0.0);
  EXPECT_EQ(st.sample_count, 49u);
  EXPECT_EQ(st.histogram.counts[5], 49u);
  EXPECT_EQ(std::accumulate(st.histogram.counts.begin(), st.histogram.counts.end(), 0u), 49u);
  EXPECT_THROW(correction_stats(grid, 4), InvalidInputError);
}

TEST(CorrectionStats, CountsAndGuards) {
  const auto grid = correction_grid(SpinNumber::from_int(20), MeasurementGeometry::from_angle(1.1));
  std::size_t unmasked = 0;
  for (auto m : grid.boundary_mask.flat()) unmasked += m == 0;
  for (bool exclude : {false, true}) {
    const auto st = correction_stats(grid, kDefaultHistogramBins, exclude);
    const std::size_t want = exclude ? unmasked : grid.delta_p.size();
    EXPECT_EQ(st.sample_count, want);
    EXPECT_EQ(std::accumulate(st.histogram.counts.begin(), st.histogram.counts.end(),
                              std::size_t{0}),
              want);
    EXPECT_EQ(st.histogram.edges.size(), static_cast<std::size_t>(kDefaultHistogramBins + 1));
    EXPECT_GE(st.dp2_av, st.dp_av * st.dp_av - 1e-15);
  }
}

TEST(CorrectionStats, Deterministic) {
  const auto g = MeasurementGeometry::from_angle(0.9);
  const auto a = correction_stats(correction_grid(SpinNumber(30), g));
  const auto b = correction_stats(correction_grid(SpinNumber(30), g));
  EXPECT_EQ(a.dp_av, b.dp_av);
  EXPECT_EQ(a.dp2_av, b.dp2_av);
  EXPECT_EQ(a.histogram.counts, b.histogram.counts);
  EXPECT_EQ(a.skewness, b.skewness);
}

TEST(CorrectionStats, MeanSquareDecreasesWithJ) {
  const auto g = MeasurementGeometry::from_angle(pi / 2);
  double previous = 1.0;
  for (int j = 10; j <= 40; j += 10) {
    const auto st = correction_stats(correction_grid(SpinNumber::from_int(j), g));
    EXPECT_LT(st.dp2_av, previous);
    previous = st.dp2_av;
  }
}

TEST(ScalingFit, ExactPowerLaws) {
  std::vector<SpinNumber> js;
  std::vector<double> quartic, quadratic;
  for (int j = 10; j <= 90; j += 10) {
    js.push_back(SpinNumber::from_int(j));
    quartic.push_back(3.5 * std::pow(j, -4.0));
    quadratic.push_back(-0.2 * std::pow(j, -2.0));
  }
  const auto f4 = fit_power_law(js, quartic);
  EXPECT_NEAR(f4.slope, -4.0, 1e-12);
  EXPECT_NEAR(f4.intercept, std::log(3.5), 1e-12);
  EXPECT_NEAR(f4.r_squared, 1.0, 1e-12);
  EXPECT_NEAR(fit_power_law(js, quadratic).slope, -2.0, 1e-12);
}

TEST(ScalingFit, LeastSquaresSolution) {
  const std::vector<SpinNumber> js{SpinNumber(2), SpinNumber(4), SpinNumber(7), SpinNumber(12),
                                   SpinNumber(30)};
  const std::vector<double> v{0.5, 0.31, 0.2, 0.01, 0.003};
  const auto fit = fit_power_law(js, v);
  // The normal equations hold at the solution: residuals are orthogonal to 1 and x.
  double r0 = 0.0, r1 = 0.0;
  for (std::size_t i = 0; i < js.size(); ++i) {
    const double x = std::log(js[i].value());
    const double r = std::log(v[i]) - fit.intercept - fit.slope * x;
    r0 += r;
    r1 += r * x;
  }
  EXPECT_NEAR(r0, 0.0, 1e-12);
  EXPECT_NEAR(r1, 0.0, 1e-12);
  EXPECT_GT(fit.r_squared, 0.0);
  EXPECT_LE(fit.r_squared, 1.0);
}

TEST(ScalingFit, Errors) {
  const std::vector<SpinNumber> few{SpinNumber(2), SpinNumber(4), SpinNumber(6), SpinNumber(6)};
  const std::vector<double> v{1, 2, 3, 4};
  EXPECT_THROW(fit_power_law(few, v), InsufficientDataError);
  const std::vector<SpinNumber> ok{SpinNumber(2), SpinNumber(4), SpinNumber(6), SpinNumber(8)};
  const std::vector<double> zero{1, 0, 3, 4};
  EXPECT_THROW(fit_power_law(ok, zero), DomainError);
}

TEST(ScalingFit, RealQuarticLawAtRightAngle) {
  std::vector<CorrectionStats> stats;
  for (int j = 10; j <= 50; j += 10) {
    stats.push_back(correction_stats(
        correction_grid(SpinNumber::from_int(j), MeasurementGeometry::from_angle(pi / 2))));
  }
  const auto fit = scaling_fit(stats, StatField::dp2_av);
  EXPECT_GT(fit.slope, -4.5);
  EXPECT_LT(fit.slope, -3.5);
}

TEST(CrossAngle, ValueAtZero) {
  for (int two_j : {1, 4, 9, 30}) {
    const SpinNumber j(two_j);
    EXPECT_NEAR(cross_angle_correlation(j, 0.0), j.dim(), 1e-12);
    EXPECT_NEAR(normalized_cross_angle_correlation(j, 0.0), 1.0, 1e-14);
  }
  EXPECT_THROW(cross_angle_correlation(SpinNumber(2), pi), DomainError);
}

TEST(CrossAngle, DecreasesAwayFromZero) {
  const auto j = SpinNumber::from_int(9);
  double previous = normalized_cross_angle_correlation(j, 0.0);
  for (double beta = 0.02; beta < 0.3; beta += 0.02) {
    const double c = normalized_cross_angle_correlation(j, beta);
    EXPECT_LT(c, previous);
    previous = c;
  }
}

TEST(CrossAngle, GoldenAtRightAngleJ4) {
  const auto j = SpinNumber::from_int(4);
  // Overlap of the antidiagonal grid with the pi/2 grid: N sum_m p(pi/2)[m, -m] / (2j+1).
  const auto p = joint_distribution(j, MeasurementGeometry::from_angle(pi / 2)).p;
  double diag = 0.0;
  for (int i = 0; i < j.dim(); ++i) diag += p(i, j.dim() - 1 - i);
  EXPECT_NEAR(cross_angle_correlation(j, pi / 2), 81.0 * diag / 9.0, 1e-12);
}
