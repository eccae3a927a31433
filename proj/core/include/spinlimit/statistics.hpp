#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spinlimit/classical.hpp"
#include "spinlimit/grid.hpp"
#include "spinlimit/singlet.hpp"
#include "spinlimit/spin.hpp"

namespace spinlimit {

/// delta_p = p - p_c cellwise; boundary_mask is set for cells that are not
/// interior to the classical support (boundary or outside).
struct CorrectionGrid {
  SpinNumber j;
  double beta;
  Grid<double> delta_p;
  Grid<std::uint8_t> boundary_mask;
  double classical_total;
};

/// Requires beta in (0, pi) (DegenerateGeometryError otherwise).
CorrectionGrid correction_grid(SpinNumber j, const MeasurementGeometry& geom);

struct Histogram {
  /// bins + 1 edges.
  std::vector<double> edges;
  std::vector<std::size_t> counts;
};

/// Summary of one correction grid. The histogram is over N delta_p with
/// N = (2j+1)^2; moments and quantiles are over the same values.
struct CorrectionStats {
  SpinNumber j;
  double beta;
  double dp_av;
  double dp2_av;
  Histogram histogram;
  std::size_t sample_count;
  double skewness;
  double median;
  double iqr;
  /// Fraction of values farther than 5 IQR from the median.
  double tail_fraction;
};

inline constexpr int kDefaultHistogramBins = 61;

/// bins >= 5. With exclude_boundary the masked cells are dropped from every
/// statistic, including dp_av and dp2_av.
CorrectionStats correction_stats(const CorrectionGrid& grid, int bins = kDefaultHistogramBins,
                                 bool exclude_boundary = true);

/// Equal-width histogram over [min, max] of the values. A zero-width span is
/// widened to [x - 0.5, x + 0.5] so all counts land in the middle bin.
Histogram make_histogram(std::span<const double> values, int bins);

struct ScalingFit {
  std::vector<SpinNumber> js;
  std::vector<double> values;
  double slope;
  double intercept;
  double r_squared;
};

enum class StatField { dp_av, dp2_av };

/// Least squares of log|value| against log j. Needs at least 4 distinct j
/// (InsufficientDataError) and non-zero values (DomainError).
ScalingFit scaling_fit(std::span<const CorrectionStats> stats, StatField which);

/// Same fit on raw (j, value) pairs.
ScalingFit fit_power_law(std::span<const SpinNumber> js, std::span<const double> values);

/// N sum p(0)[m1,m2] p(beta)[m1,m2], N = (2j+1)^2. Equals 2j+1 at beta = 0
/// and approaches 1 when the two grids are uncorrelated. beta in [0, pi).
double cross_angle_correlation(SpinNumber j, double beta);

/// cross_angle_correlation / (2j+1), equal to 1 at beta = 0.
double normalized_cross_angle_correlation(SpinNumber j, double beta);

}  // namespace spinlimit
