#include "spinlimit/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "spinlimit/errors.hpp"

namespace spinlimit {

namespace {

// Linear-interpolation quantile of sorted data.
double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

CorrectionGrid correction_grid(SpinNumber j, const MeasurementGeometry& geom) {
  const double beta = geom.beta();
  if (!(beta > 0.0 && beta < std::numbers::pi)) {
    throw DegenerateGeometryError("statistics: corrections need beta in (0, pi)");
  }
  const JointDistribution quantum = joint_distribution(j, geom);
  const ClassicalCellGrid classical = classical_cell_grid(beta, j);
  const std::size_t n = j.dim();
  CorrectionGrid out{j, beta, Grid<double>(n, n), Grid<std::uint8_t>(n, n), 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      out.delta_p(i, k) = quantum.p(i, k) - classical.p(i, k);
      out.boundary_mask(i, k) = classical.kind(i, k) != CellKind::interior;
      out.classical_total += classical.p(i, k);
    }
  }
  return out;
}

Histogram make_histogram(std::span<const double> values, int bins) {
  if (bins < 1) throw InvalidInputError("histogram: need at least one bin");
  Histogram h;
  h.counts.assign(bins, 0);
  h.edges.resize(bins + 1);
  if (values.empty()) {
    for (int i = 0; i <= bins; ++i) h.edges[i] = static_cast<double>(i) / bins;
    return h;
  }
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  double lo = *mn;
  double hi = *mx;
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i) h.edges[i] = lo + width * i;
  h.edges[bins] = hi;
  for (double v : values) {
    auto idx = static_cast<long>(std::floor((v - lo) / width));
    idx = std::clamp(idx, 0L, static_cast<long>(bins - 1));
    ++h.counts[idx];
  }
  return h;
}

CorrectionStats correction_stats(const CorrectionGrid& grid, int bins, bool exclude_boundary) {
  if (bins < 5) throw InvalidInputError("statistics: histogram needs at least 5 bins");
  const double big_n = static_cast<double>(grid.j.dim()) * grid.j.dim();

  std::vector<double> dp;
  dp.reserve(grid.delta_p.size());
  const auto cells = grid.delta_p.flat();
  const auto mask = grid.boundary_mask.flat();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (exclude_boundary && mask[i]) continue;
    dp.push_back(cells[i]);
  }

  CorrectionStats st{grid.j, grid.beta, 0.0, 0.0, {}, dp.size(), 0.0, 0.0, 0.0, 0.0};
  if (dp.empty()) {
    st.histogram = make_histogram({}, bins);
    return st;
  }
  const double count = static_cast<double>(dp.size());
  double sum = 0.0;
  double sum2 = 0.0;
  for (double v : dp) {
    sum += v;
    sum2 += v * v;
  }
  st.dp_av = sum / count;
  st.dp2_av = std::max(sum2 / count, st.dp_av * st.dp_av - 1e-15);

  std::vector<double> scaled(dp.size());
  std::transform(dp.begin(), dp.end(), scaled.begin(), [big_n](double v) { return big_n * v; });
  st.histogram = make_histogram(scaled, bins);

  const double mean = big_n * st.dp_av;
  double m2 = 0.0;
  double m3 = 0.0;
  for (double v : scaled) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= count;
  m3 /= count;
  st.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;

  std::sort(scaled.begin(), scaled.end());
  st.median = quantile(scaled, 0.5);
  st.iqr = quantile(scaled, 0.75) - quantile(scaled, 0.25);
  const double reach = 5.0 * st.iqr;
  const auto far = std::count_if(scaled.begin(), scaled.end(),
                                 [&](double v) { return std::abs(v - st.median) > reach; });
  st.tail_fraction = static_cast<double>(far) / count;
  return st;
}

ScalingFit fit_power_law(std::span<const SpinNumber> js, std::span<const double> values) {
  if (js.size() != values.size()) throw InvalidInputError("scaling: size mismatch");
  std::set<int> distinct;
  for (const auto& j : js) distinct.insert(j.two_j());
  if (distinct.size() < 4) throw InsufficientDataError("scaling: need at least 4 distinct j");

  const std::size_t n = js.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (js[i].two_j() == 0) throw DomainError("scaling: j = 0 has no logarithm");
    if (values[i] == 0.0 || !std::isfinite(values[i])) {
      throw DomainError("scaling: value at j=" + js[i].to_string() + " is zero or not finite");
    }
    x[i] = std::log(js[i].value());
    y[i] = std::log(std::abs(values[i]));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  ScalingFit fit;
  fit.js.assign(js.begin(), js.end());
  fit.values.assign(values.begin(), values.end());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

ScalingFit scaling_fit(std::span<const CorrectionStats> stats, StatField which) {
  std::vector<SpinNumber> js;
  std::vector<double> values;
  for (const auto& s : stats) {
    js.push_back(s.j);
    values.push_back(which == StatField::dp_av ? s.dp_av : s.dp2_av);
  }
  return fit_power_law(js, values);
}

double cross_angle_correlation(SpinNumber j, double beta) {
  if (!(beta >= 0.0 && beta < std::numbers::pi)) {
    throw DomainError("statistics: C_j(beta) needs beta in [0, pi)");
  }
  const JointDistribution same = joint_distribution(j, MeasurementGeometry::from_angle(0.0));
  const JointDistribution tilted = joint_distribution(j, MeasurementGeometry::from_angle(beta));
  const double big_n = static_cast<double>(j.dim()) * j.dim();
  double total = 0.0;
  const auto a = same.p.flat();
  const auto b = tilted.p.flat();
  for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * b[i];
  return big_n * total;
}

double normalized_cross_angle_correlation(SpinNumber j, double beta) {
  return cross_angle_correlation(j, beta) / static_cast<double>(j.dim());
}

}  // namespace spinlimit
