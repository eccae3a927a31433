#include "spinlimit/classical.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "spinlimit/errors.hpp"

namespace spinlimit {

namespace {

constexpr double kBoundaryTolerance = 1e-12;
constexpr double kQuadratureTarget = 1e-7;

void require_nondegenerate(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw DegenerateGeometryError("classical: theta=" + std::to_string(theta) +
                                  " must lie strictly inside (0, pi)");
  }
}

double quadratic_form(double c, double k, double l) { return k * k + l * l + 2.0 * c * k * l; }

// Min of a convex quadratic q(x) = x^2 + 2 b x + const over [lo, hi].
double clamp_min_arg(double b, double lo, double hi) { return std::clamp(-b, lo, hi); }

}  // namespace

double classical_radicand(double theta, double k, double l) {
  const double s = std::sin(theta);
  return s * s - quadratic_form(std::cos(theta), k, l);
}

DensityValue classical_density(double theta, double k, double l) {
  require_nondegenerate(theta);
  if (std::abs(k) > 1.0 || std::abs(l) > 1.0) {
    throw DomainError("classical: scaled projections must lie in [-1, 1]");
  }
  const double r = classical_radicand(theta, k, l);
  if (std::abs(r) <= kBoundaryTolerance) return {DensityRegion::boundary, 0.0};
  if (r < 0.0) return {DensityRegion::outside, 0.0};
  return {DensityRegion::inside, 0.5 / std::numbers::pi / std::sqrt(r)};
}

double classical_correlation(double theta) { return -std::cos(theta) / 3.0; }

ClassicalSample classical_sample_at(double theta, const CounterRng& rng, std::uint64_t index) {
  const double z = 2.0 * rng.uniform(2 * index) - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng.uniform(2 * index + 1);
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double nx = rho * std::cos(phi);
  // a = (0, 0, 1), b = (sin theta, 0, cos theta)
  const double k = z;
  const double l = -(std::sin(theta) * nx + std::cos(theta) * z);
  return {k, std::clamp(l, -1.0, 1.0)};
}

void for_each_classical_sample(double theta, std::size_t count, std::uint64_t seed,
                               const std::function<void(const ClassicalSample&)>& visit) {
  const CounterRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) visit(classical_sample_at(theta, rng, i));
}

ClassicalSampleSet sample_classical(double theta, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw InvalidInputError("classical: sample count must be >= 1");
  ClassicalSampleSet set{theta, seed, {}};
  set.samples.reserve(count);
  for_each_classical_sample(theta, count, seed,
                            [&](const ClassicalSample& s) { set.samples.push_back(s); });
  return set;
}

CellKind classify_rectangle(double theta, double k0, double k1, double l0, double l1) {
  const double c = std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  const std::array<double, 2> ks{k0, k1};
  const std::array<double, 2> ls{l0, l1};

  double q_max = 0.0;
  for (double k : ks)
    for (double l : ls) q_max = std::max(q_max, quadratic_form(c, k, l));

  double q_min = 0.0;
  if (!(k0 <= 0.0 && 0.0 <= k1 && l0 <= 0.0 && 0.0 <= l1)) {
    q_min = q_max;
    for (double k : ks) q_min = std::min(q_min, quadratic_form(c, k, clamp_min_arg(c * k, l0, l1)));
    for (double l : ls) q_min = std::min(q_min, quadratic_form(c, clamp_min_arg(c * l, k0, k1), l));
  }
  if (q_max < s2) return CellKind::interior;
  if (q_min >= s2) return CellKind::outside;
  return CellKind::boundary;
}

CellProbability classical_cell_probability(double theta, SpinNumber j, MagneticIndex m1,
                                           MagneticIndex m2) {
  require_nondegenerate(theta);
  if (j.two_j() == 0) throw DomainError("classical: cell probabilities need j > 0");
  j.require(m1);
  j.require(m2);
  const double jj = j.value();
  const double k = m1.value() / jj;
  const double l = m2.value() / jj;
  const double h = 0.5 / jj;
  const CellKind kind = classify_rectangle(theta, k - h, k + h, l - h, l + h);
  if (kind == CellKind::outside) return {0.0, kind};
  const DensityValue rho = classical_density(theta, k, l);
  return {rho.value / (jj * jj), kind};
}

ClassicalCellGrid classical_cell_grid(double theta, SpinNumber j) {
  require_nondegenerate(theta);
  const std::size_t n = j.dim();
  ClassicalCellGrid out{j, theta, Grid<double>(n, n), Grid<CellKind>(n, n, CellKind::outside)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto cell = classical_cell_probability(theta, j, j.at(static_cast<int>(i)),
                                                   j.at(static_cast<int>(k)));
      out.p(i, k) = cell.value;
      out.kind(i, k) = cell.kind;
    }
  }
  return out;
}

double classical_normalization(double theta) {
  require_nondegenerate(theta);
  using boost::math::quadrature::gauss_kronrod;
  const double c = std::cos(theta);
  const double s = std::sin(theta);

  auto density = [theta](double k, double l) {
    const DensityValue rho = classical_density(theta, std::clamp(k, -1.0, 1.0),
                                               std::clamp(l, -1.0, 1.0));
    return rho.region == DensityRegion::inside ? rho.value : 0.0;
  };

  // For fixed k the support is the chord l in (-kc - R, -kc + R), R = s sqrt(1-k^2).
  auto chord = [&](double k) {
    const double radius = s * std::sqrt(std::max(0.0, 1.0 - k * k));
    if (radius <= 0.0) return 0.0;
    const double lo = -k * c - radius;
    const double hi = -k * c + radius;
    const double t_max = std::sqrt(radius);
    auto from_lo = [&](double t) { return 2.0 * t * density(k, lo + t * t); };
    auto from_hi = [&](double t) { return 2.0 * t * density(k, hi - t * t); };
    return gauss_kronrod<double, 31>::integrate(from_lo, 0.0, t_max, 15, kQuadratureTarget) +
           gauss_kronrod<double, 31>::integrate(from_hi, 0.0, t_max, 15, kQuadratureTarget);
  };
  return gauss_kronrod<double, 31>::integrate(chord, -1.0, 1.0, 15, kQuadratureTarget);
}

double classical_rectangle_probability(double theta, double k0, double k1, double l0, double l1) {
  require_nondegenerate(theta);
  using boost::math::quadrature::gauss_kronrod;
  const double c = std::cos(theta);
  const double s = std::sin(theta);

  // With u = l + k c the density is (1/2pi)(R^2 - u^2)^{-1/2}; its l integral
  // over a chord segment is (1/2pi) [asin(u/R)].
  auto inner = [&](double k) {
    const double radius = s * std::sqrt(std::max(0.0, 1.0 - k * k));
    if (radius <= 0.0) return 0.0;
    const double u0 = std::clamp(l0 + k * c, -radius, radius);
    const double u1 = std::clamp(l1 + k * c, -radius, radius);
    return (std::asin(u1 / radius) - std::asin(u0 / radius)) * 0.5 / std::numbers::pi;
  };
  const double a = std::max(k0, -1.0);
  const double b = std::min(k1, 1.0);
  if (!(a < b)) return 0.0;
  return gauss_kronrod<double, 31>::integrate(inner, a, b, 15, 1e-12);
}

}  // namespace spinlimit
