#include "spinlimit/singlet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spinlimit/errors.hpp"

namespace spinlimit {

namespace {

constexpr double kUnitTolerance = 1e-12;
constexpr double kCorrelationTolerance = 1e-8;

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

}  // namespace

double fold_angle(double angle) {
  if (!std::isfinite(angle)) throw DomainError("geometry: non-finite angle");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double d = std::fmod(std::abs(angle), two_pi);
  if (d > std::numbers::pi) d = two_pi - d;
  return d;
}

MeasurementGeometry MeasurementGeometry::from_angle(double beta) {
  if (!(beta >= 0.0 && beta <= std::numbers::pi)) {
    throw DomainError("geometry: beta=" + std::to_string(beta) + " outside [0, pi]");
  }
  return MeasurementGeometry(beta);
}

MeasurementGeometry MeasurementGeometry::from_vectors(const Vec3& a, const Vec3& b) {
  if (std::abs(norm(a) - 1.0) > kUnitTolerance || std::abs(norm(b) - 1.0) > kUnitTolerance) {
    throw InvalidInputError("geometry: measurement axes must be unit vectors");
  }
  const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  MeasurementGeometry g(std::acos(std::clamp(dot, -1.0, 1.0)));
  g.vectors_ = std::array<Vec3, 2>{a, b};
  return g;
}

MeasurementGeometry MeasurementGeometry::from_planar(double angle_a, double angle_b) {
  return MeasurementGeometry(fold_angle(angle_b - angle_a));
}

double joint_amplitude(SpinNumber j, MagneticIndex m1, MagneticIndex m2,
                       const MeasurementGeometry& geom) {
  j.require(m1);
  j.require(m2);
  const double sign = parity_sign((j.two_j() - m1.two_m()) / 2);
  return sign * d_element(j, -m1, m2, geom.beta()) / std::sqrt(static_cast<double>(j.dim()));
}

JointDistribution joint_distribution(SpinNumber j, const MeasurementGeometry& geom) {
  const DMatrix d = d_matrix(j, geom.beta());
  const std::size_t n = j.dim();
  const double inv_n = 1.0 / static_cast<double>(n);
  Grid<double> p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    // Row for m1 reads d row -m1, which sits at index n-1-i.
    const auto src = d.elements().row(n - 1 - i);
    for (std::size_t k = 0; k < n; ++k) p(i, k) = src[k] * src[k] * inv_n;
  }
  return JointDistribution{j, geom.beta(), std::move(p)};
}

double grid_correlation(const JointDistribution& dist) {
  const std::size_t n = dist.j.dim();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m1 = dist.j.at(static_cast<int>(i)).value();
    double row = 0.0;
    for (std::size_t k = 0; k < n; ++k) row += dist.j.at(static_cast<int>(k)).value() * dist.p(i, k);
    total += m1 * row;
  }
  return total;
}

double quantum_correlation(SpinNumber j, const MeasurementGeometry& geom) {
  const double jj = j.value();
  const double closed = -(jj * (jj + 1.0) / 3.0) * std::cos(geom.beta());
  const double summed = grid_correlation(joint_distribution(j, geom));
  const double scale = std::max(std::abs(closed), jj * (jj + 1.0) / 3.0);
  if (std::abs(summed - closed) > kCorrelationTolerance * std::max(scale, 1e-300)) {
    throw ConsistencyError("singlet: grid correlation " + std::to_string(summed) +
                           " disagrees with closed form " + std::to_string(closed));
  }
  return closed;
}

CorrelationDecomposition correlation_decomposition(SpinNumber j, const MeasurementGeometry& geom) {
  if (j.two_j() == 0) throw DomainError("singlet: correlation decomposition needs j > 0");
  const double c = std::cos(geom.beta());
  const double classical = -c / 3.0;
  const double quantum = -c / (3.0 * j.value());
  return CorrelationDecomposition{classical + quantum, classical, quantum};
}

}  // namespace spinlimit
