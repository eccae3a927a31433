#pragma once

#include <array>
#include <optional>

#include "spinlimit/grid.hpp"
#include "spinlimit/spin.hpp"
#include "spinlimit/wigner.hpp"

namespace spinlimit {

using Vec3 = std::array<double, 3>;

/// Relative orientation of the two measurement axes. Only the angle between
/// them matters for the singlet; vectors are kept for provenance.
class MeasurementGeometry {
 public:
  /// beta in [0, pi].
  static MeasurementGeometry from_angle(double beta);
  /// Unit vectors (|a| = |b| = 1 within 1e-12); beta = arccos(a.b).
  static MeasurementGeometry from_vectors(const Vec3& a, const Vec3& b);
  /// Axes in a common plane given by their polar angles; the difference is
  /// folded into [0, pi].
  static MeasurementGeometry from_planar(double angle_a, double angle_b);

  double beta() const { return beta_; }
  const std::optional<std::array<Vec3, 2>>& vectors() const { return vectors_; }

 private:
  explicit MeasurementGeometry(double beta) : beta_(beta) {}

  double beta_;
  std::optional<std::array<Vec3, 2>> vectors_;
};

/// Folds an arbitrary angle difference into [0, pi].
double fold_angle(double angle);

/// Joint outcome probabilities p[m1, m2], both indices in descending-m order.
struct JointDistribution {
  SpinNumber j;
  double beta;
  Grid<double> p;

  double operator()(MagneticIndex m1, MagneticIndex m2) const {
    return p(j.index_of(m1), j.index_of(m2));
  }
};

/// (1/sqrt(2j+1)) (-1)^{j-m1} d^j_{-m1,m2}(beta).
double joint_amplitude(SpinNumber j, MagneticIndex m1, MagneticIndex m2,
                       const MeasurementGeometry& geom);

/// Squared amplitudes on the full (2j+1)^2 grid, built from one d-matrix.
JointDistribution joint_distribution(SpinNumber j, const MeasurementGeometry& geom);

/// Sum of m1 m2 p[m1, m2] over the grid.
double grid_correlation(const JointDistribution& dist);

/// E = -(j(j+1)/3) cos(beta). The grid sum is evaluated alongside and a
/// ConsistencyError is thrown if it differs by more than 1e-8 relative.
double quantum_correlation(SpinNumber j, const MeasurementGeometry& geom);

/// Correlation per unit j^2 split into the classical term and the 1/j
/// quantum excess.
struct CorrelationDecomposition {
  double e_total;
  double e_classical_part;
  double e_quantum_part;
};

/// Throws DomainError for j = 0.
CorrelationDecomposition correlation_decomposition(SpinNumber j, const MeasurementGeometry& geom);

}  // namespace spinlimit
