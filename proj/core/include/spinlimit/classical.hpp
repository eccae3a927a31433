#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "spinlimit/grid.hpp"
#include "spinlimit/rng.hpp"
#include "spinlimit/spin.hpp"

namespace spinlimit {

// Classical counterpart of the singlet: two tops with opposite angular
// momenta J n and -J n, n uniform on the sphere. Projections are scaled,
// k = a.n and l = -b.n, so they live in [-1, 1]. Correlations are quoted per
// unit J^2; multiply by J^2 (J^2 = j(j+1) when matching a spin-j system) to
// restore units.

enum class DensityRegion { inside, boundary, outside };

struct DensityValue {
  DensityRegion region;
  /// Finite density inside the support, 0 otherwise.
  double value;
};

/// Radicand sin^2 theta - k^2 - l^2 - 2 k l cos theta; the support is where
/// it is positive.
double classical_radicand(double theta, double k, double l);

/// rho = (1/2pi) (radicand)^{-1/2}. Radicand within 1e-12 of zero reports
/// boundary. Throws DegenerateGeometryError unless theta is in (0, pi), and
/// DomainError for |k| > 1 or |l| > 1.
DensityValue classical_density(double theta, double k, double l);

/// -(1/3) cos theta per unit J^2.
double classical_correlation(double theta);

struct ClassicalSample {
  double k;
  double l;
};

struct ClassicalSampleSet {
  double theta;
  std::uint64_t seed;
  std::vector<ClassicalSample> samples;
};

/// Sample number `index` of the stream defined by (theta, seed). Axis a is
/// z, axis b lies in the x-z plane at angle theta; n = (sqrt(1-z^2) cos phi,
/// sqrt(1-z^2) sin phi, z) with z and phi uniform.
ClassicalSample classical_sample_at(double theta, const CounterRng& rng, std::uint64_t index);

/// count >= 1 samples; a pure function of (theta, count, seed).
ClassicalSampleSet sample_classical(double theta, std::size_t count, std::uint64_t seed);

/// Streams samples without storing them.
void for_each_classical_sample(double theta, std::size_t count, std::uint64_t seed,
                               const std::function<void(const ClassicalSample&)>& visit);

enum class CellKind : std::uint8_t { interior = 0, boundary = 1, outside = 2 };

struct CellProbability {
  /// rho(m1/j, m2/j) / j^2 at the cell midpoint, 0 when the midpoint is not
  /// strictly inside the support.
  double value;
  /// interior: the whole cell lies inside the support. boundary: the support
  /// edge crosses the cell. outside: no overlap.
  CellKind kind;
};

/// Cell (m1, m2) is the square of side 1/j centred on (m1/j, m2/j).
/// Requires j > 0 and theta in (0, pi).
CellProbability classical_cell_probability(double theta, SpinNumber j, MagneticIndex m1,
                                           MagneticIndex m2);

struct ClassicalCellGrid {
  SpinNumber j;
  double theta;
  Grid<double> p;
  Grid<CellKind> kind;
};

ClassicalCellGrid classical_cell_grid(double theta, SpinNumber j);

/// Classifies the rectangle [k0,k1] x [l0,l1] against the support ellipse.
CellKind classify_rectangle(double theta, double k0, double k1, double l0, double l1);

/// Integral of rho over the support, by adaptive Gauss-Kronrod in k and, for
/// each k, in l after the substitution l = edge +- t^2 that removes the
/// inverse square root at both ends of the chord. Target accuracy 1e-7.
double classical_normalization(double theta);

/// Probability mass in the rectangle [k0,k1] x [l0,l1]. The l integral is
/// done in closed form (it is an arcsine), the k integral adaptively.
double classical_rectangle_probability(double theta, double k0, double k1, double l0, double l1);

}  // namespace spinlimit
