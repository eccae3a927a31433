#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinlimit/rng.hpp"
#include "spinlimit/singlet.hpp"
#include "spinlimit/spin.hpp"

namespace spinlimit {

/// Two coplanar axes per observer, given by polar angles in radians.
struct PlanarSettings {
  std::array<double, 2> alice{};
  std::array<double, 2> bob{};

  /// Angle between a_r and b_s folded into [0, pi].
  double beta(int r, int s) const;
  /// Order a1, a2, b1, b2.
  std::array<double, 4> flat() const { return {alice[0], alice[1], bob[0], bob[1]}; }
};

/// c[r][s][m1][m2] with r, s in {0, 1} and magnetic indices in descending-m
/// order.
class CoefficientTensor {
 public:
  explicit CoefficientTensor(SpinNumber j);
  CoefficientTensor(SpinNumber j, std::vector<std::int64_t> values);

  SpinNumber spin() const { return j_; }
  std::size_t outcomes() const { return n_; }

  std::int64_t& operator()(int r, int s, std::size_t m1, std::size_t m2) {
    return data_[index(r, s, m1, m2)];
  }
  std::int64_t operator()(int r, int s, std::size_t m1, std::size_t m2) const {
    return data_[index(r, s, m1, m2)];
  }
  const std::vector<std::int64_t>& values() const { return data_; }

 private:
  std::size_t index(int r, int s, std::size_t m1, std::size_t m2) const {
    return ((static_cast<std::size_t>(r) * 2 + s) * n_ + m1) * n_ + m2;
  }

  SpinNumber j_;
  std::size_t n_;
  std::vector<std::int64_t> data_;
};

struct ClassicalBounds {
  std::int64_t lower;  // M1
  std::int64_t upper;  // M2
};

struct BellInequality {
  SpinNumber j;
  PlanarSettings settings;
  CoefficientTensor coeffs;
  std::optional<ClassicalBounds> bounds;
};

struct BellLimits {
  /// Largest 2j for which deterministic strategies are enumerated.
  int max_two_j = 14;
};

/// Min and max of sum_{r,s} c[r][s][a_r][b_s] over all deterministic local
/// strategies (a_1, a_2, b_1, b_2). For each Alice pair the two Bob outcomes
/// are optimised independently, so the cost is O((2j+1)^3). Exact integers.
/// Throws CapacityError above limits.max_two_j: full LHV polytope bounds grow
/// exponentially.
ClassicalBounds classical_bounds(const BellInequality& ineq, const BellLimits& limits = {});

/// p(a_r, b_s, ., .) for the four setting pairs, index 2 r + s.
std::array<JointDistribution, 4> setting_distributions(SpinNumber j,
                                                       const PlanarSettings& settings);

/// sum c p over all settings and outcomes.
double quantum_value(const BellInequality& ineq);
double quantum_value(const CoefficientTensor& coeffs,
                     const std::array<JointDistribution, 4>& distributions);

inline constexpr double kViolationTolerance = 1e-9;

/// Overshoot beyond [M1, M2] divided by max(1, M2 - M1); <= 0 means no
/// violation.
double normalized_excess(double value, const ClassicalBounds& bounds);
double raw_excess(double value, const ClassicalBounds& bounds);
bool violates(double value, const ClassicalBounds& bounds);

/// Each entry is 0 with probability 1 - q, otherwise uniform on
/// {-cmax, ..., cmax} \ {0}.
struct CoefficientModel {
  double q = 0.1;
  int cmax = 3;

  std::string descriptor() const;
  CoefficientTensor sample(SpinNumber j, RngStream& rng) const;
};

struct ScanSample {
  ClassicalBounds bounds;
  double quantum;
  double excess;
};

struct ScanReport {
  SpinNumber j;
  PlanarSettings settings;
  CoefficientModel model;
  std::uint64_t seed;
  std::size_t num_samples = 0;
  std::size_t violations = 0;
  /// Largest normalized excess among violating samples, 0 if none.
  double max_excess = 0.0;
  /// Median normalized excess among violating samples, 0 if none.
  double median_excess = 0.0;
  std::vector<ScanSample> samples;
};

/// Sample i draws its tensor from CounterRng(seed).substream(i), so a scan is
/// reproducible from (seed, config) and any index range can be evaluated
/// separately.
ScanReport scan_random(SpinNumber j, const PlanarSettings& settings, const CoefficientModel& model,
                       std::size_t num_samples, std::uint64_t seed,
                       const BellLimits& limits = {});

struct SensitivityReport {
  double delta;
  std::size_t trials;
  std::size_t surviving;
  double survival_fraction;
  double base_value;
  /// Raw distance of the base value beyond the violated bound.
  double base_margin;
  /// Perturbed minus base quantum value, per trial.
  std::vector<double> shifts;
  double median_abs_shift;
};

/// pi / (2j + 1).
double default_sensitivity_delta(SpinNumber j);

/// Each trial adds independent uniform noise in [-delta, delta] to all four
/// setting angles. Throws InvalidInputError if the base configuration does
/// not violate its bounds (which are computed when absent).
SensitivityReport angle_sensitivity(const BellInequality& ineq, double delta, std::size_t trials,
                                    std::uint64_t seed);

/// CHSH combination E11 + E12 + E21 - E22 of correlations normalized by the
/// largest product |m1 m2| = j^2, so E = -(1 + 1/j)(1/3) cos beta and any
/// local model obeys |S| <= 2. Throws DomainError for j = 0.
double chsh_correlation_value(SpinNumber j, const PlanarSettings& settings);

/// Clauser-Horne inequality for spin 1/2 written with joint probabilities
/// only: p(++|11) + p(++|12) + p(++|21) - p(++|22) - pA(+|1) - pB(+|1) with
/// marginals expanded over setting pair (1,1). Bounds are [-1, 0].
/// `mirrored` relabels Bob's outcome, which is the orientation the singlet
/// violates.
CoefficientTensor clauser_horne_tensor(bool mirrored);

/// CHSH combination in probability form, c[r][s][m1][m2] = sigma_rs (2 m1)(2 m2)
/// with sigma = (+, +, +, -). Its quantum value is 4 j^2 times the normalized
/// correlation form; local bounds are +-2 (2j)^2.
CoefficientTensor chsh_tensor(SpinNumber j);

/// a = (0, pi/2), b = (pi/4, -pi/4).
PlanarSettings chsh_optimal_settings();

}  // namespace spinlimit
