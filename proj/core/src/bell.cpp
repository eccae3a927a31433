#include "spinlimit/bell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "spinlimit/errors.hpp"

namespace spinlimit {

namespace {

double median_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

double PlanarSettings::beta(int r, int s) const { return fold_angle(bob[s] - alice[r]); }

CoefficientTensor::CoefficientTensor(SpinNumber j)
    : j_(j), n_(j.dim()), data_(4 * n_ * n_, 0) {}

CoefficientTensor::CoefficientTensor(SpinNumber j, std::vector<std::int64_t> values)
    : j_(j), n_(j.dim()), data_(std::move(values)) {
  if (data_.size() != 4 * n_ * n_) {
    throw InvalidInputError("bell: coefficient tensor for j=" + j.to_string() + " needs " +
                            std::to_string(4 * n_ * n_) + " entries, got " +
                            std::to_string(data_.size()));
  }
}

ClassicalBounds classical_bounds(const BellInequality& ineq, const BellLimits& limits) {
  if (ineq.j.two_j() > limits.max_two_j) {
    throw CapacityError("bell: strategy enumeration capped at 2j=" +
                        std::to_string(limits.max_two_j) + " (requested " +
                        std::to_string(ineq.j.two_j()) +
                        "); exact local bounds are exponentially hard in general");
  }
  const auto& c = ineq.coeffs;
  const std::size_t n = c.outcomes();
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = std::numeric_limits<std::int64_t>::min();
  for (std::size_t a1 = 0; a1 < n; ++a1) {
    for (std::size_t a2 = 0; a2 < n; ++a2) {
      std::int64_t best = 0;
      std::int64_t worst = 0;
      for (int s = 0; s < 2; ++s) {
        std::int64_t smax = std::numeric_limits<std::int64_t>::min();
        std::int64_t smin = std::numeric_limits<std::int64_t>::max();
        for (std::size_t b = 0; b < n; ++b) {
          const std::int64_t v = c(0, s, a1, b) + c(1, s, a2, b);
          smax = std::max(smax, v);
          smin = std::min(smin, v);
        }
        best += smax;
        worst += smin;
      }
      hi = std::max(hi, best);
      lo = std::min(lo, worst);
    }
  }
  return {lo, hi};
}

std::array<JointDistribution, 4> setting_distributions(SpinNumber j,
                                                       const PlanarSettings& settings) {
  auto at = [&](int r, int s) {
    return joint_distribution(j, MeasurementGeometry::from_angle(settings.beta(r, s)));
  };
  return {at(0, 0), at(0, 1), at(1, 0), at(1, 1)};
}

double quantum_value(const CoefficientTensor& coeffs,
                     const std::array<JointDistribution, 4>& distributions) {
  const std::size_t n = coeffs.outcomes();
  double total = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int s = 0; s < 2; ++s) {
      const auto& p = distributions[2 * r + s].p;
      for (std::size_t m1 = 0; m1 < n; ++m1) {
        for (std::size_t m2 = 0; m2 < n; ++m2) {
          const std::int64_t c = coeffs(r, s, m1, m2);
          if (c != 0) total += static_cast<double>(c) * p(m1, m2);
        }
      }
    }
  }
  return total;
}

double quantum_value(const BellInequality& ineq) {
  if (ineq.coeffs.spin() != ineq.j) throw InvalidInputError("bell: tensor spin mismatch");
  return quantum_value(ineq.coeffs, setting_distributions(ineq.j, ineq.settings));
}

double raw_excess(double value, const ClassicalBounds& bounds) {
  return std::max(value - static_cast<double>(bounds.upper),
                  static_cast<double>(bounds.lower) - value);
}

double normalized_excess(double value, const ClassicalBounds& bounds) {
  const double width = std::max<double>(1.0, static_cast<double>(bounds.upper - bounds.lower));
  return raw_excess(value, bounds) / width;
}

bool violates(double value, const ClassicalBounds& bounds) {
  return raw_excess(value, bounds) > kViolationTolerance;
}

std::string CoefficientModel::descriptor() const {
  std::ostringstream out;
  out << "sparse-uniform(q=" << q << ",cmax=" << cmax << ")";
  return out.str();
}

CoefficientTensor CoefficientModel::sample(SpinNumber j, RngStream& rng) const {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidInputError("bell: model q must lie in [0, 1]");
  if (cmax < 1) throw InvalidInputError("bell: model cmax must be >= 1");
  CoefficientTensor t(j);
  const std::size_t n = t.outcomes();
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (rng.uniform() >= q) continue;
          const std::int64_t magnitude = rng.uniform_int(1, cmax);
          t(r, s, a, b) = rng.uniform_int(0, 1) == 0 ? -magnitude : magnitude;
        }
  return t;
}

ScanReport scan_random(SpinNumber j, const PlanarSettings& settings, const CoefficientModel& model,
                       std::size_t num_samples, std::uint64_t seed, const BellLimits& limits) {
  if (j.two_j() > limits.max_two_j) {
    throw CapacityError("bell: scan refuses 2j=" + std::to_string(j.two_j()) +
                        " above the enumeration cap " + std::to_string(limits.max_two_j));
  }
  ScanReport report{j, settings, model, seed, 0, 0, 0.0, 0.0, {}};
  report.num_samples = num_samples;
  report.samples.reserve(num_samples);
  if (num_samples == 0) return report;

  const auto distributions = setting_distributions(j, settings);
  const CounterRng master(seed);
  std::vector<double> excesses;
  for (std::size_t i = 0; i < num_samples; ++i) {
    RngStream rng(master.substream(i));
    BellInequality ineq{j, settings, model.sample(j, rng), std::nullopt};
    const ClassicalBounds bounds = classical_bounds(ineq, limits);
    const double q = quantum_value(ineq.coeffs, distributions);
    const double excess = normalized_excess(q, bounds);
    report.samples.push_back({bounds, q, excess});
    if (violates(q, bounds)) {
      ++report.violations;
      excesses.push_back(excess);
      report.max_excess = std::max(report.max_excess, excess);
    }
  }
  report.median_excess = median_of(std::move(excesses));
  return report;
}

double default_sensitivity_delta(SpinNumber j) { return std::numbers::pi / j.dim(); }

SensitivityReport angle_sensitivity(const BellInequality& ineq, double delta, std::size_t trials,
                                    std::uint64_t seed) {
  if (!(delta >= 0.0)) throw InvalidInputError("bell: delta must be non-negative");
  if (trials == 0) throw InvalidInputError("bell: need at least one trial");
  const ClassicalBounds bounds = ineq.bounds ? *ineq.bounds : classical_bounds(ineq);
  const double base = quantum_value(ineq);
  if (!violates(base, bounds)) {
    throw InvalidInputError("bell: base configuration does not violate its bounds");
  }
  const bool above = base > static_cast<double>(bounds.upper);

  SensitivityReport rep{delta, trials, 0, 0.0, base, raw_excess(base, bounds), {}, 0.0};
  rep.shifts.reserve(trials);
  const CounterRng master(seed);
  std::vector<double> magnitudes;
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng(master.substream(t));
    PlanarSettings moved = ineq.settings;
    for (auto* angle : {&moved.alice[0], &moved.alice[1], &moved.bob[0], &moved.bob[1]}) {
      *angle += delta * (2.0 * rng.uniform() - 1.0);
    }
    const double value = quantum_value(ineq.coeffs, setting_distributions(ineq.j, moved));
    const bool still = above ? value > static_cast<double>(bounds.upper) + kViolationTolerance
                             : value < static_cast<double>(bounds.lower) - kViolationTolerance;
    if (still) ++rep.surviving;
    rep.shifts.push_back(value - base);
    magnitudes.push_back(std::abs(value - base));
  }
  rep.survival_fraction = static_cast<double>(rep.surviving) / static_cast<double>(trials);
  rep.median_abs_shift = median_of(std::move(magnitudes));
  return rep;
}

double chsh_correlation_value(SpinNumber j, const PlanarSettings& settings) {
  if (j.two_j() == 0) throw DomainError("bell: CHSH correlation needs j > 0");
  const double scale = -(1.0 + 1.0 / j.value()) / 3.0;
  auto e = [&](int r, int s) { return scale * std::cos(settings.beta(r, s)); };
  return e(0, 0) + e(0, 1) + e(1, 0) - e(1, 1);
}

CoefficientTensor clauser_horne_tensor(bool mirrored) {
  CoefficientTensor t(SpinNumber(1));
  const std::size_t up = 0;
  const std::size_t bob_up = mirrored ? 1 : 0;
  t(0, 0, up, bob_up) += 1;
  t(0, 1, up, bob_up) += 1;
  t(1, 0, up, bob_up) += 1;
  t(1, 1, up, bob_up) -= 1;
  for (std::size_t m = 0; m < 2; ++m) {
    t(0, 0, up, m) -= 1;      // pA(+|a1)
    t(0, 0, m, bob_up) -= 1;  // pB(+|b1)
  }
  return t;
}

CoefficientTensor chsh_tensor(SpinNumber j) {
  CoefficientTensor t(j);
  const std::size_t n = t.outcomes();
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) {
      const std::int64_t sign = (r == 1 && s == 1) ? -1 : 1;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          t(r, s, a, b) = sign * j.at(static_cast<int>(a)).two_m() * j.at(static_cast<int>(b)).two_m();
        }
    }
  return t;
}

PlanarSettings chsh_optimal_settings() {
  using std::numbers::pi;
  return PlanarSettings{{0.0, pi / 2.0}, {pi / 4.0, -pi / 4.0}};
}

}  // namespace spinlimit
