#include "spinlimit/semiclassical.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "spinlimit/classical.hpp"
#include "spinlimit/errors.hpp"
#include "spinlimit/wigner.hpp"

namespace spinlimit {

namespace {

constexpr double kArgumentSlack = 1e-12;

double checked_acos(double x, const char* which) {
  if (!(std::abs(x) <= 1.0 + kArgumentSlack)) {
    throw RegionError(std::string("s0: ") + which + " argument " + std::to_string(x) +
                      " outside [-1, 1]");
  }
  return std::acos(std::clamp(x, -1.0, 1.0));
}

void require_integer_spin(SpinNumber j) {
  if (!j.is_integer()) {
    throw DomainError("wkb: half-integer j=" + j.to_string() +
                      " has no real (-1)^j prefactor; use integer j");
  }
}

std::vector<double> sign_change_roots(const std::function<double(double)>& f, double lo, double hi,
                                      int steps) {
  std::vector<double> roots;
  const double h = (hi - lo) / steps;
  double x0 = lo;
  double f0 = f(x0);
  for (int i = 1; i <= steps; ++i) {
    const double x1 = lo + i * h;
    const double f1 = f(x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if (f0 * f1 < 0.0) {
      std::uintmax_t iters = 100;
      auto [a, b] = boost::math::tools::toms748_solve(
          f, x0, x1, f0, f1, boost::math::tools::eps_tolerance<double>(50), iters);
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace

double wkb_radicand(SpinNumber j, MagneticIndex m, MagneticIndex m_prime, double beta) {
  const double jb = j.jbar();
  const double a = m.value();
  const double b = m_prime.value();
  const double s = std::sin(beta);
  return s * s - (a * a + b * b - 2.0 * a * b * std::cos(beta)) / (jb * jb);
}

double turning_band(SpinNumber j) { return std::pow(j.jbar(), -2.0 / 3.0); }

WkbRegion wkb_region(SpinNumber j, MagneticIndex m, MagneticIndex m_prime, double beta) {
  const double r = wkb_radicand(j, m, m_prime, beta);
  if (r < 0.0) return WkbRegion::forbidden;
  if (r < turning_band(j)) return WkbRegion::turning_zone;
  return WkbRegion::allowed;
}

double s0(SpinNumber j, MagneticIndex m, MagneticIndex m_prime, double beta) {
  const double jb = j.jbar();
  const double a = m.value();
  const double b = m_prime.value();
  const double s = std::sin(beta);
  const double c = std::cos(beta);
  if (s <= 0.0) throw RegionError("s0: sin(beta) = 0 is a turning point");
  const double ra = std::sqrt(jb * jb - a * a);
  const double rb = std::sqrt(jb * jb - b * b);
  const double t1 = checked_acos((a * c - b) / (s * ra), "first");
  const double t2 = checked_acos((a - b * c) / (s * rb), "second");
  const double t3 = checked_acos((a * b - jb * jb * c) / (ra * rb), "third");
  return a / jb * t1 - b / jb * t2 + t3;
}

WkbEvaluation wkb_d(SpinNumber j, MagneticIndex m, MagneticIndex m_prime, double beta) {
  require_integer_spin(j);
  j.require(m);
  j.require(m_prime);
  WkbEvaluation out;
  out.region = wkb_region(j, m, m_prime, beta);
  if (out.region != WkbRegion::allowed) return out;

  const double jb = j.jbar();
  const double r = wkb_radicand(j, m, m_prime, beta);
  out.envelope = std::sqrt(2.0 / (std::numbers::pi * jb * std::sqrt(r)));
  out.phase = jb * s0(j, m, m_prime, beta) - 0.25 * std::numbers::pi;
  const int sign_power = (j.two_j() + m.two_m() - m_prime.two_m()) / 2;
  out.value = parity_sign(sign_power) * std::cos(*out.phase) * out.envelope;
  return out;
}

double wkb_phase_rate(SpinNumber j, MagneticIndex m, MagneticIndex m_prime, double beta) {
  constexpr double h = 1e-6;
  return j.jbar() * (s0(j, m, m_prime, beta + h) - s0(j, m, m_prime, beta - h)) / (2.0 * h);
}

OscillationAverage oscillation_average(SpinNumber j, MagneticIndex m, MagneticIndex m_prime,
                                       double beta) {
  require_integer_spin(j);
  const double rate = std::abs(wkb_phase_rate(j, m, m_prime, beta));
  if (!(rate > 0.0)) throw RegionError("wkb: phase is stationary, no local period");
  const double half = std::numbers::pi / rate;
  const double lo = beta - half;
  const double hi = beta + half;
  if (wkb_region(j, m, m_prime, lo) != WkbRegion::allowed ||
      wkb_region(j, m, m_prime, hi) != WkbRegion::allowed) {
    throw RegionError("wkb: averaging window leaves the allowed region");
  }
  using boost::math::quadrature::gauss;
  auto exact_sq = [&](double x) {
    const double d = d_element(j, m, m_prime, x);
    return d * d;
  };
  auto envelope_half = [&](double x) {
    const double e = wkb_d(j, m, m_prime, x).envelope;
    return 0.5 * e * e;
  };
  const double width = hi - lo;
  return OscillationAverage{lo, hi, gauss<double, 30>::integrate(exact_sq, lo, hi) / width,
                            gauss<double, 30>::integrate(envelope_half, lo, hi) / width};
}

EnvelopeComparison envelope_vs_classical(SpinNumber j, const MeasurementGeometry& geom,
                                         MagneticIndex m1, MagneticIndex m2) {
  const double beta = geom.beta();
  const CellProbability cell = classical_cell_probability(beta, j, m1, m2);
  if (cell.kind != CellKind::interior) {
    throw RegionError("wkb: classical cell is not inside the support");
  }
  const WkbEvaluation w = wkb_d(j, -m1, m2, beta);
  if (w.region != WkbRegion::allowed) throw RegionError("wkb: point is in the turning zone");
  return EnvelopeComparison{w.envelope * w.envelope / (2.0 * j.dim()), cell.value};
}

PhaseCheck phase_check(SpinNumber j, MagneticIndex m, MagneticIndex m_prime, double lo, double hi,
                       int scan_steps) {
  require_integer_spin(j);
  if (!(lo < hi)) throw InvalidInputError("wkb: empty phase-check interval");
  for (int i = 0; i <= 64; ++i) {
    if (wkb_region(j, m, m_prime, lo + (hi - lo) * i / 64.0) != WkbRegion::allowed) {
      throw RegionError("wkb: phase-check interval leaves the allowed region");
    }
  }
  PhaseCheck out;
  out.exact_zeros = sign_change_roots(
      [&](double x) { return d_element(j, m, m_prime, x); }, lo, hi, scan_steps);
  // WKB zeros are searched half a local period beyond each end (when still
  // allowed) so exact zeros near the ends find their partner.
  auto extend = [&](double edge, double direction) {
    const double rate = std::abs(wkb_phase_rate(j, m, m_prime, edge));
    const double pushed = edge + direction * std::numbers::pi / std::max(rate, 1.0);
    return wkb_region(j, m, m_prime, pushed) == WkbRegion::allowed ? pushed : edge;
  };
  const double wlo = extend(lo, -1.0);
  const double whi = extend(hi, 1.0);
  const double jb = j.jbar();
  const int wkb_steps =
      static_cast<int>(std::ceil(scan_steps * (whi - wlo) / (hi - lo)));
  out.wkb_zeros = sign_change_roots(
      [&](double x) { return std::cos(jb * s0(j, m, m_prime, x) - 0.25 * std::numbers::pi); },
      wlo, whi, wkb_steps);
  for (double z : out.exact_zeros) {
    double best = std::numeric_limits<double>::infinity();
    for (double w : out.wkb_zeros) best = std::min(best, std::abs(z - w));
    out.max_offset = std::max(out.max_offset, best);
  }
  return out;
}

}  // namespace spinlimit
