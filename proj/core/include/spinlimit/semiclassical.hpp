#pragma once

#include <optional>
#include <vector>

#include "spinlimit/singlet.hpp"
#include "spinlimit/spin.hpp"

namespace spinlimit {

// WKB form of d^j_{m,m'}(beta) away from turning points:
//
//   d ~ (-1)^{j+m-m'} envelope cos(Jbar S0 - pi/4),
//   envelope^2 = 2 / (pi Jbar sqrt(radicand)),
//   radicand = sin^2 beta - (m^2 + m'^2 - 2 m m' cos beta) / Jbar^2,
//
// with Jbar = j + 1/2. The 1/Jbar in envelope^2 and the (-1)^{m-m'} in the
// sign are what the exact values require (checked against wigner-core); with
// them the oscillation average of d^2 is envelope^2 / 2, which after the
// 1/(2j+1) of the singlet amplitude is the classical cell probability.

enum class WkbRegion { allowed, turning_zone, forbidden };

struct WkbEvaluation {
  /// Empty outside the allowed region.
  std::optional<double> value;
  /// 0 outside the allowed region.
  double envelope = 0.0;
  /// Jbar S0 - pi/4; empty outside the allowed region.
  std::optional<double> phase;
  WkbRegion region = WkbRegion::forbidden;
};

double wkb_radicand(SpinNumber j, MagneticIndex m, MagneticIndex m_prime, double beta);

/// Jbar^{-2/3}: radicand below this is treated as the turning zone.
double turning_band(SpinNumber j);

WkbRegion wkb_region(SpinNumber j, MagneticIndex m, MagneticIndex m_prime, double beta);

/// Generating function of the rotation, three arccos terms. Arguments within
/// 1e-12 of +-1 are clamped; anything further out throws RegionError.
double s0(SpinNumber j, MagneticIndex m, MagneticIndex m_prime, double beta);

/// Requires integer j (DomainError otherwise).
WkbEvaluation wkb_d(SpinNumber j, MagneticIndex m, MagneticIndex m_prime, double beta);

/// Local angular frequency dPhase/dbeta, by central difference.
double wkb_phase_rate(SpinNumber j, MagneticIndex m, MagneticIndex m_prime, double beta);

struct OscillationAverage {
  double window_lo;
  double window_hi;
  /// Mean of exact d^2 over the window.
  double exact_mean;
  /// Mean of envelope^2 / 2 over the window.
  double envelope_half_mean;
};

/// Averages over one local period 2 pi / |dPhase/dbeta| centred on beta.
/// Throws RegionError if the window leaves the allowed region.
OscillationAverage oscillation_average(SpinNumber j, MagneticIndex m, MagneticIndex m_prime,
                                       double beta);

struct EnvelopeComparison {
  /// envelope^2(-m1, m2) / (2 (2j+1)): local average of the quantum p.
  double envelope_probability;
  double classical_probability;
};

/// Requires the classical cell to be interior and the WKB point allowed
/// (outside the turning zone); throws RegionError otherwise.
EnvelopeComparison envelope_vs_classical(SpinNumber j, const MeasurementGeometry& geom,
                                         MagneticIndex m1, MagneticIndex m2);

struct PhaseCheck {
  std::vector<double> exact_zeros;
  std::vector<double> wkb_zeros;
  /// Largest distance from an exact zero to the nearest WKB zero.
  double max_offset = 0.0;
};

/// Zeros of the exact d and of cos(Jbar S0 - pi/4) in [lo, hi]; the whole
/// interval must be in the allowed region.
PhaseCheck phase_check(SpinNumber j, MagneticIndex m, MagneticIndex m_prime, double lo, double hi,
                       int scan_steps = 4000);

}  // namespace spinlimit
