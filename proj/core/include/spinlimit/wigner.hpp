#pragma once

#include "spinlimit/grid.hpp"
#include "spinlimit/spin.hpp"

namespace spinlimit {

struct WignerLimits {
  /// Largest accepted value of 2j.
  int max_two_j = 400;
};

/// Real rotation matrix d^j_{m,m'}(beta) about the y axis.
///
/// Rows and columns are ordered m = j, j-1, ..., -j (index 0 is m = j).
class DMatrix {
 public:
  DMatrix(SpinNumber j, double beta, Grid<double> elements)
      : j_(j), beta_(beta), elements_(std::move(elements)) {}

  SpinNumber spin() const { return j_; }
  double beta() const { return beta_; }
  const Grid<double>& elements() const { return elements_; }

  double operator()(MagneticIndex m, MagneticIndex m_prime) const {
    return elements_(j_.index_of(m), j_.index_of(m_prime));
  }
  double at_index(std::size_t row, std::size_t col) const { return elements_(row, col); }

 private:
  SpinNumber j_;
  double beta_;
  Grid<double> elements_;
};

/// Full matrix by Risbo's recursion in steps of 1/2 in j: d^j is assembled
/// from d^{j-1/2} and d^{1/2} through the stretched Clebsch-Gordan coupling.
/// Every step is a convex-weight combination, so the scheme stays stable at
/// large j where the factorial sum cancels catastrophically. O(j^2) per step.
///
/// beta must lie in [0, pi]; beta = 0 and beta = pi return exact grids.
/// Throws DomainError for beta outside [0, pi], CapacityError when 2j exceeds
/// limits.max_two_j.
DMatrix d_matrix(SpinNumber j, double beta, const WignerLimits& limits = {});

/// Single element via the Jacobi polynomial representation, O(j) work.
/// Agrees with d_matrix to rounding; same errors as d_matrix plus
/// InvalidInputError for magnetic numbers incompatible with j.
double d_element(SpinNumber j, MagneticIndex m, MagneticIndex m_prime, double beta,
                 const WignerLimits& limits = {});

}  // namespace spinlimit
