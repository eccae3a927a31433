#include "spinlimit/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace spinlimit {

namespace {

void check_arguments(SpinNumber j, double beta, const WignerLimits& limits) {
  if (!(beta >= 0.0 && beta <= std::numbers::pi)) {
    throw DomainError("wigner: beta=" + std::to_string(beta) +
                      " outside [0, pi]; reduce the angle first");
  }
  if (j.two_j() > limits.max_two_j) {
    throw CapacityError("wigner: 2j=" + std::to_string(j.two_j()) + " exceeds maximum " +
                        std::to_string(limits.max_two_j));
  }
}

Grid<double> identity_grid(int n) {
  Grid<double> g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = 1.0;
  return g;
}

// d_{m,m'}(pi) = (-1)^{j+m} delta_{m,-m'}; with m = j - i the sign is (-1)^{2j-i}.
Grid<double> half_turn_grid(int two_j) {
  const int n = two_j + 1;
  Grid<double> g(n, n);
  for (int i = 0; i < n; ++i) g(i, two_j - i) = parity_sign(two_j - i);
  return g;
}

// Mantissa/exponent pair, keeps products of many small or large factors
// representable.
struct Scaled {
  double mant = 1.0;
  long exp = 0;

  void normalize() {
    if (mant == 0.0) {
      exp = 0;
      return;
    }
    int e = 0;
    mant = std::frexp(mant, &e);
    exp += e;
  }
  Scaled& operator*=(double x) {
    mant *= x;
    normalize();
    return *this;
  }
  Scaled& operator*=(const Scaled& o) {
    mant *= o.mant;
    exp += o.exp;
    normalize();
    return *this;
  }
  double value() const { return std::ldexp(mant, static_cast<int>(exp)); }
};

Scaled scaled_pow(double base, int power) {
  Scaled out;
  if (power == 0) return out;
  if (base == 0.0) return Scaled{0.0, 0};
  int e = 0;
  const double f = std::frexp(base, &e);
  out.mant = std::pow(f, power);
  out.exp = static_cast<long>(e) * power;
  out.normalize();
  return out;
}

Scaled scaled_sqrt(Scaled x) {
  if (x.exp % 2 != 0) {
    x.mant *= 2.0;
    x.exp -= 1;
  }
  return Scaled{std::sqrt(x.mant), x.exp / 2};
}

// P_n^{(a,b)}(x) by the forward three-term recurrence, returned scaled.
Scaled jacobi(int n, int a, int b, double x) {
  Scaled result;
  if (n == 0) return result;
  double p_prev = 1.0;
  double p_cur = 0.5 * (2.0 * (a + 1) + (a + b + 2) * (x - 1.0));
  long exp = 0;
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * x + static_cast<double>(a) * a -
                                   static_cast<double>(b) * b);
    const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    const double next = (c2 * p_cur - c3 * p_prev) / c1;
    p_prev = p_cur;
    p_cur = next;
    const double mag = std::max(std::abs(p_cur), std::abs(p_prev));
    if (mag > 0x1p500 || (mag < 0x1p-500 && mag > 0.0)) {
      int e = 0;
      std::frexp(mag, &e);
      p_cur = std::ldexp(p_cur, -e);
      p_prev = std::ldexp(p_prev, -e);
      exp += e;
    }
  }
  result.mant = p_cur;
  result.exp = exp;
  result.normalize();
  return result;
}

}  // namespace

DMatrix d_matrix(SpinNumber j, double beta, const WignerLimits& limits) {
  check_arguments(j, beta, limits);
  const int two_j = j.two_j();
  if (beta == 0.0) return DMatrix(j, beta, identity_grid(two_j + 1));
  if (beta == std::numbers::pi) return DMatrix(j, beta, half_turn_grid(two_j));

  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  std::vector<double> sq(two_j + 1);
  for (int i = 0; i <= two_j; ++i) sq[i] = std::sqrt(static_cast<double>(i));

  // Level n holds d^{n/2}, an (n+1) x (n+1) block.
  Grid<double> prev(1, 1, 1.0);
  for (int n = 1; n <= two_j; ++n) {
    Grid<double> cur(n + 1, n + 1);
    const double inv_n = 1.0 / n;
    auto old = [&](int i, int k) -> double {
      return (i < 0 || k < 0 || i >= n || k >= n) ? 0.0 : prev(i, k);
    };
    for (int i = 0; i <= n; ++i) {
      const double up = sq[n - i];  // sqrt(j + m)
      const double dn = sq[i];      // sqrt(j - m)
      for (int k = 0; k <= n; ++k) {
        const double up_p = sq[n - k];
        const double dn_p = sq[k];
        cur(i, k) = inv_n * (up * up_p * c * old(i, k) - up * dn_p * s * old(i, k - 1) +
                             dn * up_p * s * old(i - 1, k) + dn * dn_p * c * old(i - 1, k - 1));
      }
    }
    prev = std::move(cur);
  }
  return DMatrix(j, beta, std::move(prev));
}

double d_element(SpinNumber j, MagneticIndex m, MagneticIndex m_prime, double beta,
                 const WignerLimits& limits) {
  check_arguments(j, beta, limits);
  j.require(m);
  j.require(m_prime);
  const int two_j = j.two_j();
  if (beta == 0.0) return m == m_prime ? 1.0 : 0.0;
  if (beta == std::numbers::pi) {
    return m == -m_prime ? parity_sign((two_j + m.two_m()) / 2) : 0.0;
  }

  // All quantities below are integers: j+m etc. with 2j, 2m of equal parity.
  const int jpm = (two_j + m.two_m()) / 2;
  const int jmm = (two_j - m.two_m()) / 2;
  const int jpmp = (two_j + m_prime.two_m()) / 2;
  const int jmmp = (two_j - m_prime.two_m()) / 2;
  const int diff = (m.two_m() - m_prime.two_m()) / 2;  // m - m'

  const int k = std::min({jpm, jmm, jpmp, jmmp});
  int a = 0;
  int lambda = 0;
  if (k == jpmp) {
    a = diff;
    lambda = diff;
  } else if (k == jmmp) {
    a = -diff;
  } else if (k == jpm) {
    a = -diff;
  } else {
    a = diff;
    lambda = diff;
  }
  const int b = two_j - 2 * k - a;

  // sqrt((k+a+b)! k! / ((k+a)! (k+b)!)) = sqrt(prod_{i=1}^{b} (k+a+i)/(k+i)).
  Scaled ratio;
  for (int i = 1; i <= b; ++i) {
    ratio *= static_cast<double>(k + a + i) / static_cast<double>(k + i);
  }
  Scaled value = scaled_sqrt(ratio);
  value *= scaled_pow(std::sin(0.5 * beta), a);
  value *= scaled_pow(std::cos(0.5 * beta), b);
  value *= jacobi(k, a, b, std::cos(beta));
  return parity_sign(lambda) * value.value();
}

}  // namespace spinlimit
