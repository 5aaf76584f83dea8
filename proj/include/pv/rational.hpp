#pragma once

// Partial-fraction identities behind the closed forms: the odd, even, and
// mixed pole families in product form versus their binomial-sum expansions,
// plus the odd-power sinh reduction and the Laplace transform of
// sinh^{2n+1} in three independent shapes.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "pv/combinatorics.hpp"
#include "pv/errors.hpp"

namespace pv {

enum class PoleFamily { odd, even, mixed };
enum class IdentityForm { product, sum };

struct FamilyOrder {
  int n = 0;  // odd-family order: poles 1, 3, ..., 2n+1
  int m = 1;  // even-family order: poles 2, 4, ..., 2m
};

inline void check_odd_order(int n) {
  if (n < 0 || n > kMaxFamilyOrder) throw DomainError("odd family order out of range");
}
inline void check_even_order(int m) {
  if (m < 1 || m > kMaxFamilyOrder) throw DomainError("even family order out of range");
}

// prod_{k=0}^{n} ((2k+1)^2 - x^2)
inline double odd_product(int n, double x) {
  double p = 1.0;
  for (int k = 0; k <= n; ++k) {
    double a = 2.0 * k + 1.0;
    p *= a * a - x * x;
  }
  return p;
}

// prod_{k=1}^{m} ((2k)^2 - x^2); the even family's extra x factor is separate
inline double even_product_nox(int m, double x) {
  double p = 1.0;
  for (int k = 1; k <= m; ++k) {
    double b = 2.0 * k;
    p *= b * b - x * x;
  }
  return p;
}

inline std::vector<double> odd_poles(int n) {
  std::vector<double> p;
  for (int k = 0; k <= n; ++k) p.push_back(2.0 * k + 1.0);
  return p;
}
inline std::vector<double> even_poles(int m) {
  std::vector<double> p;
  for (int k = 1; k <= m; ++k) p.push_back(2.0 * k);
  return p;
}
inline std::vector<double> mixed_poles(int n, int m) {
  std::vector<double> p = odd_poles(n), q = even_poles(m);
  p.insert(p.end(), q.begin(), q.end());
  std::sort(p.begin(), p.end());
  return p;
}

namespace detail {
inline void check_pole_distance(const std::vector<double>& poles, double x, bool includeOrigin) {
  if (includeOrigin && std::abs(x) < 1e-6) throw DomainError("rational identity: x too close to the origin pole");
  for (double p : poles)
    if (std::abs(std::abs(x) - p) < 1e-6) throw DomainError("rational identity: x too close to a pole");
}

// The expanded shapes cancel heavily away from the pole cluster while every
// ingredient (binomial, squared pole, x and x^2) is exactly representable,
// so carrying the terms in a wide type recovers full double accuracy.
#if defined(__SIZEOF_FLOAT128__)
using wide = __float128;
#else
using wide = long double;
#endif
}  // namespace detail

// Evaluate the reciprocal family in the requested shape.  The sum shapes are
// the fully expanded partial fractions; product and sum agree identically on
// the shared domain.
inline double rational_identity_eval(PoleFamily family, IdentityForm form, FamilyOrder order, double x) {
  using detail::wide;
  const wide xw = x, x2 = xw * xw;
  if (family == PoleFamily::odd) {
    check_odd_order(order.n);
    detail::check_pole_distance(odd_poles(order.n), x, false);
    int n = order.n;
    if (form == IdentityForm::product) return 1.0 / odd_product(n, x);
    wide acc = 0.0;
    for (int k = 0; k <= n; ++k) {
      double a = 2.0 * n + 1.0 - 2.0 * k;
      acc += static_cast<wide>(parity_sign(k) * binomial(2 * n + 1, k) * a) / (x2 - static_cast<wide>(a * a));
    }
    return static_cast<double>(static_cast<wide>(parity_sign(n + 1)) * acc /
                               (static_cast<wide>(pow2d(2 * n)) * static_cast<wide>(factorial(2 * n + 1))));
  }
  if (family == PoleFamily::even) {
    check_even_order(order.m);
    detail::check_pole_distance(even_poles(order.m), x, true);
    int m = order.m;
    if (form == IdentityForm::product) return 1.0 / (x * even_product_nox(m, x));
    wide acc = static_cast<wide>(binomial(2 * m, m)) / xw;
    for (int k = 0; k < m; ++k) {
      double b = 2.0 * m - 2.0 * k;
      acc += static_cast<wide>(parity_sign(k + m + 1) * binomial(2 * m, k) * 2.0) * xw /
             (static_cast<wide>(b * b) - x2);
    }
    return static_cast<double>(acc / (static_cast<wide>(pow2d(2 * m)) * static_cast<wide>(factorial(2 * m))));
  }
  check_odd_order(order.n);
  check_even_order(order.m);
  detail::check_pole_distance(mixed_poles(order.n, order.m), x, true);
  int n = order.n, m = order.m;
  if (form == IdentityForm::product)
    return 1.0 / (odd_product(n, x) * x * even_product_nox(m, x));
  wide term1 = 0.0;
  for (int s = 0; s <= n; ++s) {
    double a = 2.0 * n + 1.0 - 2.0 * s;
    term1 += static_cast<wide>(parity_sign(s) * binomial(2 * n + 1, s) * a) / (x2 - static_cast<wide>(a * a));
  }
  term1 *= static_cast<wide>(parity_sign(n + 1)) /
           (xw * static_cast<wide>(pow2d(2 * m + 2 * n)) * static_cast<wide>(factorial(m) * factorial(m)) *
            static_cast<wide>(factorial(2 * n + 1)));
  wide term2 = 0.0;
  for (int k = 0; k < m; ++k) {
    double b = 2.0 * m - 2.0 * k;
    for (int s = 0; s <= n; ++s) {
      double a = 2.0 * n + 1.0 - 2.0 * s;
      term2 += static_cast<wide>(parity_sign(k + m + s + 1) * binomial(2 * m, k) * binomial(2 * n + 1, s)) *
               xw * static_cast<wide>(a) /
               ((x2 - static_cast<wide>(b * b)) * (x2 - static_cast<wide>(a * a)));
    }
  }
  term2 *= static_cast<wide>(parity_sign(n)) /
           (static_cast<wide>(pow2d(2 * m + 2 * n - 1)) * static_cast<wide>(factorial(2 * m)) *
            static_cast<wide>(factorial(2 * n + 1)));
  return static_cast<double>(term1 + term2);
}

// sinh^{2n+1} t expressed through sinh of the odd multiples; returns
// {direct power, binomial expansion}.
inline std::pair<double, double> sinh_power_reduction(int n, double t) {
  check_odd_order(n);
  if (std::abs(t) > 10.0) throw DomainError("sinh_power_reduction: |t| <= 10 to stay in exact range");
  double lhs = std::pow(std::sinh(t), 2 * n + 1);
  double rhs = 0.0;
  for (int k = 0; k <= n; ++k)
    rhs += parity_sign(k) * binomial(2 * n + 1, k) * std::sinh((2.0 * n + 1.0 - 2.0 * k) * t);
  rhs /= pow2d(2 * n);
  return {lhs, rhs};
}

enum class LaplaceForm { closed, sum, recursive };

// integral_0^inf e^{-x t} sinh^{2n+1} t dt for x > 2n+1.
inline double laplace_sinh(int n, double x, LaplaceForm form) {
  check_odd_order(n);
  if (!(x > 2.0 * n + 1.0)) throw DomainError("laplace_sinh: requires x > 2n+1");
  switch (form) {
    case LaplaceForm::closed:
      return parity_sign(n + 1) * factorial(2 * n + 1) / odd_product(n, x);
    case LaplaceForm::sum: {
      using detail::wide;
      const wide x2 = static_cast<wide>(x) * x;
      wide acc = 0.0;
      for (int k = 0; k <= n; ++k) {
        double a = 2.0 * n + 1.0 - 2.0 * k;
        acc += static_cast<wide>(parity_sign(k) * binomial(2 * n + 1, k) * a) / (x2 - static_cast<wide>(a * a));
      }
      return static_cast<double>(acc / static_cast<wide>(pow2d(2 * n)));
    }
    case LaplaceForm::recursive: {
      double v = 1.0 / (x * x - 1.0);
      for (int j = 1; j <= n; ++j) {
        double a = 2.0 * j + 1.0;
        v *= -(a * (a - 1.0)) / (a * a - x * x);
      }
      return v;
    }
  }
  throw DomainError("laplace_sinh: unknown form");
}

}  // namespace pv
