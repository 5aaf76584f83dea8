#pragma once

// The six trigonometric kernel families over the odd/even/mixed pole
// products, in closed form and as quadrature-ready integrands, plus the three
// single-pole base facts they all reduce to.
//
// Each closed form exists in two structural variants:
//   printed   - the shape as commonly tabulated, kept verbatim;
//   corrected - the derivation-consistent shape (sign orientation of the
//               x sin family, argument order in the even cosine sum, and the
//               (2m)! pair weight in the mixed families).
// Which variant (and which overall sign) is trustworthy is decided at run
// time by the quadrature audit in audit.hpp, never assumed here.

#include <cmath>
#include <vector>

#include "pv/combinatorics.hpp"
#include "pv/errors.hpp"
#include "pv/quadrature.hpp"
#include "pv/rational.hpp"

namespace pv {

enum class KernelKind { cos_odd, xsin_odd, sin_even, cos_even, sin_mixed, cos_mixed };
enum class BaseFactKind { cos_simple, sin_over_x, x_sin };
enum class FormVariant { printed, corrected };

inline const char* kernel_name(KernelKind k) {
  switch (k) {
    case KernelKind::cos_odd: return "cos_odd";
    case KernelKind::xsin_odd: return "xsin_odd";
    case KernelKind::sin_even: return "sin_even";
    case KernelKind::cos_even: return "cos_even";
    case KernelKind::sin_mixed: return "sin_mixed";
    case KernelKind::cos_mixed: return "cos_mixed";
  }
  return "?";
}

// Audit identifiers for the printed statements of the six families.
inline const char* kernel_formula_id(KernelKind k) {
  switch (k) {
    case KernelKind::cos_odd: return "eq19";
    case KernelKind::xsin_odd: return "eq20";
    case KernelKind::sin_even: return "eq21";
    case KernelKind::cos_even: return "eq22";
    case KernelKind::sin_mixed: return "eq23";
    case KernelKind::cos_mixed: return "eq25";
  }
  return "?";
}

inline void check_kernel_args(KernelKind k, double theta, FamilyOrder o) {
  if (!(theta >= 0.0)) throw DomainError("kernel: theta must be nonnegative");
  switch (k) {
    case KernelKind::cos_odd:
      check_odd_order(o.n);
      break;
    case KernelKind::xsin_odd:
      check_odd_order(o.n);
      if (!(theta > 0.0)) throw DomainError("kernel: the x sin family needs theta > 0");
      break;
    case KernelKind::sin_even:
    case KernelKind::cos_even:
      check_even_order(o.n);
      break;
    case KernelKind::sin_mixed:
    case KernelKind::cos_mixed:
      check_odd_order(o.n);
      check_even_order(o.m);
      break;
  }
}

// PV integral of cos(theta x) / (a^2 - x^2), sin(theta x) / (x (a^2 - x^2)),
// x sin(theta x) / (a^2 - x^2) over [0, inf).
inline double base_fact(BaseFactKind kind, double a, double theta) {
  if (!(a > 0.0)) throw DomainError("base_fact: a must be positive");
  if (!(theta >= 0.0)) throw DomainError("base_fact: theta must be nonnegative");
  switch (kind) {
    case BaseFactKind::cos_simple: return kPi / (2.0 * a) * std::sin(a * theta);
    case BaseFactKind::sin_over_x: return kPi / (2.0 * a * a) * (1.0 - std::cos(a * theta));
    case BaseFactKind::x_sin:
      if (!(theta > 0.0)) throw DomainError("base_fact: x sin needs theta > 0");
      return -kPi / 2.0 * std::cos(a * theta);
  }
  throw DomainError("base_fact: unknown kind");
}

inline double kernel_closed(KernelKind kind, double theta, FamilyOrder o, FormVariant v) {
  check_kernel_args(kind, theta, o);
  int n = o.n, m = o.m;
  switch (kind) {
    case KernelKind::cos_odd: {
      double acc = 0.0;
      for (int k = 0; k <= n; ++k)
        acc += parity_sign(k) * binomial(2 * n + 1, k) * std::sin(theta * (2.0 * k - 1.0 - 2.0 * n));
      return parity_sign(n + 1) * kPi / (pow2d(2 * n + 1) * factorial(2 * n + 1)) * acc;
    }
    case KernelKind::xsin_odd: {
      double acc = 0.0;
      for (int k = 0; k <= n; ++k) {
        double a = 2.0 * k - 1.0 - 2.0 * n;
        acc += parity_sign(k) * binomial(2 * n + 1, k) * a * std::cos(theta * a);
      }
      double sign = (v == FormVariant::printed) ? parity_sign(n + 1) : parity_sign(n);
      return sign * kPi / (pow2d(2 * n + 1) * factorial(2 * n + 1)) * acc;
    }
    case KernelKind::sin_even: {
      double acc = binomial(2 * n, n);
      for (int k = 0; k < n; ++k)
        acc += 2.0 * parity_sign(k + n) * binomial(2 * n, k) * std::cos(theta * (2.0 * n - 2.0 * k));
      return kPi / (pow2d(2 * n + 1) * factorial(2 * n)) * acc;
    }
    case KernelKind::cos_even: {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        double b = 2.0 * n - 2.0 * k;
        double arg = (v == FormVariant::printed) ? theta * (2.0 * k - 2.0 * n) : theta * b;
        acc += parity_sign(k + n + 1) * binomial(2 * n, k) * b * std::sin(arg);
      }
      return kPi / (pow2d(2 * n) * factorial(2 * n)) * acc;
    }
    case KernelKind::sin_mixed:
    case KernelKind::cos_mixed: {
      bool sinKind = kind == KernelKind::sin_mixed;
      double t1 = 0.0;
      for (int s = 0; s <= n; ++s) {
        double a = 2.0 * n + 1.0 - 2.0 * s;
        double g = sinKind ? (1.0 - std::cos(theta * a)) / a : std::sin(theta * a);
        t1 += parity_sign(s) * binomial(2 * n + 1, s) * g;
      }
      t1 *= parity_sign(n) * kPi / (pow2d(2 * m + 2 * n + 1) * factorial(m) * factorial(m) * factorial(2 * n + 1));
      double pairWeight = (v == FormVariant::printed) ? factorial(m) * factorial(m) : factorial(2 * m);
      double t2 = 0.0;
      for (int k = 0; k < m; ++k) {
        double b = 2.0 * m - 2.0 * k;
        for (int s = 0; s <= n; ++s) {
          double a = 2.0 * n + 1.0 - 2.0 * s;
          double g = sinKind ? (std::cos(theta * b) - std::cos(theta * a))
                             : (a * std::sin(theta * a) - b * std::sin(theta * b));
          t2 += parity_sign(k + m + s + 1) * binomial(2 * m, k) * binomial(2 * n + 1, s) * a * g /
                (b * b - a * a);
        }
      }
      t2 *= parity_sign(n) * kPi / (pow2d(2 * m + 2 * n) * pairWeight * factorial(2 * n + 1));
      return t1 + t2;
    }
  }
  throw DomainError("kernel_closed: unknown kind");
}

namespace detail {
// sin(t x) / x, continuous through x = 0.
inline double sinc_scaled(double t, double x) {
  double u = t * x;
  if (std::abs(u) < 1e-8) return t * (1.0 - u * u / 6.0);
  return std::sin(u) / x;
}
}  // namespace detail

inline PVIntegrand kernel_integrand(KernelKind kind, double theta, FamilyOrder o) {
  check_kernel_args(kind, theta, o);
  int n = o.n, m = o.m;
  PVIntegrand ig;
  ig.oscillationRate = theta;
  switch (kind) {
    case KernelKind::cos_odd:
      ig.evaluate = [theta, n](double x) { return std::cos(theta * x) / odd_product(n, x); };
      ig.denominator = [n](double x) { return odd_product(n, x); };
      ig.poles = odd_poles(n);
      ig.decayExponent = 2.0 * n + 2.0;
      break;
    case KernelKind::xsin_odd:
      ig.evaluate = [theta, n](double x) { return x * std::sin(theta * x) / odd_product(n, x); };
      ig.denominator = [n](double x) { return odd_product(n, x); };
      ig.poles = odd_poles(n);
      ig.decayExponent = 2.0 * n + 1.0;
      break;
    case KernelKind::sin_even:
      ig.evaluate = [theta, n](double x) { return detail::sinc_scaled(theta, x) / even_product_nox(n, x); };
      ig.poles = even_poles(n);
      ig.removablePoints = {0.0};
      ig.decayExponent = 2.0 * n + 1.0;
      break;
    case KernelKind::cos_even:
      ig.evaluate = [theta, n](double x) { return std::cos(theta * x) / even_product_nox(n, x); };
      ig.denominator = [n](double x) { return even_product_nox(n, x); };
      ig.poles = even_poles(n);
      ig.decayExponent = 2.0 * n;
      break;
    case KernelKind::sin_mixed:
      ig.evaluate = [theta, n, m](double x) {
        return detail::sinc_scaled(theta, x) / (odd_product(n, x) * even_product_nox(m, x));
      };
      ig.poles = mixed_poles(n, m);
      ig.removablePoints = {0.0};
      ig.decayExponent = 2.0 * n + 2.0 * m + 3.0;
      break;
    case KernelKind::cos_mixed:
      ig.evaluate = [theta, n, m](double x) {
        return std::cos(theta * x) / (odd_product(n, x) * even_product_nox(m, x));
      };
      ig.denominator = [n, m](double x) { return odd_product(n, x) * even_product_nox(m, x); };
      ig.poles = mixed_poles(n, m);
      ig.decayExponent = 2.0 * n + 2.0 * m + 2.0;
      break;
  }
  return ig;
}

inline PVIntegrand base_fact_integrand(BaseFactKind kind, double a, double theta) {
  if (!(a > 0.0)) throw DomainError("base_fact: a must be positive");
  PVIntegrand ig;
  ig.poles = {a};
  ig.oscillationRate = theta;
  switch (kind) {
    case BaseFactKind::cos_simple:
      ig.evaluate = [a, theta](double x) { return std::cos(theta * x) / (a * a - x * x); };
      ig.denominator = [a](double x) { return a * a - x * x; };
      ig.decayExponent = 2.0;
      break;
    case BaseFactKind::sin_over_x:
      ig.evaluate = [a, theta](double x) { return detail::sinc_scaled(theta, x) / (a * a - x * x); };
      ig.removablePoints = {0.0};
      ig.decayExponent = 3.0;
      break;
    case BaseFactKind::x_sin:
      if (!(theta > 0.0)) throw DomainError("base_fact: x sin needs theta > 0");
      ig.evaluate = [a, theta](double x) { return x * std::sin(theta * x) / (a * a - x * x); };
      ig.decayExponent = 1.0;
      break;
  }
  return ig;
}

}  // namespace pv
