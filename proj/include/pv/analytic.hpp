#pragma once

// Catalog of analytic functions fed into the closed-form machinery.  Every
// entry has real Taylor coefficients about a real center, so f(conj z) equals
// conj f(z); the even/odd combination helpers rely on that symmetry to return
// real values.

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "pv/combinatorics.hpp"
#include "pv/errors.hpp"

namespace pv {

using cx = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Finite exponential sum g(z) = sum_k M[k] * exp(-k (z - alpha)).
struct SeriesFunction {
  std::vector<double> M;  // indices 0..K, K <= 64
  double alpha = 0.0;

  cx eval(cx z) const {
    cx acc = 0.0;
    for (std::size_t k = 0; k < M.size(); ++k)
      acc += M[k] * std::exp(-static_cast<double>(k) * (z - alpha));
    return acc;
  }
};

class AnalyticFunction {
 public:
  using Params = std::map<std::string, double>;

  static AnalyticFunction make(const std::string& name, const Params& params, double center) {
    AnalyticFunction f;
    f.name_ = name;
    f.params_ = params;
    f.center_ = center;
    if (!std::isfinite(center)) throw DomainError("analytic function: center must be finite");
    if (name == "power") {
      double m = get(params, "m");
      double r = std::round(m);
      f.integer_power_ = std::abs(m - r) <= 1e-9 && r >= 0.0;
      if (f.integer_power_) {
        f.power_ = r;
        f.radius_ = kInf;
      } else {
        // Principal branch only; callers must opt in explicitly.
        if (params.find("allow_nonint") == params.end() || params.at("allow_nonint") == 0.0)
          throw UnsupportedFunctionError(
              "power: non-integer exponent uses the principal branch; pass allow_nonint=1 to accept");
        if (center <= 0.0) throw DomainError("power: non-integer exponent needs center > 0");
        if (m <= 0.0) throw DomainError("power: exponent must be positive");
        f.power_ = m;
        f.nonint_warning_ = true;
        f.radius_ = center;
      }
    } else if (name == "exp" || name == "sinh" || name == "cos_exp" || name == "exp_exp") {
      f.radius_ = kInf;
    } else if (name == "log1p") {
      if (center <= -1.0) throw DomainError("log1p: center must exceed -1");
      f.radius_ = 1.0 + center;
    } else if (name == "atan_sq") {
      f.radius_ = std::sqrt(1.0 + center * center);
    } else if (name == "series") {
      SeriesFunction g;
      g.alpha = center;
      int top = -1;
      for (const auto& [key, value] : params) {
        if (key.size() < 2 || key[0] != 'M') throw UnsupportedFunctionError("series: parameters are M0..MK");
        int idx = std::stoi(key.substr(1));
        if (idx < 0 || idx > 64) throw UnsupportedFunctionError("series: index out of range (K <= 64)");
        if (idx > top) top = idx;
        (void)value;
      }
      if (top < 0) throw UnsupportedFunctionError("series: at least one M coefficient required");
      g.M.assign(static_cast<std::size_t>(top) + 1, 0.0);
      for (const auto& [key, value] : params) g.M[static_cast<std::size_t>(std::stoi(key.substr(1)))] = value;
      f.series_ = g;
      f.radius_ = kInf;
    } else {
      throw UnsupportedFunctionError("unknown analytic function: " + name);
    }
    return f;
  }

  const std::string& name() const { return name_; }
  double center() const { return center_; }
  double radius() const { return radius_; }
  bool entire() const { return std::isinf(radius_); }
  bool real_coefficients() const { return true; }
  bool nonint_power_warning() const { return nonint_warning_; }
  const SeriesFunction* series() const { return name_ == "series" ? &series_ : nullptr; }

  cx eval(cx z) const {
    if (!entire()) {
      double d = std::abs(z - center_);
      if (d > radius_ * (1.0 + 1e-9))
        throw DomainError(name_ + ": evaluation point outside the disc of analyticity");
    }
    if (name_ == "power") {
      if (integer_power_) return ipow(z, static_cast<int>(power_));
      if (z.real() <= 0.0 && std::abs(z.imag()) <= 1e-13 * (1.0 + std::abs(z)))
        throw DomainError("power: principal branch cut at the non-positive reals");
      return std::exp(power_ * std::log(z));
    }
    if (name_ == "exp") return std::exp(z);
    if (name_ == "sinh") return std::sinh(z);
    if (name_ == "cos_exp") return std::cos(std::exp(z));
    if (name_ == "exp_exp") return std::exp(std::exp(z));
    if (name_ == "log1p") {
      cx w = 1.0 + z;
      if (w.real() <= 0.0 && std::abs(w.imag()) <= 1e-13 * (1.0 + std::abs(w)))
        throw DomainError("log1p: branch cut at 1 + z <= 0");
      return std::log(w);
    }
    if (name_ == "atan_sq") {
      // atan z = (1/2i) Log((1+iz)/(1-iz)), squared.
      if (std::abs(z.real()) <= 1e-13 && std::abs(z.imag()) >= 1.0 - 1e-13)
        throw DomainError("atan_sq: branch points/cut at z = +-i t, t >= 1");
      cx i(0.0, 1.0);
      cx w = std::log((1.0 + i * z) / (1.0 - i * z)) / (2.0 * i);
      return w * w;
    }
    return series_.eval(z);
  }

  // Taylor coefficients about the center from per-entry recurrences.  Used to
  // cross-check the numerical contour coefficients, and exact up to rounding.
  std::vector<double> taylor_reference(int K) const {
    std::vector<double> c(static_cast<std::size_t>(K) + 1, 0.0);
    double a = center_;
    if (name_ == "power") {
      if (integer_power_) {
        int m = static_cast<int>(power_);
        for (int k = 0; k <= K && k <= m; ++k) c[k] = binomial(m, k) * std::pow(a, double(m - k));
      } else {
        double coef = 1.0;
        for (int k = 0; k <= K; ++k) {
          c[k] = coef * std::pow(a, power_ - k);
          coef *= (power_ - k) / double(k + 1);
        }
      }
    } else if (name_ == "exp") {
      double t = std::exp(a);
      for (int k = 0; k <= K; ++k) { c[k] = t; t /= double(k + 1); }
    } else if (name_ == "sinh") {
      double sh = std::sinh(a), ch = std::cosh(a), inv = 1.0;
      for (int k = 0; k <= K; ++k) { c[k] = (k % 2 == 0 ? sh : ch) * inv; inv /= double(k + 1); }
    } else if (name_ == "cos_exp" || name_ == "exp_exp") {
      // u = series of exp about a; push it through cos resp. exp by the
      // derivative coupling (k+1) h_{k+1} = -+ sum_j partner_j (k+1-j) u_{k+1-j}.
      std::vector<double> u(static_cast<std::size_t>(K) + 1);
      double t = std::exp(a);
      for (int k = 0; k <= K; ++k) { u[k] = t; t /= double(k + 1); }
      if (name_ == "cos_exp") {
        std::vector<double> cs(c.size()), sn(c.size());
        cs[0] = std::cos(u[0]);
        sn[0] = std::sin(u[0]);
        for (int k = 0; k < K; ++k) {
          double dc = 0.0, ds = 0.0;
          for (int j = 0; j <= k; ++j) {
            dc -= sn[j] * double(k + 1 - j) * u[k + 1 - j];
            ds += cs[j] * double(k + 1 - j) * u[k + 1 - j];
          }
          cs[k + 1] = dc / double(k + 1);
          sn[k + 1] = ds / double(k + 1);
        }
        c = cs;
      } else {
        c[0] = std::exp(u[0]);
        for (int k = 0; k < K; ++k) {
          double d = 0.0;
          for (int j = 0; j <= k; ++j) d += c[j] * double(k + 1 - j) * u[k + 1 - j];
          c[k + 1] = d / double(k + 1);
        }
      }
    } else if (name_ == "log1p") {
      c[0] = std::log1p(a);
      for (int k = 1; k <= K; ++k) c[k] = -parity_sign(k) / (double(k) * std::pow(1.0 + a, k));
    } else if (name_ == "atan_sq") {
      // r = series of 1/(1+z^2): (1+a^2) r_k + 2a r_{k-1} + r_{k-2} = 0.
      std::vector<double> r(c.size()), at(c.size());
      double q = 1.0 + a * a;
      r[0] = 1.0 / q;
      if (K >= 1) r[1] = -2.0 * a * r[0] / q;
      for (int k = 2; k <= K; ++k) r[k] = -(2.0 * a * r[k - 1] + r[k - 2]) / q;
      at[0] = std::atan(a);
      for (int k = 1; k <= K; ++k) at[k] = r[k - 1] / double(k);
      for (int k = 0; k <= K; ++k) {
        double s = 0.0;
        for (int j = 0; j <= k; ++j) s += at[j] * at[k - j];
        c[k] = s;
      }
    } else {  // series: c_k = sum_j M_j (-j)^k / k!, accumulated incrementally
      for (std::size_t j = 0; j < series_.M.size(); ++j) {
        double term = series_.M[j];
        for (int k = 0; k <= K; ++k) {
          c[k] += term;
          term *= -static_cast<double>(j) / double(k + 1);
        }
      }
    }
    return c;
  }

 private:
  static double get(const Params& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw UnsupportedFunctionError("missing parameter: " + key);
    return it->second;
  }
  static cx ipow(cx z, int m) {
    cx acc = 1.0;
    for (int i = 0; i < m; ++i) acc *= z;
    return acc;
  }

  std::string name_;
  Params params_;
  double center_ = 0.0;
  double radius_ = kInf;
  double power_ = 0.0;
  bool integer_power_ = false;
  bool nonint_warning_ = false;
  SeriesFunction series_;
};

inline double default_circle_radius(const AnalyticFunction& f) {
  return f.entire() ? 1.0 : std::min(1.0, f.radius() / 2.0);
}

// Numerical Taylor coefficients about the center: trapezoid rule on the
// circle |z - center| = r with M = max(64, 8(K+1)) samples.  The error in
// c_k scales like (noise / r^k), so downstream consumers weight by beta^k
// with beta <= r whenever they can.
inline std::vector<cx> taylor_coeffs(const AnalyticFunction& f, int K, double r) {
  if (!(r > 0.0) || (!f.entire() && r >= f.radius() * (1.0 + 1e-12)))
    throw DomainError("taylor_coeffs: circle radius must satisfy 0 < r <= radius");
  int M = std::max(64, 8 * (K + 1));
  std::vector<cx> samples(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    double phi = 2.0 * kPi * j / M;
    samples[j] = f.eval(f.center() + r * cx(std::cos(phi), std::sin(phi)));
  }
  std::vector<cx> c(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) {
    cx acc = 0.0;
    for (int j = 0; j < M; ++j) {
      double ang = -2.0 * kPi * k * j / M;
      acc += samples[j] * cx(std::cos(ang), std::sin(ang));
    }
    c[k] = acc / (double(M) * std::pow(r, k));
  }
  return c;
}

inline std::vector<cx> taylor_coeffs(const AnalyticFunction& f, int K) {
  return taylor_coeffs(f, K, default_circle_radius(f));
}

struct CombinationParams {
  double alpha = 0.0;
  double beta = 1.0;
  double theta = 1.0;
};

enum class RangeStatus { interior, boundary };

// beta must sit inside the disc of analyticity; sitting exactly on the rim is
// tolerated (and flagged) for the two cut entries whose boundary values stay
// finite almost everywhere.
inline RangeStatus validate_combination(const AnalyticFunction& f, const CombinationParams& p) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(p.theta))
    throw DomainError("combination: parameters must be finite");
  if (p.beta == 0.0) throw DomainError("combination: beta must be nonzero");
  if (p.theta < 0.0) throw DomainError("combination: theta must be nonnegative");
  if (std::abs(p.alpha - f.center()) > 1e-12 * (1.0 + std::abs(p.alpha)))
    throw DomainError("combination: alpha must equal the function's expansion center");
  if (f.entire()) return RangeStatus::interior;
  double b = std::abs(p.beta), rad = f.radius();
  if (b < rad * (1.0 - 1e-12)) return RangeStatus::interior;
  if (b <= rad * (1.0 + 1e-12)) {
    if (f.name() == "log1p" || f.name() == "atan_sq") return RangeStatus::boundary;
    throw DomainError(f.name() + ": beta on the disc boundary is not supported");
  }
  throw DomainError(f.name() + ": |beta| exceeds the radius of analyticity");
}

namespace detail {
inline void check_residual(double im, double re, const char* what) {
  if (std::abs(im) > 1e-12 * (1.0 + std::abs(re)) + 1e-12)
    throw DomainError(std::string(what) + ": imaginary residual exceeds tolerance");
}
}  // namespace detail

// f(alpha + beta e^{i theta x}) + f(alpha + beta e^{-i theta x}); real by the
// coefficient symmetry, checked.
inline double even_combination(const AnalyticFunction& f, const CombinationParams& p, double x) {
  cx e(std::cos(p.theta * x), std::sin(p.theta * x));
  cx sum = f.eval(p.alpha + p.beta * e) + f.eval(p.alpha + p.beta * std::conj(e));
  detail::check_residual(sum.imag(), sum.real(), "even_combination");
  return sum.real();
}

// (f(alpha + beta e^{i theta x}) - f(alpha + beta e^{-i theta x})) / i.
inline double odd_combination(const AnalyticFunction& f, const CombinationParams& p, double x) {
  cx e(std::cos(p.theta * x), std::sin(p.theta * x));
  cx diff = (f.eval(p.alpha + p.beta * e) - f.eval(p.alpha + p.beta * std::conj(e))) / cx(0.0, 1.0);
  detail::check_residual(diff.imag(), diff.real(), "odd_combination");
  return diff.real();
}

enum class Parity { even, odd };

// Half of the conjugate pair g(alpha - i t) +- g(alpha + i t) at t = theta x:
// sum_k M_k cos(k theta x) resp. sum_k M_k sin(k theta x).
inline double series_combination(const SeriesFunction& g, double theta, double x, Parity parity) {
  double acc = 0.0;
  for (std::size_t k = 0; k < g.M.size(); ++k) {
    double ang = static_cast<double>(k) * theta * x;
    acc += g.M[k] * (parity == Parity::even ? std::cos(ang) : std::sin(ang));
  }
  return acc;
}

}  // namespace pv
