#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "pv/errors.hpp"

namespace pv {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Family orders are capped at 8, so every combinatorial quantity in the
// closed-form sums fits exactly in 64-bit integers (and in a double).
inline constexpr int kMaxFamilyOrder = 8;
inline constexpr int kMaxFactorialArg = 20;

inline double factorial(int n) {
  static constexpr std::array<std::uint64_t, kMaxFactorialArg + 1> table = [] {
    std::array<std::uint64_t, kMaxFactorialArg + 1> t{};
    t[0] = 1;
    for (int i = 1; i <= kMaxFactorialArg; ++i) t[i] = t[i - 1] * static_cast<std::uint64_t>(i);
    return t;
  }();
  if (n < 0 || n > kMaxFactorialArg) throw DomainError("factorial: argument out of exact range");
  return static_cast<double>(table[static_cast<std::size_t>(n)]);
}

// Pascal recurrence in 64-bit; exact (as a double) for every n reachable from
// the capped orders, n <= 2*kMaxFamilyOrder + 1.
inline double binomial(int n, int k) {
  if (n < 0 || n > 34) throw DomainError("binomial: row out of range");
  if (k < 0 || k > n) return 0.0;
  static const auto rows = [] {
    std::array<std::array<std::uint64_t, 35>, 35> r{};
    for (int i = 0; i < 35; ++i) {
      r[i][0] = 1;
      for (int j = 1; j <= i; ++j)
        r[i][j] = r[i - 1][j - 1] + (j <= i - 1 ? r[i - 1][j] : 0);
    }
    return r;
  }();
  return static_cast<double>(rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
}

// Exact power of two; e may be negative.
inline double pow2d(int e) { return std::ldexp(1.0, e); }

// (-1)^j for possibly negative j.
inline double parity_sign(int j) { return (((j % 2) + 2) % 2 == 0) ? 1.0 : -1.0; }

}  // namespace pv
