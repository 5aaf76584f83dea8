#pragma once

// Principal-value quadrature on [0, inf) for integrands with simple poles on
// the positive axis.  Strategy:
//   * smooth panels between pole neighborhoods (adaptive Gauss-Kronrod 7-15),
//   * symmetric excision around each pole: h(u) = f(p+u) + f(p-u) is analytic
//     and even in u, so the excised error obeys E* - E(eps) = c1 eps + c3
//     eps^3 + ..., removed by a Richardson ladder on eps_j = eps0 / 2^j with
//     exponents {1, 3, 5, ...},
//   * oscillatory tail summed in blocks of length pi/theta and extrapolated by
//     iterated pairwise averaging; a non-oscillatory (mean) component of the
//     numerator is split off and integrated exactly under u = 1/x.
// Everything is deterministic for a fixed configuration.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pv/combinatorics.hpp"
#include "pv/errors.hpp"

namespace pv {

struct PVIntegrand {
  std::function<double(double)> evaluate;  // finite away from the listed poles
  std::vector<double> poles;               // strictly positive, ascending
  std::vector<double> removablePoints;     // informational; evaluate() is finite there
  double decayExponent = 2.0;              // |f| ~ x^-decayExponent up to oscillation
  double oscillationRate = 0.0;            // slowest trigonometric frequency; 0 = none
  std::function<double(double)> denominator;  // optional polynomial part, enables tail split
  double numeratorConstant = 0.0;          // mean (non-oscillatory) numerator component
};

struct QuadConfig {
  double epsilon0 = 1e-2;
  int excisionLevels = 6;
  double panelTol = 1e-10;
  int tailBlocks = 64;
  int accelerationDepth = 8;
  double hardLimitEvals = 5e6;
};

struct PVRegion {
  std::string label;
  double value = 0.0;
  double error = 0.0;
};

struct PVResult {
  double value = 0.0;
  double errorEstimate = 0.0;
  long evals = 0;
  bool converged = true;
  std::vector<PVRegion> regions;

  std::string diagnostics() const {
    std::string out;
    char buf[128];
    for (const auto& r : regions) {
      std::snprintf(buf, sizeof buf, "%s=%.6g(err %.2g) ", r.label.c_str(), r.value, r.error);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, "evals=%ld%s", evals, converged ? "" : " NOT-CONVERGED");
    out += buf;
    return out;
  }
};

// Tail extrapolation: repeated pairwise averaging of the partial sums.  For
// alternating block sums each pass halves the oscillating residual order.
struct AccelResult {
  double value = 0.0;
  double lastCorrection = 0.0;
};

inline AccelResult accelerate(std::vector<double> s, int depth) {
  if (depth < 0) throw DomainError("accelerate: depth must be nonnegative");
  if (s.size() < static_cast<std::size_t>(depth) + 1)
    throw DomainError("accelerate: need at least depth+1 partial sums");
  AccelResult out;
  out.value = s.back();
  out.lastCorrection = std::abs(s.back() - (s.size() > 1 ? s[s.size() - 2] : s.back()));
  for (int d = 0; d < depth && s.size() > 1; ++d) {
    for (std::size_t j = 0; j + 1 < s.size(); ++j) s[j] = 0.5 * (s[j] + s[j + 1]);
    s.pop_back();
    out.lastCorrection = std::abs(s.back() - out.value);
    out.value = s.back();
  }
  return out;
}

namespace detail {

// Gauss-Kronrod 7-15 nodes on [0,1] (symmetric halves) and weights.
inline constexpr std::array<double, 8> kGKNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr std::array<double, 8> kGKWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

// Soft eval budget: refinement stops once the limit is hit; each region still
// gets its mandatory first pass so a partial estimate always exists.
struct EvalBudget {
  long limit;
  long used = 0;
  bool exhausted = false;

  explicit EvalBudget(double lim) : limit(static_cast<long>(lim)) {}
  bool take(long k) {
    if (used + k > limit) {
      exhausted = true;
      return false;
    }
    used += k;
    return true;
  }
  void force(long k) {
    if (used + k > limit) exhausted = true;
    used += k;
  }
};

struct GK {
  double value = 0.0;   // 15-point estimate
  double error = 0.0;   // |15-point - 7-point|
};

template <class F>
GK gk15(const F& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double i15 = kGKWeights[7] * fc;
  double i7 = kGaussWeights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double x = h * kGKNodes[j];
    double fsum = f(c - x) + f(c + x);
    i15 += kGKWeights[j] * fsum;
    if (j % 2 == 1) i7 += kGaussWeights[j / 2] * fsum;
  }
  return {i15 * h, std::abs((i15 - i7) * h)};
}

struct PanelOut {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

// Worst-first adaptive bisection.  Termination: accumulated error below
// tol * max(1, |value|), or depth/width/budget limits (flagged).
template <class F>
PanelOut integrate_panel(const F& f, double a, double b, double tol, EvalBudget& budget) {
  struct Seg {
    double a, b, value, error;
    int depth;
  };
  PanelOut out;
  if (!(b > a)) return out;
  budget.force(15);
  GK whole = gk15(f, a, b);
  std::vector<Seg> segs{{a, b, whole.value, whole.error, 0}};
  double total = whole.value, totalErr = whole.error;
  while (totalErr > tol * std::max(1.0, std::abs(total))) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < segs.size(); ++i)
      if (segs[i].error > segs[worst].error) worst = i;
    Seg s = segs[worst];
    if (s.depth >= 48 || (s.b - s.a) < 1e-14 * (1.0 + std::abs(s.a))) {
      out.converged = false;
      break;
    }
    if (!budget.take(30)) {
      out.converged = false;
      break;
    }
    double mid = 0.5 * (s.a + s.b);
    GK left = gk15(f, s.a, mid), right = gk15(f, mid, s.b);
    total += left.value + right.value - s.value;
    totalErr += left.error + right.error - s.error;
    segs[worst] = {s.a, mid, left.value, left.error, s.depth + 1};
    segs.push_back({mid, s.b, right.value, right.error, s.depth + 1});
  }
  out.value = total;
  out.error = std::max(totalErr, 0.0);
  return out;
}

inline double richardson_limit(const std::vector<double>& e, double* correction) {
  // Neville tableau for eps-halving with error exponents 1, 3, 5, ...
  std::vector<double> row = e;
  double prevDiag = e.back(), diag = e.back();
  for (std::size_t t = 1; t < e.size(); ++t) {
    double factor = pow2d(static_cast<int>(2 * t - 1)) - 1.0;
    for (std::size_t j = e.size() - 1; j >= t; --j) {
      row[j] = row[j] + (row[j] - row[j - 1]) / factor;
      if (j == t) break;
    }
    prevDiag = diag;
    diag = row.back();
  }
  if (correction) *correction = std::abs(diag - prevDiag);
  return diag;
}

// Block-partial limit for the oscillatory tail.  Pairwise averaging removes
// the alternating components (harmonics with an odd number of half periods
// per block).  Harmonics completing whole periods per block leave same-signed
// block sums whose partial-sum deficit shrinks only like 1/x, which averaging
// cannot accelerate; that smooth remainder is removed by Neville
// extrapolation in 1/x over the last few averaged entries.
inline AccelResult tail_limit(const std::vector<double>& partials, int depth, double T0,
                              double blockLen) {
  AccelResult out = accelerate(partials, depth);
  std::vector<double> s = partials;
  int rounds = 0;
  for (int d = 0; d < depth && s.size() > 1; ++d) {
    for (std::size_t j = 0; j + 1 < s.size(); ++j) s[j] = 0.5 * (s[j] + s[j + 1]);
    s.pop_back();
    ++rounds;
  }
  if (s.size() < 3) return out;

  // Sample the averaged sequence across its back half: adjacent entries have
  // nearly equal 1/x, which would amplify roundoff in the tableau.
  std::size_t K = std::min<std::size_t>(5, s.size());
  std::size_t stride = std::max<std::size_t>(1, s.size() / (2 * (K - 1)));
  while (stride * (K - 1) >= s.size()) --stride;
  std::vector<double> t(K), v(K);
  for (std::size_t i = 0; i < K; ++i) {
    // entry j of the averaged sequence is a binomial mean of blocks j..j+rounds
    std::size_t idx = s.size() - 1 - stride * (K - 1 - i);
    double x = T0 + (static_cast<double>(idx) + 1.0 + 0.5 * rounds) * blockLen;
    t[i] = 1.0 / x;
    v[i] = s[idx];
  }
  double prevDiag = v[K - 1];
  for (std::size_t c = 1; c < K; ++c) {
    if (c == K - 1) prevDiag = v[K - 1];
    for (std::size_t i = K - 1; i >= c; --i) {
      v[i] = (t[i] * v[i - 1] - t[i - c] * v[i]) / (t[i] - t[i - c]);
      if (i == c) break;
    }
  }
  double extrap = v[K - 1];
  out.lastCorrection = std::abs(extrap - prevDiag) + 1e-3 * std::abs(extrap - out.value);
  out.value = extrap;
  return out;
}

}  // namespace detail

inline PVResult pv_integrate(const PVIntegrand& ig, const QuadConfig& cfg = {}) {
  if (!ig.evaluate) throw DomainError("pv_integrate: missing integrand");
  for (std::size_t i = 0; i < ig.poles.size(); ++i) {
    if (!(ig.poles[i] > 0.0)) throw DomainError("pv_integrate: poles must be strictly positive");
    if (i > 0 && !(ig.poles[i] > ig.poles[i - 1]))
      throw DomainError("pv_integrate: poles must be strictly ascending");
    if (i > 0 && ig.poles[i] - ig.poles[i - 1] < 0.5)
      throw DomainError("pv_integrate: poles must be separated by at least 0.5");
  }
  double theta = ig.oscillationRate;
  if (theta < 0.0) throw DomainError("pv_integrate: oscillationRate must be nonnegative");
  if (theta == 0.0 && ig.decayExponent < 2.0)
    throw DomainError("pv_integrate: non-oscillatory integrand needs decay >= 2");

  detail::EvalBudget budget(cfg.hardLimitEvals);
  PVResult res;
  const auto& f = ig.evaluate;

  // Excision half-widths, capped by the room to each neighbor.
  std::vector<double> delta(ig.poles.size());
  for (std::size_t i = 0; i < ig.poles.size(); ++i) {
    double room = ig.poles[i];  // distance to the origin
    if (i > 0) room = std::min(room, ig.poles[i] - ig.poles[i - 1]);
    if (i + 1 < ig.poles.size()) room = std::min(room, ig.poles[i + 1] - ig.poles[i]);
    delta[i] = std::min(0.4, 0.4 * room);
    if (delta[i] <= 2.0 * cfg.epsilon0)
      throw DomainError("pv_integrate: pole spacing too tight for the excision ladder");
  }

  double lastPole = ig.poles.empty() ? 0.0 : ig.poles.back();
  double T0 = lastPole + (theta > 0.0 ? std::max(2.0, 4.0 / theta) : 2.0);

  auto addRegion = [&](const std::string& label, const detail::PanelOut& p) {
    res.value += p.value;
    res.errorEstimate += p.error;
    if (!p.converged) res.converged = false;
    res.regions.push_back({label, p.value, p.error});
  };

  // Smooth segments between the excised neighborhoods.
  {
    double cursor = 0.0;
    char label[32];
    for (std::size_t i = 0; i <= ig.poles.size(); ++i) {
      double hi = (i < ig.poles.size()) ? ig.poles[i] - delta[i] : T0;
      if (hi > cursor) {
        std::snprintf(label, sizeof label, "smooth[%zu]", i);
        addRegion(label, detail::integrate_panel(f, cursor, hi, cfg.panelTol, budget));
      }
      if (i < ig.poles.size()) cursor = ig.poles[i] + delta[i];
    }
  }

  // Pole neighborhoods via the symmetric sum and the Richardson ladder.
  for (std::size_t i = 0; i < ig.poles.size(); ++i) {
    double p = ig.poles[i], d = delta[i];
    auto h = [&](double u) { return f(p + u) + f(p - u); };
    std::vector<double> ladder;  // ladder[j] = integral of h over [eps_j, d]
    double running = 0.0, panelErr = 0.0;
    bool ok = true;
    double upper = d;
    for (int j = 0; j <= cfg.excisionLevels; ++j) {
      double eps = cfg.epsilon0 / pow2d(j);
      auto piece = detail::integrate_panel(h, eps, upper, cfg.panelTol * 0.1, budget);
      running += piece.value;
      panelErr += piece.error;
      ok = ok && piece.converged;
      ladder.push_back(running);
      upper = eps;
    }
    double correction = 0.0;
    double limit = detail::richardson_limit(ladder, &correction);
    detail::PanelOut out;
    out.value = limit;
    out.error = panelErr + correction;
    out.converged = ok;
    char label[32];
    std::snprintf(label, sizeof label, "pole[%zu]", i);
    addRegion(label, out);
  }

  // Tail.
  if (theta == 0.0) {
    auto g = [&](double u) { return f(1.0 / u) / (u * u); };
    addRegion("tail", detail::integrate_panel(g, 0.0, 1.0 / T0, cfg.panelTol, budget));
  } else {
    bool split = ig.numeratorConstant != 0.0 && static_cast<bool>(ig.denominator);
    if (split) {
      auto g = [&](double u) { return ig.numeratorConstant / ig.denominator(1.0 / u) / (u * u); };
      addRegion("tail_mean", detail::integrate_panel(g, 0.0, 1.0 / T0, cfg.panelTol, budget));
    }
    auto osc = [&](double x) {
      double v = f(x);
      if (split) v -= ig.numeratorConstant / ig.denominator(x);
      return v;
    };
    if (cfg.tailBlocks < 1) throw DomainError("pv_integrate: tailBlocks must be positive");
    double blockLen = kPi / theta;
    std::vector<double> partials;
    partials.reserve(static_cast<std::size_t>(cfg.tailBlocks));
    double running = 0.0, panelErr = 0.0;
    bool ok = true;
    int negligible = 0;
    for (int j = 0; j < cfg.tailBlocks; ++j) {
      double a = T0 + j * blockLen, b = T0 + (j + 1) * blockLen;
      auto piece = detail::integrate_panel(osc, a, b, cfg.panelTol, budget);
      running += piece.value;
      panelErr += piece.error;
      ok = ok && piece.converged;
      partials.push_back(running);
      if (budget.exhausted) {
        ok = false;
        break;
      }
      // Fast-decaying integrands go quiet long before the block budget is
      // spent; three negligible blocks in a row end the sweep.
      negligible = std::abs(piece.value) < 1e-16 * (1.0 + std::abs(running)) ? negligible + 1 : 0;
      if (negligible >= 3) break;
    }
    int depth = std::min(cfg.accelerationDepth, static_cast<int>(partials.size()) - 1);
    AccelResult acc = detail::tail_limit(partials, depth, T0, blockLen);
    detail::PanelOut out;
    out.value = acc.value;
    out.error = panelErr + acc.lastCorrection;
    out.converged = ok;
    addRegion("tail_osc", out);
  }

  if (budget.exhausted) res.converged = false;
  res.evals = budget.used;
  double scale = 0.0;
  for (const auto& r : res.regions) scale += std::abs(r.value);
  res.errorEstimate = 2.0 * res.errorEstimate + 1e-15 * scale + 5e-16 * std::abs(res.value);
  // The panel tolerance is per region and relative; the whole-result request
  // scales it by the accumulated magnitude with headroom for the excision and
  // tail extrapolation corrections.  converged never claims more than that.
  if (res.errorEstimate > 100.0 * cfg.panelTol * std::max(1.0, scale)) res.converged = false;
  return res;
}

}  // namespace pv
