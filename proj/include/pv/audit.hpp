#pragma once

// Empirical sign audit.  Every closed form ships in a printed and a corrected
// variant; neither is trusted a priori.  The audit evaluates both variants
// under both orientations sigma = +-1 on a small witness grid, compares each
// hypothesis against the quadrature oracle, and records the unique survivor.
// Audited-mode evaluation is gated on a consistent audit: if no hypothesis
// wins every witness with a clear margin, audited access throws rather than
// guessing.  Sigma is never hardcoded anywhere in this header.

#include <array>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "pv/errors.hpp"
#include "pv/kernels.hpp"
#include "pv/quadrature.hpp"
#include "pv/theorems.hpp"

namespace pv {

struct SignAuditEntry {
  std::string formulaId;
  int sigma = 1;
  int witnesses = 0;
  bool consistent = false;
  std::string correction = "none";  // "none", "argument_order", "pair_prefactor"
};

namespace detail {

struct AuditWitness {
  std::function<double(FormVariant)> closed;
  std::function<PVIntegrand()> integrand;
};

struct AuditCandidate {
  FormVariant variant;
  int sigma;
};

// Hypothesis order doubles as the tie-break: a sign flip of the printed form
// is reported before an equal-valued structural fix, and +1 before -1.
inline const std::array<AuditCandidate, 4>& audit_candidates() {
  static const std::array<AuditCandidate, 4> c = {{
      {FormVariant::printed, +1},
      {FormVariant::printed, -1},
      {FormVariant::corrected, +1},
      {FormVariant::corrected, -1},
  }};
  return c;
}

inline std::string correction_label(const std::string& formulaId, FormVariant v) {
  if (v == FormVariant::printed) return "none";
  return formulaId == "eq22" ? "argument_order" : "pair_prefactor";
}

// An argument-order fix of an odd function is value-identical to a sign
// flip, so the data cannot separate the two accounts.  Where the catalog
// declares such a fix, the tie resolves toward it; a bare sign flip of the
// printed form stays a sign flip.
inline bool prefers_structural_fix(const std::string& formulaId) {
  return formulaId == "eq22";
}

inline std::vector<AuditWitness> kernel_witnesses(KernelKind kind) {
  std::vector<std::tuple<double, int, int>> grid;  // theta, n, m
  const double thetas[] = {0.5, 1.0, 1.7};
  for (double theta : thetas) {
    switch (kind) {
      case KernelKind::cos_odd:
      case KernelKind::xsin_odd:
        for (int n : {0, 1, 2}) grid.emplace_back(theta, n, 1);
        break;
      case KernelKind::sin_even:
      case KernelKind::cos_even:
        for (int n : {1, 2}) grid.emplace_back(theta, n, 1);
        break;
      case KernelKind::sin_mixed:
      case KernelKind::cos_mixed:
        grid.emplace_back(theta, 0, 1);
        grid.emplace_back(theta, 1, 1);
        grid.emplace_back(theta, 0, 2);
        break;
    }
  }
  std::vector<AuditWitness> ws;
  for (auto [theta, n, m] : grid) {
    FamilyOrder o{n, m};
    ws.push_back(AuditWitness{
        [kind, theta, o](FormVariant v) { return kernel_closed(kind, theta, o, v); },
        [kind, theta, o] { return kernel_integrand(kind, theta, o); }});
  }
  return ws;
}

inline std::vector<AuditWitness> theorem_witnesses(int thm) {
  struct Shape {
    const char* fname;
    double fparam;
    double alpha, beta, theta;
    int n, m;
  };
  std::vector<Shape> shapes;
  switch (thm) {
    case 1:
    case 2:
      shapes = {{"power", 1.0, 0.0, 1.0, 0.5, 0, 1},
                {"power", 1.0, 0.0, 1.0, 1.0, 1, 1},
                {"power", 1.0, 0.0, 1.0, 1.7, 2, 1},
                {"exp", 0.0, 0.2, 0.6, 0.8, 0, 1},
                {"exp", 0.0, 0.2, 0.6, 1.1, 1, 1},
                {"power", 3.0, 0.0, 0.7, 1.4, 1, 1}};
      break;
    case 3:
    case 4:
      shapes = {{"power", 1.0, 0.0, 1.0, 0.5, 1, 1},
                {"power", 1.0, 0.0, 1.0, 1.0, 2, 1},
                {"power", 1.0, 0.0, 1.0, 1.7, 1, 1},
                {"exp", 0.0, 0.2, 0.6, 0.8, 1, 1},
                {"exp", 0.0, 0.2, 0.6, 1.1, 2, 1},
                {"power", 3.0, 0.0, 0.7, 1.4, 1, 1}};
      break;
    case 5:
    case 6:
      shapes = {{"power", 1.0, 0.0, 1.0, 0.5, 0, 1},
                {"power", 1.0, 0.0, 1.0, 1.0, 1, 1},
                {"power", 1.0, 0.0, 1.0, 1.7, 0, 2},
                {"exp", 0.0, 0.2, 0.6, 0.8, 0, 1},
                {"exp", 0.0, 0.2, 0.6, 1.1, 1, 1},
                {"power", 2.0, 0.0, 0.7, 1.3, 0, 2}};
      break;
  }
  std::vector<AuditWitness> ws;
  for (const Shape& s : shapes) {
    AnalyticFunction::Params params;
    if (std::string(s.fname) == "power") params["m"] = s.fparam;
    AnalyticFunction f = AnalyticFunction::make(s.fname, params, s.alpha);
    TheoremParams p{thm, f, CombinationParams{s.alpha, s.beta, s.theta},
                    FamilyOrder{s.n, s.m}};
    ws.push_back(AuditWitness{
        [p](FormVariant v) { return theorem_closed_form(p, v).value; },
        [p] { return integrand_for(p); }});
  }
  return ws;
}

inline SignAuditEntry run_audit(const std::string& id,
                                const std::vector<AuditWitness>& witnesses) {
  SignAuditEntry entry;
  entry.formulaId = id;
  const auto& cands = audit_candidates();
  int winnerClass = -1;
  bool ok = true;
  int counted = 0;

  for (const AuditWitness& w : witnesses) {
    PVResult res;
    try {
      res = pv_integrate(w.integrand());
    } catch (const std::exception&) {
      ok = false;
      break;
    }
    double err = std::max(res.errorEstimate, 1e-12);

    std::array<double, 4> vals{};
    double printedVal = w.closed(FormVariant::printed);
    double correctedVal = w.closed(FormVariant::corrected);
    for (std::size_t i = 0; i < cands.size(); ++i)
      vals[i] = cands[i].sigma *
                (cands[i].variant == FormVariant::printed ? printedVal : correctedVal);

    // a witness where all hypotheses collapse carries no evidence
    double spread = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i)
      for (std::size_t j = i + 1; j < vals.size(); ++j)
        spread = std::max(spread, std::abs(vals[i] - vals[j]));
    if (spread < 1e-4) continue;

    std::size_t minIdx = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
      if (std::abs(vals[i] - res.value) < std::abs(vals[minIdx] - res.value)) minIdx = i;
    double eq = 1e-8 * (1.0 + std::abs(vals[minIdx]));
    std::array<std::size_t, 4> pref = {0, 1, 2, 3};
    if (prefers_structural_fix(id)) pref = {0, 2, 1, 3};
    std::size_t win = vals.size();
    for (std::size_t i : pref)
      if (std::abs(vals[i] - vals[minIdx]) <= eq) {
        win = i;
        break;
      }

    // the winner must match the oracle and every distinct hypothesis must
    // miss it by at least ten times the oracle's own error
    if (std::abs(vals[minIdx] - res.value) >
        std::max(1e-6 * (1.0 + std::abs(res.value)), 10.0 * err))
      ok = false;
    for (std::size_t j = 0; j < vals.size(); ++j)
      if (std::abs(vals[j] - vals[minIdx]) > eq &&
          std::abs(vals[j] - res.value) < 10.0 * err)
        ok = false;

    // audited mode hands out the corrected variant, so the corrected value
    // must sit in the winning equivalence class
    if (std::abs(correctedVal - vals[minIdx]) > eq) ok = false;

    if (winnerClass < 0)
      winnerClass = static_cast<int>(win);
    else if (winnerClass != static_cast<int>(win))
      ok = false;
    ++counted;
  }

  entry.witnesses = counted;
  if (winnerClass < 0 || counted < 2) ok = false;
  entry.consistent = ok;
  if (winnerClass >= 0) {
    entry.sigma = cands[static_cast<std::size_t>(winnerClass)].sigma;
    entry.correction =
        correction_label(id, cands[static_cast<std::size_t>(winnerClass)].variant);
  }
  return entry;
}

}  // namespace detail

inline const std::vector<std::string>& audit_catalog_ids() {
  static const std::vector<std::string> ids = {"eq19", "eq20", "eq21", "eq22",
                                               "eq23", "eq25", "thm1", "thm2",
                                               "thm3", "thm4", "thm5", "thm6"};
  return ids;
}

// One audit per process, formulas in parallel.  The table is immutable after
// construction, so lookups need no lock.
inline const std::map<std::string, SignAuditEntry>& global_audit() {
  static std::map<std::string, SignAuditEntry> table;
  static std::once_flag flag;
  std::call_once(flag, [] {
    const std::array<KernelKind, 6> kinds = {
        KernelKind::cos_odd,  KernelKind::xsin_odd,  KernelKind::sin_even,
        KernelKind::cos_even, KernelKind::sin_mixed, KernelKind::cos_mixed};
    std::vector<std::pair<std::string, std::future<SignAuditEntry>>> jobs;
    for (KernelKind k : kinds) {
      std::string id = kernel_formula_id(k);
      jobs.emplace_back(id, std::async(std::launch::async, [k, id] {
                          return detail::run_audit(id, detail::kernel_witnesses(k));
                        }));
    }
    for (int thm = 1; thm <= 6; ++thm) {
      std::string id = theorem_formula_id(thm);
      jobs.emplace_back(id, std::async(std::launch::async, [thm, id] {
                          return detail::run_audit(id, detail::theorem_witnesses(thm));
                        }));
    }
    for (auto& [id, fut] : jobs) table[id] = fut.get();
  });
  return table;
}

inline std::vector<SignAuditEntry> audit_entries() {
  const auto& table = global_audit();
  std::vector<SignAuditEntry> out;
  for (const std::string& id : audit_catalog_ids()) out.push_back(table.at(id));
  return out;
}

inline const SignAuditEntry& require_consistent(const std::string& formulaId) {
  const auto& table = global_audit();
  auto it = table.find(formulaId);
  if (it == table.end())
    throw UnauditedError("no audit entry for " + formulaId);
  if (!it->second.consistent)
    throw UnauditedError(formulaId + ": audit inconsistent, audited mode unavailable");
  return it->second;
}

namespace detail {

inline ClosedFormValue as_audited(ClosedFormValue c, int sigma) {
  c.mode = FormulaMode::audited;
  c.signFactor = sigma;
  return c;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Mode-aware evaluation.  printed returns the formula exactly as printed;
// audited returns the corrected structural form, gated on the audit of the
// governing formula, with the empirical sigma recorded.

inline ClosedFormValue kernel_value(KernelKind kind, double theta, FamilyOrder o,
                                    FormulaMode mode) {
  if (mode == FormulaMode::printed) {
    ClosedFormValue c;
    c.value = kernel_closed(kind, theta, o, FormVariant::printed);
    return c;
  }
  const SignAuditEntry& e = require_consistent(kernel_formula_id(kind));
  ClosedFormValue c;
  c.value = kernel_closed(kind, theta, o, FormVariant::corrected);
  return detail::as_audited(c, e.sigma);
}

inline ClosedFormValue theorem_value(const TheoremParams& p, FormulaMode mode) {
  if (mode == FormulaMode::printed) return theorem_closed_form(p, FormVariant::printed);
  const SignAuditEntry& e = require_consistent(theorem_formula_id(p.theorem));
  return detail::as_audited(theorem_closed_form(p, FormVariant::corrected), e.sigma);
}

inline ClosedFormValue table1_value(int row, const SeriesFunction& g, double theta,
                                    FamilyOrder o) {
  const SignAuditEntry& e = require_consistent(theorem_formula_id(table1_theorem(row)));
  return detail::as_audited(table1_closed_form(row, g, theta, o, FormVariant::corrected),
                            e.sigma);
}

inline ClosedFormValue table2_value(int row, const AnalyticFunction& f,
                                    const CombinationParams& comb) {
  const SignAuditEntry& e = require_consistent(theorem_formula_id(table2_spec(row).theorem));
  return detail::as_audited(table2_closed_form(row, f, comb, FormVariant::corrected),
                            e.sigma);
}

inline ClosedFormValue generator_value(int id, const GeneratorParams& gp, FormulaMode mode) {
  if (mode == FormulaMode::printed)
    return generator_closed_form(id, gp, FormVariant::printed);
  const SignAuditEntry& e = require_consistent(theorem_formula_id(generator_theorem(id)));
  return detail::as_audited(generator_closed_form(id, gp, FormVariant::corrected), e.sigma);
}

inline ClosedFormValue example_value(int id, const ExampleParams& ep, FormulaMode mode) {
  if (mode == FormulaMode::printed) return example_closed_form(id, ep, FormVariant::printed);
  const SignAuditEntry& e = require_consistent(theorem_formula_id(example_theorem(id)));
  return detail::as_audited(example_closed_form(id, ep, FormVariant::corrected), e.sigma);
}

// single-pole remark form; structurally an even-family instance, so its
// audited mode rides on that family's audit
inline ClosedFormValue remark1_value(const AnalyticFunction& f, double beta, double phi) {
  const SignAuditEntry& e = require_consistent("thm3");
  return detail::as_audited(remark1_closed_form(f, beta, phi), e.sigma);
}

}  // namespace pv
