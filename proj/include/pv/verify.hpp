#pragma once

// Cross-checking layer. Every closed form is compared against the raw
// principal-value quadrature oracle, and where the source has a usable
// coefficient expansion also against a term-summation oracle that pushes
// those coefficients through the audited kernels at shifted frequencies.
// The two oracles share no code path with the closed forms or each other
// beyond the kernel formulas themselves.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pv/audit.hpp"

namespace pv {

// shortest round-trip decimal form; locale-independent
inline std::string num_str(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// fixed 17 significant digits for printed output and reports
inline std::string num17(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline KernelKind kernel_for_theorem(int thm) {
  switch (thm) {
    case 1: return KernelKind::cos_odd;
    case 2: return KernelKind::xsin_odd;
    case 3: return KernelKind::sin_even;
    case 4: return KernelKind::cos_even;
    case 5: return KernelKind::sin_mixed;
    case 6: return KernelKind::cos_mixed;
  }
  throw DomainError("theorem id must be 1..6");
}

inline KernelKind kernel_kind_from_name(const std::string& name) {
  for (KernelKind k : {KernelKind::cos_odd, KernelKind::xsin_odd, KernelKind::sin_even,
                       KernelKind::cos_even, KernelKind::sin_mixed, KernelKind::cos_mixed})
    if (name == kernel_name(k)) return k;
  throw UnsupportedFunctionError("unknown kernel kind: " + name);
}

namespace detail {

inline bool sin_type(KernelKind k) {
  return k == KernelKind::xsin_odd || k == KernelKind::sin_even || k == KernelKind::sin_mixed;
}

// 2 sum_k t_k K(k theta) with the audited kernel K; the k = 0 term is kept
// for cosine kinds (it evaluates to zero) and dropped for sine kinds, whose
// kernels vanish at frequency zero.
inline double harmonic_kernel_sum(const std::vector<double>& t, KernelKind kind, double theta,
                                  FamilyOrder o) {
  double acc = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k == 0 && sin_type(kind)) continue;
    if (t[k] == 0.0) continue;
    acc += t[k] * kernel_value(kind, static_cast<double>(k) * theta, o,
                               FormulaMode::audited)
                      .value;
  }
  return 2.0 * acc;
}

}  // namespace detail

// Term-summation oracle: expand the source about alpha, weight by beta^k,
// and sum the audited kernel values at the shifted frequencies k theta.
// Parity sources zero out alternate coefficients, and a monomial centred at
// the origin opens with a run of exact zeros, so truncation waits for two
// consecutive negligible terms after the first significant one.
inline double series_oracle(const TheoremParams& p, int K = 200) {
  if (validate_theorem_params(p) != RangeStatus::interior)
    throw DomainError("term-summation oracle needs beta strictly inside the disc");
  std::vector<double> c = p.f.taylor_reference(K);
  std::vector<double> t;
  t.reserve(c.size());
  double bp = 1.0;
  int stop = -1, below = 0;
  bool seen = false;
  for (int k = 0; k <= K; ++k) {
    t.push_back(c[static_cast<std::size_t>(k)] * bp);
    bp *= p.comb.beta;
    if (std::abs(t.back()) < 1e-15) {
      if (seen && ++below >= 2) {
        stop = k;
        break;
      }
    } else {
      seen = true;
      below = 0;
    }
  }
  if (stop < 0)
    throw ConvergenceError("term-summation oracle: threshold 1e-15 not reached by K=200");
  t.resize(static_cast<std::size_t>(stop) + 1);
  return detail::harmonic_kernel_sum(t, kernel_for_theorem(p.theorem), p.comb.theta, p.order);
}

// ---------------------------------------------------------------------------
// suite descriptors

struct CaseSpec {
  std::string kind;  // theorem | kernel | table1 | table2 | generator | example
  int id = 0;        // theorem 1..6, table row, generated-family id, worked-case id
  KernelKind kernel = KernelKind::cos_odd;
  std::string fname = "exp";
  AnalyticFunction::Params fparams;
  double alpha = 0.0;
  double beta = 1.0;
  double theta = 1.0;
  int n = 0;
  int m = 1;
  double b = 1.0;  // worked case 2 shape parameter
};

struct SuiteSpec {
  std::string name;
  std::vector<CaseSpec> cases;
  FormulaMode mode = FormulaMode::audited;
  double tolAbs = -1.0;  // < 0: per-kind defaults
  double tolRel = -1.0;
};

struct VerifyConfig {
  double tolAbs = -1.0;  // < 0: suite value, then per-kind defaults
  double tolRel = -1.0;
  QuadConfig quad{};
  int jobs = 0;  // 0: PVMASTER_JOBS, then hardware concurrency
};

struct VerificationRecord {
  std::string caseId;
  std::string kind;
  std::string formulaId;
  std::string paramsText;
  std::string integrandText;
  std::string closedText;
  double closedPrinted = 0.0;
  std::optional<double> closedAudited;
  int sigma = 0;
  PVResult oracleRaw;
  std::optional<double> oracleSeries;
  double absDiff = 0.0;
  double relDiff = 0.0;
  double tolerance = 0.0;
  std::string status;  // pass | fail | unaudited | boundary
  std::string note;
};

struct Report {
  std::string suiteName;
  FormulaMode mode = FormulaMode::audited;
  std::vector<SignAuditEntry> audit;
  std::vector<VerificationRecord> cases;
  int pass = 0, fail = 0, unaudited = 0, boundary = 0;
};

// ---------------------------------------------------------------------------
// rendering

namespace detail {

inline std::string odd_product_text(int n) {
  std::string s;
  for (int k = 0; k <= n; ++k) {
    int a = 2 * k + 1;
    s += "(" + std::to_string(a * a) + "-x^2)";
  }
  return s;
}

inline std::string even_product_text(int m) {
  std::string s;
  for (int k = 1; k <= m; ++k) {
    int a = 2 * k;
    s += "(" + std::to_string(a * a) + "-x^2)";
  }
  return s;
}

inline std::string f_call(const std::string& fname, const AnalyticFunction::Params& fp,
                          const std::string& z) {
  if (fname == "power") {
    auto it = fp.find("m");
    std::string m = it == fp.end() ? "m" : num_str(it->second);
    if (m == "1") return "(" + z + ")";
    return "(" + z + ")^" + m;
  }
  if (fname == "exp") return "exp(" + z + ")";
  if (fname == "sinh") return "sinh(" + z + ")";
  if (fname == "cos_exp") return "cos(exp(" + z + "))";
  if (fname == "exp_exp") return "exp(exp(" + z + "))";
  if (fname == "log1p") return "ln(1+" + z + ")";
  if (fname == "atan_sq") return "atan(" + z + ")^2";
  return "g(" + z + ")";
}

inline std::string f_label(const std::string& fname, const AnalyticFunction::Params& fp) {
  if (fp.empty()) return fname;
  std::string s = fname + "(";
  bool first = true;
  for (const auto& [k, v] : fp) {
    if (!first) s += ", ";
    first = false;
    s += k + ":" + num_str(v);
  }
  return s + ")";
}

inline std::string theorem_integrand_text(int thm, const std::string& fname,
                                          const AnalyticFunction::Params& fp, double alpha,
                                          double beta, double theta, FamilyOrder o) {
  std::string z = num_str(alpha) + " + " + num_str(beta) + " e^(i " + num_str(theta) + " x)";
  std::string fx = f_call(fname, fp, z);
  switch (thm) {
    case 1: return "2 Re " + fx + " / (" + odd_product_text(o.n) + ")";
    case 2: return "2 x Im " + fx + " / (" + odd_product_text(o.n) + ")";
    case 3: return "2 Im " + fx + " / (x " + even_product_text(o.n) + ")";
    case 4: return "2 Re " + fx + " / (" + even_product_text(o.n) + ")";
    case 5:
      return "2 Im " + fx + " / (x " + odd_product_text(o.n) + even_product_text(o.m) + ")";
    case 6:
      return "2 Re " + fx + " / (" + odd_product_text(o.n) + even_product_text(o.m) + ")";
  }
  return "";
}

inline std::string closed_sketch(const std::string& id) {
  static const std::map<std::string, std::string> sketches = {
      {"eq19",
       "(-1)^(n+1) pi/(2^(2n+1)(2n+1)!) sum_k (-1)^k C(2n+1,k) sin((2k-1-2n)t)"},
      {"eq20",
       "sigma pi/(2^(2n+1)(2n+1)!) sum_k (-1)^k C(2n+1,k) (2k-1-2n) cos((2k-1-2n)t)"},
      {"eq21",
       "pi/(2^(2n+1)(2n)!) [C(2n,n) + 2 sum_(k<n) (-1)^(k+n) C(2n,k) cos((2n-2k)t)]"},
      {"eq22", "pi/(2^(2n)(2n)!) sum_(k<n) (-1)^(k+n+1) C(2n,k) (2n-2k) sin((2n-2k)t)"},
      {"eq23", "odd-pole sine sum plus (2m)!-weighted even-pole pair term"},
      {"eq25", "odd-pole cosine sum plus (2m)!-weighted even-pole pair term"},
      {"thm1", "(-1)^(n+1) pi/(2^(2n+1)(2n+1)!) sum_s (-1)^s C(2n+1,s) (psi_s-phi_s)/i"},
      {"thm2", "sigma pi/(2^(2n+1)(2n+1)!) sum_s (-1)^s C(2n+1,s) a_s (psi_s+phi_s-eta)"},
      {"thm3",
       "pi/(2^(2n)(2n)!) [C(2n,n)(H(0)-eta) + sum_s (-1)^(s+n) C(2n,s)(psi_s+phi_s-2eta)]"},
      {"thm4", "pi/(2^(2n)(2n)!) sum_s (-1)^(s+n+1) C(2n,s)(2n-2s) (psi_s-phi_s)/i"},
      {"thm5", "odd-pole binomial sum of H samples minus (2m)!-weighted pair term"},
      {"thm6", "odd-pole binomial sum of H samples minus (2m)!-weighted pair term"},
  };
  auto it = sketches.find(id);
  if (it != sketches.end()) return it->second;
  if (id.rfind("t1r", 0) == 0) return "series-coefficient form of the governing sum";
  if (id.rfind("t2r", 0) == 0) return "unit-circle specialization of the governing sum";
  if (id.rfind("gen", 0) == 0) return "elementary real form of the governing sum";
  if (id == "ex1") return "pi/2 (e - Re exp(exp(e^(i t))))";
  if (id == "ex2") return "pi/24 (3 S(t) - S(3t)), S(y) = sin(b/2 ln(1+y^2)) sinh(b atan y)";
  if (id == "ex3") return "-2x the even-family sum with f = atan^2 on the unit circle";
  return "";
}

// ---------------------------------------------------------------------------
// case construction

struct BuiltCase {
  std::string caseId, kind, formulaId, paramsText, integrandText, closedText;
  std::function<double(FormVariant)> structural;
  std::function<ClosedFormValue()> audited;
  std::function<PVIntegrand()> integrand;
  std::function<std::optional<double>()> series;
  RangeStatus range = RangeStatus::interior;
  bool singleFrequency = false;
};

inline SeriesFunction series_from_case(const CaseSpec& c) {
  AnalyticFunction f = AnalyticFunction::make("series", c.fparams, c.alpha);
  return *f.series();
}

inline BuiltCase build_theorem_case(const CaseSpec& c) {
  if (c.id < 1 || c.id > 6) throw DomainError("theorem id must be 1..6");
  AnalyticFunction f = AnalyticFunction::make(c.fname, c.fparams, c.alpha);
  TheoremParams p{c.id, f, CombinationParams{c.alpha, c.beta, c.theta},
                  FamilyOrder{c.n, c.m}};
  BuiltCase bc;
  bc.range = validate_theorem_params(p);
  bc.formulaId = theorem_formula_id(c.id);
  bc.caseId = bc.formulaId + "[f=" + f_label(c.fname, c.fparams) + ",a=" + num_str(c.alpha) +
              ",b=" + num_str(c.beta) + ",t=" + num_str(c.theta) + ",n=" + std::to_string(c.n) +
              (c.id >= 5 ? ",m=" + std::to_string(c.m) : "") + "]";
  bc.paramsText = "f=" + f_label(c.fname, c.fparams) + ", alpha=" + num_str(c.alpha) +
                  ", beta=" + num_str(c.beta) + ", theta=" + num_str(c.theta) +
                  ", n=" + std::to_string(c.n) +
                  (c.id >= 5 ? ", m=" + std::to_string(c.m) : "");
  bc.integrandText =
      theorem_integrand_text(c.id, c.fname, c.fparams, c.alpha, c.beta, c.theta, p.order);
  bc.closedText = closed_sketch(bc.formulaId);
  bc.structural = [p](FormVariant v) { return theorem_closed_form(p, v).value; };
  bc.audited = [p] { return theorem_value(p, FormulaMode::audited); };
  bc.integrand = [p] { return integrand_for(p); };
  if (bc.range == RangeStatus::interior) {
    bc.series = [p]() -> std::optional<double> { return series_oracle(p); };
  } else {
    bc.series = [] { return std::optional<double>{}; };
  }
  return bc;
}

inline BuiltCase build_kernel_case(const CaseSpec& c) {
  KernelKind kind = c.kernel;
  double theta = c.theta;
  FamilyOrder o{c.n, c.m};
  kernel_closed(kind, theta, o, FormVariant::printed);  // argument validation
  bool mixed = kind == KernelKind::sin_mixed || kind == KernelKind::cos_mixed;
  BuiltCase bc;
  bc.singleFrequency = true;
  bc.formulaId = kernel_formula_id(kind);
  bc.caseId = bc.formulaId + "[t=" + num_str(theta) + ",n=" + std::to_string(c.n) +
              (mixed ? ",m=" + std::to_string(c.m) : "") + "]";
  bc.paramsText = std::string("kind=") + kernel_name(kind) + ", theta=" + num_str(theta) +
                  ", n=" + std::to_string(c.n) + (mixed ? ", m=" + std::to_string(c.m) : "");
  std::string tx = num_str(theta) + " x";
  switch (kind) {
    case KernelKind::cos_odd:
      bc.integrandText = "cos(" + tx + ") / (" + odd_product_text(c.n) + ")";
      break;
    case KernelKind::xsin_odd:
      bc.integrandText = "x sin(" + tx + ") / (" + odd_product_text(c.n) + ")";
      break;
    case KernelKind::sin_even:
      bc.integrandText = "sin(" + tx + ") / (x " + even_product_text(c.n) + ")";
      break;
    case KernelKind::cos_even:
      bc.integrandText = "cos(" + tx + ") / (" + even_product_text(c.n) + ")";
      break;
    case KernelKind::sin_mixed:
      bc.integrandText =
          "sin(" + tx + ") / (x " + odd_product_text(c.n) + even_product_text(c.m) + ")";
      break;
    case KernelKind::cos_mixed:
      bc.integrandText =
          "cos(" + tx + ") / (" + odd_product_text(c.n) + even_product_text(c.m) + ")";
      break;
  }
  bc.closedText = closed_sketch(bc.formulaId);
  bc.structural = [kind, theta, o](FormVariant v) { return kernel_closed(kind, theta, o, v); };
  bc.audited = [kind, theta, o] { return kernel_value(kind, theta, o, FormulaMode::audited); };
  bc.integrand = [kind, theta, o] { return kernel_integrand(kind, theta, o); };
  bc.series = [] { return std::optional<double>{}; };
  return bc;
}

inline BuiltCase build_table1_case(const CaseSpec& c) {
  SeriesFunction g = series_from_case(c);
  double theta = c.theta;
  FamilyOrder o{c.n, c.m};
  int row = c.id;
  validate_table1(row, g, theta, o);
  BuiltCase bc;
  bc.formulaId = table1_formula_id(row);
  std::string mlist;
  for (std::size_t k = 0; k < g.M.size(); ++k)
    mlist += (k ? ":" : "") + num_str(g.M[k]);
  bc.caseId = bc.formulaId + "[M=" + mlist + ",t=" + num_str(theta) +
              ",n=" + std::to_string(c.n) + "]";
  bc.paramsText = "M=[" + mlist + "], alpha=" + num_str(g.alpha) + ", theta=" + num_str(theta) +
                  ", n=" + std::to_string(c.n);
  std::string kt = "k " + num_str(theta) + " x";
  switch (row) {
    case 1: bc.integrandText = "2 sum_k M_k cos(" + kt + ") / (" + odd_product_text(c.n) + ")"; break;
    case 2: bc.integrandText = "2 x sum_k M_k sin(" + kt + ") / (" + odd_product_text(c.n) + ")"; break;
    case 3: bc.integrandText = "2 sum_k M_k sin(" + kt + ") / (x " + even_product_text(c.n) + ")"; break;
    default:
      bc.integrandText = "2 sum_k M_k cos(" + kt + ") / (" + odd_product_text(c.n) +
                         even_product_text(c.m) + ")";
      break;
  }
  bc.closedText = closed_sketch(bc.formulaId);
  bc.structural = [row, g, theta, o](FormVariant v) {
    return table1_closed_form(row, g, theta, o, v).value;
  };
  bc.audited = [row, g, theta, o] { return table1_value(row, g, theta, o); };
  bc.integrand = [row, g, theta, o] { return table1_integrand(row, g, theta, o); };
  KernelKind kind = kernel_for_theorem(table1_theorem(row));
  std::vector<double> t = g.M;
  bc.series = [t, kind, theta, o]() -> std::optional<double> {
    return harmonic_kernel_sum(t, kind, theta, o);
  };
  return bc;
}

inline BuiltCase build_table2_case(const CaseSpec& c) {
  int row = c.id;
  AnalyticFunction f = AnalyticFunction::make(c.fname, c.fparams, c.alpha);
  CombinationParams comb{c.alpha, c.beta, c.theta};
  BuiltCase bc;
  bc.range = table2_range(row, f, comb);
  TheoremParams p = table2_params(row, f, comb);
  bc.formulaId = table2_formula_id(row);
  bc.caseId = bc.formulaId + "[f=" + f_label(c.fname, c.fparams) + ",a=" + num_str(c.alpha) +
              ",b=" + num_str(c.beta) + ",t=" + num_str(c.theta) + "]";
  bc.paramsText = "f=" + f_label(c.fname, c.fparams) + ", alpha=" + num_str(c.alpha) +
                  ", beta=" + num_str(c.beta) + ", theta=" + num_str(c.theta);
  bc.integrandText =
      theorem_integrand_text(p.theorem, c.fname, c.fparams, c.alpha, c.beta, c.theta, p.order);
  bc.closedText = closed_sketch(bc.formulaId);
  bc.structural = [row, f, comb](FormVariant v) {
    return table2_closed_form(row, f, comb, v).value;
  };
  bc.audited = [row, f, comb] { return table2_value(row, f, comb); };
  bc.integrand = [row, f, comb] { return table2_integrand(row, f, comb); };
  if (bc.range == RangeStatus::interior) {
    bc.series = [p]() -> std::optional<double> { return series_oracle(p); };
  } else {
    bc.series = [] { return std::optional<double>{}; };
  }
  return bc;
}

inline BuiltCase build_generator_case(const CaseSpec& c) {
  int id = c.id;
  GeneratorParams gp;
  gp.powerExponent = (id == 61 || id == 63) ? c.m : 1;
  gp.comb = CombinationParams{c.alpha, c.beta, c.theta};
  gp.order = FamilyOrder{c.n, 1};
  BuiltCase bc;
  bc.range = generator_range(id, gp);
  bc.formulaId = generator_formula_id(id);
  bc.closedText = closed_sketch(bc.formulaId);
  if (id == 61 || id == 63) {
    bc.singleFrequency = true;
    bc.caseId = bc.formulaId + "[p=" + std::to_string(gp.powerExponent) +
                ",t=" + num_str(c.theta) + ",n=" + std::to_string(c.n) + "]";
    bc.paramsText = "p=" + std::to_string(gp.powerExponent) + ", theta=" + num_str(c.theta) +
                    ", n=" + std::to_string(c.n);
    std::string w = num_str(gp.powerExponent * c.theta) + " x";
    bc.integrandText = id == 61
                           ? "2 cos(" + w + ") / (" + odd_product_text(c.n) + ")"
                           : "2 sin(" + w + ") / (x " + even_product_text(c.n) + ")";
  } else {
    bc.caseId = bc.formulaId + "[a=" + num_str(c.alpha) + ",b=" + num_str(c.beta) +
                ",t=" + num_str(c.theta) + ",n=" + std::to_string(c.n) + "]";
    bc.paramsText = "alpha=" + num_str(c.alpha) + ", beta=" + num_str(c.beta) +
                    ", theta=" + num_str(c.theta) + ", n=" + std::to_string(c.n);
    static const std::map<int, const char*> sources = {{64, "exp"},     {66, "exp"},
                                                       {68, "sinh"},    {70, "sinh"},
                                                       {72, "cos_exp"}, {74, "log1p"},
                                                       {76, "log1p"}};
    std::string fname = sources.at(id);
    double a = id == 76 ? 0.0 : c.alpha, b = id == 76 ? 1.0 : c.beta;
    bc.integrandText = theorem_integrand_text(generator_theorem(id), fname, {}, a, b, c.theta,
                                              gp.order);
    if (bc.range == RangeStatus::interior) {
      AnalyticFunction f = AnalyticFunction::make(fname, {}, a);
      TheoremParams p{generator_theorem(id), f, CombinationParams{a, b, c.theta}, gp.order};
      bc.series = [p]() -> std::optional<double> { return series_oracle(p); };
    }
  }
  if (!bc.series) bc.series = [] { return std::optional<double>{}; };
  bc.structural = [id, gp](FormVariant v) { return generator_closed_form(id, gp, v).value; };
  bc.audited = [id, gp] { return generator_value(id, gp, FormulaMode::audited); };
  bc.integrand = [id, gp] { return generator_integrand(id, gp); };
  return bc;
}

inline BuiltCase build_example_case(const CaseSpec& c) {
  int id = c.id;
  ExampleParams ep;
  ep.theta = c.theta;
  ep.b = c.b;
  BuiltCase bc;
  bc.range = example_range(id, ep);
  bc.formulaId = example_formula_id(id);
  bc.caseId = bc.formulaId + "[t=" + num_str(c.theta) +
              (id == 2 ? ",b=" + num_str(c.b) : "") + "]";
  bc.paramsText = "theta=" + num_str(c.theta) + (id == 2 ? ", b=" + num_str(c.b) : "");
  std::string t = num_str(c.theta);
  if (id == 1) {
    bc.integrandText = "x Im exp(exp(e^(i " + t + " x))) / (1-x^2)";
  } else if (id == 2) {
    bc.integrandText = "2 cosh(" + num_str(c.b) + " atan(" + t + " x)) cos(" +
                       num_str(0.5 * c.b) + " ln(1+" + num_str(c.theta * c.theta) +
                       " x^2)) / ((1-x^2)(9-x^2))";
  } else {
    bc.integrandText = "ln^2|tan(" + t + " x/2 - pi/4)| / ((4-x^2)(16-x^2))";
  }
  bc.closedText = closed_sketch(bc.formulaId);
  bc.structural = [id, ep](FormVariant v) { return example_closed_form(id, ep, v).value; };
  bc.audited = [id, ep] { return example_value(id, ep, FormulaMode::audited); };
  bc.integrand = [id, ep] { return example_integrand(id, ep); };
  if (id == 1) {
    AnalyticFunction f = AnalyticFunction::make("exp_exp", {}, 0.0);
    TheoremParams p{2, f, CombinationParams{0.0, 1.0, ep.theta}, FamilyOrder{0, 1}};
    bc.series = [p]() -> std::optional<double> { return 0.5 * series_oracle(p); };
  } else {
    // case 2 has no finite coefficient description; case 3 sits on the rim
    // of its source's disc, outside the term-summation oracle's premise
    bc.series = [] { return std::optional<double>{}; };
  }
  return bc;
}

inline BuiltCase build_case(const CaseSpec& c) {
  BuiltCase bc;
  if (c.kind == "theorem") bc = build_theorem_case(c);
  else if (c.kind == "kernel") bc = build_kernel_case(c);
  else if (c.kind == "table1") bc = build_table1_case(c);
  else if (c.kind == "table2") bc = build_table2_case(c);
  else if (c.kind == "generator") bc = build_generator_case(c);
  else if (c.kind == "example") bc = build_example_case(c);
  else throw DomainError("unknown case kind: " + c.kind);
  bc.kind = c.kind;
  return bc;
}

inline VerificationRecord run_one(const BuiltCase& bc, FormulaMode mode, double tolAbs,
                                  double tolRel, const QuadConfig& quad) {
  VerificationRecord r;
  r.caseId = bc.caseId;
  r.kind = bc.kind;
  r.formulaId = bc.formulaId;
  r.paramsText = bc.paramsText;
  r.integrandText = bc.integrandText;
  r.closedText = bc.closedText;
  r.closedPrinted = bc.structural(FormVariant::printed);
  bool unaudited = false;
  if (mode == FormulaMode::audited) {
    try {
      ClosedFormValue a = bc.audited();
      r.closedAudited = a.value;
      r.sigma = a.signFactor;
    } catch (const UnauditedError&) {
      unaudited = true;
    }
  }
  r.oracleRaw = pv_integrate(bc.integrand(), quad);
  try {
    r.oracleSeries = bc.series();
  } catch (const ConvergenceError& e) {
    r.note = e.what();
  }
  double d = std::abs(r.closedPrinted - r.oracleRaw.value);
  if (r.closedAudited) d = std::min(d, std::abs(*r.closedAudited - r.oracleRaw.value));
  r.absDiff = d;
  r.relDiff = d / std::max(std::abs(r.oracleRaw.value), 1e-300);
  double tol = std::max({tolAbs, tolRel * std::abs(r.oracleRaw.value),
                         3.0 * r.oracleRaw.errorEstimate});
  if (bc.range == RangeStatus::boundary) tol = std::max(tol, 1e-3);
  r.tolerance = tol;
  if (unaudited)
    r.status = "unaudited";
  else if (d <= tol)
    r.status = bc.range == RangeStatus::boundary ? "boundary" : "pass";
  else
    r.status = "fail";
  if (!r.oracleRaw.converged) {
    if (!r.note.empty()) r.note += "; ";
    r.note += "oracle did not converge";
  }
  return r;
}

inline int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PVMASTER_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace detail

// Closed-form value alone, no oracles; bit-identical with the value a
// verification record stores for the same case and mode.
inline double closed_value(const CaseSpec& c, FormulaMode mode = FormulaMode::audited) {
  detail::BuiltCase bc = detail::build_case(c);
  if (mode == FormulaMode::printed) return bc.structural(FormVariant::printed);
  return bc.audited().value;
}

// One case end to end; pass rows re-verify identically when re-run alone.
inline VerificationRecord verify_case(const CaseSpec& c, const VerifyConfig& cfg = {},
                                      FormulaMode mode = FormulaMode::audited) {
  detail::BuiltCase bc = detail::build_case(c);
  double tolAbs = cfg.tolAbs >= 0.0 ? cfg.tolAbs : (bc.singleFrequency ? 1e-8 : 1e-6);
  double tolRel = cfg.tolRel >= 0.0 ? cfg.tolRel : (bc.singleFrequency ? 0.0 : 1e-4);
  return detail::run_one(bc, mode, tolAbs, tolRel, cfg.quad);
}

// Validates every case up front, computes the audit table once, then runs the
// cases on a worker pool. Record order is by caseId, independent of timing.
inline Report run_suite(const SuiteSpec& spec, const VerifyConfig& cfg = {}) {
  std::vector<detail::BuiltCase> built;
  built.reserve(spec.cases.size());
  std::string problems;
  for (std::size_t i = 0; i < spec.cases.size(); ++i) {
    try {
      built.push_back(detail::build_case(spec.cases[i]));
    } catch (const std::exception& e) {
      problems += "case " + std::to_string(i) + " (" + spec.cases[i].kind + " " +
                  std::to_string(spec.cases[i].id) + "): " + e.what() + "\n";
    }
  }
  if (!problems.empty())
    throw SuiteValidationError("suite validation failed:\n" + problems);

  Report rep;
  rep.suiteName = spec.name;
  rep.mode = spec.mode;
  rep.audit = audit_entries();

  std::vector<VerificationRecord> recs(built.size());
  if (!built.empty()) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= built.size()) return;
        double tolAbs = cfg.tolAbs >= 0.0   ? cfg.tolAbs
                        : spec.tolAbs >= 0.0 ? spec.tolAbs
                        : built[i].singleFrequency ? 1e-8 : 1e-6;
        double tolRel = cfg.tolRel >= 0.0   ? cfg.tolRel
                        : spec.tolRel >= 0.0 ? spec.tolRel
                        : built[i].singleFrequency ? 0.0 : 1e-4;
        try {
          recs[i] = detail::run_one(built[i], spec.mode, tolAbs, tolRel, cfg.quad);
        } catch (const std::exception& e) {
          // a throw escaping a pool thread would abort the process;
          // surface it as a failed record instead
          recs[i].caseId = built[i].caseId;
          recs[i].kind = built[i].kind;
          recs[i].formulaId = built[i].formulaId;
          recs[i].paramsText = built[i].paramsText;
          recs[i].integrandText = built[i].integrandText;
          recs[i].closedText = built[i].closedText;
          recs[i].status = "fail";
          recs[i].note = e.what();
        }
      }
    };
    int jobs = std::min<int>(detail::resolve_jobs(cfg.jobs), static_cast<int>(built.size()));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }
  std::stable_sort(recs.begin(), recs.end(),
                   [](const VerificationRecord& a, const VerificationRecord& b) {
                     return a.caseId < b.caseId;
                   });
  rep.cases = std::move(recs);
  for (const auto& r : rep.cases) {
    if (r.status == "pass") ++rep.pass;
    else if (r.status == "fail") ++rep.fail;
    else if (r.status == "unaudited") ++rep.unaudited;
    else ++rep.boundary;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// built-in suites

inline SuiteSpec builtin_suite(const std::string& name) {
  SuiteSpec s;
  s.name = name;
  auto thm = [&](int id, const char* fname, double fparam, double alpha, double beta,
                 double theta, int n, int m) {
    CaseSpec c;
    c.kind = "theorem";
    c.id = id;
    c.fname = fname;
    if (std::string(fname) == "power") c.fparams["m"] = fparam;
    c.alpha = alpha;
    c.beta = beta;
    c.theta = theta;
    c.n = n;
    c.m = m;
    s.cases.push_back(c);
  };
  if (name == "smoke") {
    for (int id = 1; id <= 6; ++id) {
      int n = id <= 4 ? 1 : 0;
      thm(id, "power", 1.0, 0.0, 1.0, 1.0, n, 1);
      thm(id, "exp", 0.0, 0.0, 1.0, 1.0, n, 1);
    }
    return s;
  }
  if (name != "full") throw SuiteValidationError("unknown built-in suite: " + name);

  auto kern = [&](KernelKind kind, double theta, int n, int m) {
    CaseSpec c;
    c.kind = "kernel";
    c.kernel = kind;
    c.theta = theta;
    c.n = n;
    c.m = m;
    s.cases.push_back(c);
  };
  kern(KernelKind::cos_odd, 1.0, 0, 1);
  kern(KernelKind::cos_odd, 1.0, 1, 1);
  kern(KernelKind::xsin_odd, 1.0, 0, 1);
  kern(KernelKind::xsin_odd, 1.0, 1, 1);
  kern(KernelKind::sin_even, 1.0, 1, 1);
  kern(KernelKind::sin_even, 1.0, 2, 1);
  kern(KernelKind::cos_even, 1.0, 1, 1);
  kern(KernelKind::cos_even, 1.0, 2, 1);
  kern(KernelKind::sin_mixed, 1.0, 0, 1);
  kern(KernelKind::sin_mixed, 1.0, 1, 1);
  kern(KernelKind::cos_mixed, 1.0, 0, 1);
  kern(KernelKind::cos_mixed, 1.0, 1, 1);

  for (int id = 1; id <= 6; ++id) {
    int n = id <= 4 ? 1 : 0;
    thm(id, "exp", 0.0, 0.0, 1.0, 1.3, n, 1);
    thm(id, "sinh", 0.0, 0.3, 0.5, 0.8, n, 1);
    int n2 = id <= 2 ? 2 : id <= 4 ? 2 : 1;
    thm(id, "power", 1.0, 0.0, 1.0, 0.7, n2, 1);
  }

  auto t1 = [&](int row, int n) {
    CaseSpec c;
    c.kind = "table1";
    c.id = row;
    c.fname = "series";
    c.fparams = {{"M0", 0.3}, {"M1", 1.0}, {"M2", 0.25}};
    c.alpha = 0.0;
    c.theta = 1.1;
    c.n = n;
    c.m = 1;
    s.cases.push_back(c);
  };
  t1(1, 1);
  t1(2, 1);
  t1(3, 1);
  t1(4, 1);

  auto t2 = [&](int row, const char* fname, double beta, double theta) {
    CaseSpec c;
    c.kind = "table2";
    c.id = row;
    c.fname = fname;
    c.alpha = 0.0;
    c.beta = beta;
    c.theta = theta;
    s.cases.push_back(c);
  };
  t2(1, "exp", 1.0, 0.7);
  t2(2, "exp", 1.0, 1.0);
  t2(3, "sinh", 0.6, 0.9);
  t2(4, "exp", 0.5, 1.2);
  t2(5, "exp", 0.5, 0.8);
  t2(6, "sinh", 0.5, 1.1);

  auto gen = [&](int id, double alpha, double beta, double theta, int n, int m) {
    CaseSpec c;
    c.kind = "generator";
    c.id = id;
    c.alpha = alpha;
    c.beta = beta;
    c.theta = theta;
    c.n = n;
    c.m = m;
    s.cases.push_back(c);
  };
  gen(61, 0.0, 1.0, 0.9, 1, 3);
  gen(63, 0.0, 1.0, 0.8, 1, 2);
  gen(64, 0.2, 0.5, 0.9, 1, 1);
  gen(66, 0.2, 0.5, 0.9, 1, 1);
  gen(68, 0.2, 0.5, 0.9, 1, 1);
  gen(70, 0.2, 0.5, 0.9, 1, 1);
  gen(72, 0.0, 0.5, 0.9, 1, 1);
  gen(74, 0.2, 0.8, 1.1, 1, 1);
  gen(76, 0.0, 1.0, 0.7, 1, 1);

  for (int id = 1; id <= 3; ++id) {
    CaseSpec c;
    c.kind = "example";
    c.id = id;
    c.theta = 1.0;
    c.b = 1.0;
    s.cases.push_back(c);
  }
  return s;
}

}  // namespace pv
