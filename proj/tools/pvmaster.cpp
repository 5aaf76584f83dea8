// Command-line front end.  eval prints one closed-form value per theta,
// verify runs a suite and writes a report, table emits the full verified
// integral table, identities exercises the rational identity layer at random
// points, audit prints the empirical sign table.
//
// Exit codes: 0 success / all pass, 1 verification failures, 2 usage or
// validation errors.

#include <CLI11.hpp>

#include <pv/rational.hpp>
#include <pv/report.hpp>
#include <pv/verify.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

pv::AnalyticFunction::Params parse_fparams(const std::vector<std::string>& kvs) {
  pv::AnalyticFunction::Params out;
  for (const std::string& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw pv::DomainError("--fparam expects key=value, got: " + kv);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(kv.substr(eq + 1), &used);
    } catch (const std::exception&) {
      throw pv::DomainError("--fparam value is not a number: " + kv);
    }
    if (eq + 1 + used != kv.size())
      throw pv::DomainError("--fparam value is not a number: " + kv);
    out[kv.substr(0, eq)] = v;
  }
  return out;
}

// Compose first, then open: an output path never holds a partial document.
int write_or_print(const std::string& text, const std::string& outPath) {
  if (outPath.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return 0;
  }
  std::ofstream os(outPath, std::ios::binary);
  if (!os) {
    std::cerr << "pvmaster: cannot open output file: " << outPath << "\n";
    return 2;
  }
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  os.flush();
  if (!os) {
    std::cerr << "pvmaster: write failed: " << outPath << "\n";
    return 2;
  }
  return 0;
}

pv::SuiteSpec load_suite(const std::string& arg) {
  if (arg == "smoke" || arg == "full") return pv::builtin_suite(arg);
  std::ifstream is(arg, std::ios::binary);
  if (!is) throw pv::SuiteValidationError("cannot read suite file: " + arg);
  std::ostringstream ss;
  ss << is.rdbuf();
  pv::SuiteSpec spec = pv::parse_suite_text(ss.str());
  if (spec.name.empty()) spec.name = arg;
  return spec;
}

struct EvalFlags {
  int theorem = 0, t1row = 0, t2row = 0, generator = 0, example = 0;
  std::string kernel;
  std::string fname = "exp";
  std::vector<std::string> fparams;
  double alpha = 0.0, beta = 1.0, b = 1.0;
  std::vector<double> thetas;
  int n = 0, m = 1;
  std::string mode = "audited";
  bool check = false;
  double tolAbs = -1.0, tolRel = -1.0;
};

int run_eval(const EvalFlags& fl) {
  pv::CaseSpec cs;
  if (fl.theorem) {
    cs.kind = "theorem";
    cs.id = fl.theorem;
  } else if (!fl.kernel.empty()) {
    cs.kind = "kernel";
    cs.kernel = pv::kernel_kind_from_name(fl.kernel);
  } else if (fl.t1row) {
    cs.kind = "table1";
    cs.id = fl.t1row;
  } else if (fl.t2row) {
    cs.kind = "table2";
    cs.id = fl.t2row;
  } else if (fl.generator) {
    cs.kind = "generator";
    cs.id = fl.generator;
  } else {
    cs.kind = "example";
    cs.id = fl.example;
  }
  cs.fname = fl.fname;
  cs.fparams = parse_fparams(fl.fparams);
  cs.alpha = fl.alpha;
  cs.beta = fl.beta;
  cs.n = fl.n;
  cs.m = fl.m;
  cs.b = fl.b;
  pv::FormulaMode mode =
      fl.mode == "printed" ? pv::FormulaMode::printed : pv::FormulaMode::audited;
  std::vector<double> thetas = fl.thetas.empty() ? std::vector<double>{1.0} : fl.thetas;
  int rc = 0;
  for (double theta : thetas) {
    cs.theta = theta;
    if (fl.check) {
      pv::VerifyConfig cfg;
      cfg.tolAbs = fl.tolAbs;
      cfg.tolRel = fl.tolRel;
      pv::VerificationRecord r = pv::verify_case(cs, cfg, mode);
      double value = (mode == pv::FormulaMode::audited && r.closedAudited)
                         ? *r.closedAudited
                         : r.closedPrinted;
      std::printf("%s oracle=%s diff=%s status=%s\n", pv::num17(value).c_str(),
                  pv::num17(r.oracleRaw.value).c_str(), pv::num_str(r.absDiff).c_str(),
                  r.status.c_str());
      if (r.status == "fail") rc = 1;
    } else {
      std::printf("%s\n", pv::num17(pv::closed_value(cs, mode)).c_str());
    }
  }
  return rc;
}

int run_verify(const std::string& suiteArg, const std::string& modeArg,
               const std::string& format, const std::string& out, double tolAbs,
               double tolRel) {
  pv::SuiteSpec spec = load_suite(suiteArg);
  if (!modeArg.empty())
    spec.mode = modeArg == "printed" ? pv::FormulaMode::printed : pv::FormulaMode::audited;
  pv::VerifyConfig cfg;
  cfg.tolAbs = tolAbs;
  cfg.tolRel = tolRel;
  pv::Report rep = pv::run_suite(spec, cfg);
  std::string text = pv::emit_table(rep, format);
  int rc = write_or_print(text, out);
  if (rc) return rc;
  return rep.fail > 0 ? 1 : 0;
}

int run_audit() {
  std::printf("%-8s %-6s %-10s %-11s %s\n", "formula", "sigma", "witnesses", "consistent",
              "correction");
  bool allConsistent = true;
  for (const pv::SignAuditEntry& e : pv::audit_entries()) {
    std::printf("%-8s %+-6d %-10d %-11s %s\n", e.formulaId.c_str(), e.sigma, e.witnesses,
                e.consistent ? "yes" : "no", e.correction.c_str());
    allConsistent = allConsistent && e.consistent;
  }
  return allConsistent ? 0 : 1;
}

// Random points stay inside the pole cluster: far outside it the expanded
// sums cancel past double precision and the comparison would measure
// conditioning, not the identity.
double draw_point(std::mt19937& rng, const std::vector<double>& poles, bool includeOrigin,
                  double hi) {
  std::uniform_real_distribution<double> dist(includeOrigin ? 0.05 : 0.0, hi);
  for (;;) {
    double x = dist(rng);
    bool clear = !includeOrigin || std::abs(x) > 5e-2;
    for (double p : poles) clear = clear && std::abs(std::abs(x) - p) > 1e-2;
    if (clear) return x;
  }
}

int run_identities() {
  std::mt19937 rng(20220829u);
  const double bound = 1e-12;
  const int points = 200;
  bool ok = true;
  auto report = [&](const std::string& label, double worst) {
    bool good = worst <= bound;
    ok = ok && good;
    std::printf("%-38s max rel residual %.3e  %s\n", label.c_str(), worst,
                good ? "ok" : "FAIL");
  };
  auto rel = [](double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
  };

  double worst = 0.0;
  for (int n = 0; n <= 6; ++n) {
    std::vector<double> poles = pv::odd_poles(n);
    for (int i = 0; i < points; ++i) {
      double x = draw_point(rng, poles, false, 2.0 * n + 3.0);
      pv::FamilyOrder o{n, 1};
      worst = std::max(worst, rel(pv::rational_identity_eval(pv::PoleFamily::odd,
                                                             pv::IdentityForm::product, o, x),
                                  pv::rational_identity_eval(pv::PoleFamily::odd,
                                                             pv::IdentityForm::sum, o, x)));
    }
  }
  report("odd family product vs sum", worst);

  worst = 0.0;
  for (int m = 1; m <= 6; ++m) {
    std::vector<double> poles = pv::even_poles(m);
    for (int i = 0; i < points; ++i) {
      double x = draw_point(rng, poles, true, 2.0 * m + 2.0);
      pv::FamilyOrder o{0, m};
      worst = std::max(worst, rel(pv::rational_identity_eval(pv::PoleFamily::even,
                                                             pv::IdentityForm::product, o, x),
                                  pv::rational_identity_eval(pv::PoleFamily::even,
                                                             pv::IdentityForm::sum, o, x)));
    }
  }
  report("even family product vs sum", worst);

  worst = 0.0;
  for (int n = 0; n <= 6; ++n)
    for (int m = 1; m <= 6; ++m) {
      std::vector<double> poles = pv::mixed_poles(n, m);
      for (int i = 0; i < points; ++i) {
        double x = draw_point(rng, poles, true,
                              std::max(2.0 * n + 1.0, 2.0 * m) + 2.0);
        pv::FamilyOrder o{n, m};
        worst = std::max(worst,
                         rel(pv::rational_identity_eval(pv::PoleFamily::mixed,
                                                        pv::IdentityForm::product, o, x),
                             pv::rational_identity_eval(pv::PoleFamily::mixed,
                                                        pv::IdentityForm::sum, o, x)));
      }
    }
  report("mixed family product vs sum", worst);

  worst = 0.0;
  std::uniform_real_distribution<double> tdist(1.0, 3.0);
  for (int n = 0; n <= 6; ++n)
    for (int i = 0; i < points; ++i) {
      double t = tdist(rng) * (i % 2 ? 1.0 : -1.0);
      auto [lhs, rhs] = pv::sinh_power_reduction(n, t);
      worst = std::max(worst, rel(lhs, rhs));
    }
  report("odd sinh power reduction", worst);

  worst = 0.0;
  for (int n = 0; n <= 6; ++n)
    for (double x : {2.0 * n + 2.0, 2.0 * n + 5.0, 50.0}) {
      double c = pv::laplace_sinh(n, x, pv::LaplaceForm::closed);
      double s = pv::laplace_sinh(n, x, pv::LaplaceForm::sum);
      double r = pv::laplace_sinh(n, x, pv::LaplaceForm::recursive);
      worst = std::max({worst, rel(c, s), rel(c, r), rel(s, r)});
    }
  report("sinh transform, three shapes", worst);

  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed-form principal-value integrals with numerical verification"};
  app.require_subcommand(1);

  EvalFlags fl;
  CLI::App* eval = app.add_subcommand("eval", "evaluate one closed form");
  CLI::App* target = eval->add_option_group("target", "what to evaluate");
  target->add_option("--theorem", fl.theorem, "governing family 1..6")
      ->check(CLI::Range(1, 6));
  target->add_option("--kernel", fl.kernel,
                     "single-frequency kind (cos_odd, xsin_odd, sin_even, cos_even, "
                     "sin_mixed, cos_mixed, or its id)");
  target->add_option("--table1-row", fl.t1row, "series-coefficient row 1..4")
      ->check(CLI::Range(1, 4));
  target->add_option("--table2-row", fl.t2row, "unit-circle row 1..6")
      ->check(CLI::Range(1, 6));
  target->add_option("--generator", fl.generator, "generated family id");
  target->add_option("--example", fl.example, "worked case 1..3")->check(CLI::Range(1, 3));
  target->require_option(1);
  eval->add_option("--f", fl.fname, "source function name (default exp)");
  eval->add_option("--fparam", fl.fparams, "source function parameter key=value")
      ->take_all();
  eval->add_option("--alpha", fl.alpha, "combination shift");
  eval->add_option("--beta", fl.beta, "combination scale");
  eval->add_option("--theta", fl.thetas, "frequency; repeat for a grid")->take_all();
  eval->add_option("--n", fl.n, "odd-family order");
  eval->add_option("--m", fl.m, "even-family order / power exponent");
  eval->add_option("--b", fl.b, "worked case 2 shape parameter");
  eval->add_option("--mode", fl.mode, "printed or audited (default audited)")
      ->check(CLI::IsMember({"printed", "audited"}));
  eval->add_flag("--check", fl.check, "also run the quadrature oracle and print the diff");
  eval->add_option("--tol-abs", fl.tolAbs, "absolute tolerance for --check");
  eval->add_option("--tol-rel", fl.tolRel, "relative tolerance for --check");

  std::string suiteArg = "smoke", verifyMode, verifyFormat = "json", verifyOut;
  double vTolAbs = -1.0, vTolRel = -1.0;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suiteArg, "built-in name (smoke, full) or descriptor path");
  verify->add_option("--mode", verifyMode, "override the suite mode")
      ->check(CLI::IsMember({"printed", "audited"}));
  verify->add_option("--format", verifyFormat, "report format (default json)")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  verify->add_option("--out", verifyOut, "output path (default stdout)");
  verify->add_option("--tol-abs", vTolAbs, "absolute tolerance override");
  verify->add_option("--tol-rel", vTolRel, "relative tolerance override");

  std::string tableFormat = "md", tableOut, tableMode;
  CLI::App* table = app.add_subcommand("table", "emit the full verified integral table");
  table->add_option("--format", tableFormat, "document format (default md)")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  table->add_option("--out", tableOut, "output path (default stdout)");
  table->add_option("--mode", tableMode, "printed or audited (default audited)")
      ->check(CLI::IsMember({"printed", "audited"}));

  CLI::App* identities =
      app.add_subcommand("identities", "check the rational identity layer at random points");
  CLI::App* audit = app.add_subcommand("audit", "print the empirical sign table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(eval)) return run_eval(fl);
    if (app.got_subcommand(verify))
      return run_verify(suiteArg, verifyMode, verifyFormat, verifyOut, vTolAbs, vTolRel);
    if (app.got_subcommand(table))
      return run_verify("full", tableMode, tableFormat, tableOut, -1.0, -1.0);
    if (app.got_subcommand(identities)) return run_identities();
    if (app.got_subcommand(audit)) return run_audit();
  } catch (const pv::UnauditedError& e) {
    std::cerr << "pvmaster: " << e.what() << "\n";
    return 1;
  } catch (const pv::ConvergenceError& e) {
    std::cerr << "pvmaster: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "pvmaster: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
