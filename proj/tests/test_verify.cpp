#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <string>

#include <json.hpp>

#include "pv/report.hpp"
#include "pv/verify.hpp"

using namespace pv;

namespace {
std::map<std::string, SignAuditEntry> audit_by_id() {
  std::map<std::string, SignAuditEntry> out;
  for (const SignAuditEntry& e : audit_entries()) out[e.formulaId] = e;
  return out;
}

CaseSpec theorem_case(int id, const std::string& fname, double fparam, double alpha,
                      double beta, double theta, int n, int m = 1) {
  CaseSpec c;
  c.kind = "theorem";
  c.id = id;
  c.fname = fname;
  if (fparam != 0.0) c.fparams["m"] = fparam;
  c.alpha = alpha;
  c.beta = beta;
  c.theta = theta;
  c.n = n;
  c.m = m;
  return c;
}
}  // namespace

TEST_CASE("sign audit lands on the frozen verdicts", "[verify]") {
  auto a = audit_by_id();
  REQUIRE(a.size() == 12);
  for (const auto& [id, e] : a) {
    INFO(id);
    CHECK(e.consistent);
    CHECK(e.witnesses >= 5);
    CHECK((e.sigma == 1 || e.sigma == -1));
  }
  CHECK(a["thm1"].sigma == 1);
  CHECK(a["thm3"].sigma == 1);
  CHECK(a["thm4"].sigma == 1);
  CHECK(a["thm6"].sigma == 1);
  CHECK(a["eq20"].sigma == -1);
  CHECK(a["thm2"].sigma == -1);
  CHECK(a["eq22"].correction == "argument_order");
  CHECK(a["eq19"].correction == "none");
  CHECK(a["eq20"].correction == "none");
  CHECK(a["eq21"].correction == "none");
  CHECK(a["eq23"].correction == "pair_prefactor");
  CHECK(a["eq25"].correction == "pair_prefactor");
  CHECK(a["thm1"].correction == "none");
  CHECK(a["thm2"].correction == "none");
  CHECK(a["thm5"].correction == "pair_prefactor");
  CHECK(a["thm6"].correction == "pair_prefactor");
}

TEST_CASE("single cases verify against the raw oracle", "[verify]") {
  CaseSpec thm2 = theorem_case(2, "power", 1.0, 0.0, 1.0, 1.0, 0);

  VerificationRecord audited = verify_case(thm2);
  CHECK(audited.status == "pass");
  CHECK(audited.sigma == -1);
  REQUIRE(audited.closedAudited.has_value());
  CHECK(*audited.closedAudited == Catch::Approx(-kPi * std::cos(1.0)).margin(1e-12));
  CHECK(audited.closedPrinted == Catch::Approx(kPi * std::cos(1.0)).margin(1e-12));
  REQUIRE(audited.oracleSeries.has_value());
  CHECK(std::abs(*audited.oracleSeries - *audited.closedAudited) < 1e-12);

  // printed mode has no audited fallback, so the sign defect must surface
  VerificationRecord printed = verify_case(thm2, {}, FormulaMode::printed);
  CHECK(printed.status == "fail");
  CHECK_FALSE(printed.closedAudited.has_value());
  CHECK(printed.absDiff > 1.0);

  CaseSpec g76;
  g76.kind = "generator";
  g76.id = 76;
  g76.theta = 0.7;
  g76.n = 1;
  VerificationRecord rim = verify_case(g76);
  CHECK(rim.status == "boundary");
  CHECK(rim.tolerance >= 1e-3);

  CaseSpec ex3;
  ex3.kind = "example";
  ex3.id = 3;
  ex3.theta = 1.0;
  VerificationRecord ex = verify_case(ex3);
  CHECK(ex.status == "boundary");
  CHECK_FALSE(ex.oracleSeries.has_value());
}

TEST_CASE("term summation oracle collapses onto known values", "[verify]") {
  // the identity map keeps a single harmonic, so the sum is one kernel value
  AnalyticFunction z = AnalyticFunction::make("power", {{"m", 1.0}}, 0.0);
  for (double theta : {0.5, 1.0, 1.7}) {
    TheoremParams p{1, z, CombinationParams{0.0, 1.0, theta}, FamilyOrder{0, 1}};
    CHECK(series_oracle(p) == Catch::Approx(kPi * std::sin(theta)).margin(1e-13));
  }

  AnalyticFunction c1 = AnalyticFunction::make("power", {{"m", 0.0}}, 0.0);
  for (int thm : {1, 4, 6}) {
    TheoremParams p{thm, c1, CombinationParams{0.0, 1.0, 1.1}, FamilyOrder{1, 1}};
    CHECK(std::abs(series_oracle(p)) < 1e-14);
  }

  TheoremParams pe{1, AnalyticFunction::make("exp", {}, 0.0),
                   CombinationParams{0.0, 0.5, 1.3}, FamilyOrder{1, 1}};
  PVResult raw = pv_integrate(integrand_for(pe));
  CHECK(std::abs(series_oracle(pe) - raw.value) < 1e-6);

  // z^2 about the origin opens with two exact zeros; truncation must not
  // fire before the quadratic term
  AnalyticFunction z2 = AnalyticFunction::make("power", {{"m", 2.0}}, 0.0);
  TheoremParams pq{1, z2, CombinationParams{0.0, 1.0, 0.5}, FamilyOrder{0, 1}};
  CHECK(series_oracle(pq) ==
        Catch::Approx(theorem_value(pq, FormulaMode::audited).value).margin(1e-12));

  // beta on the rim of the disc is outside the oracle's premise
  TheoremParams rim{4, AnalyticFunction::make("atan_sq", {}, 0.0),
                    CombinationParams{0.0, 1.0, 1.0}, FamilyOrder{2, 1}};
  CHECK_THROWS_AS(series_oracle(rim), DomainError);
}

TEST_CASE("suite descriptors validate before anything runs", "[verify]") {
  CHECK_THROWS_AS(parse_suite_text("{nope"), SuiteValidationError);
  CHECK_THROWS_AS(parse_suite_text("{}"), SuiteValidationError);
  CHECK_THROWS_AS(parse_suite_text("{\"cases\": 3}"), SuiteValidationError);
  CHECK_THROWS_AS(parse_suite_text("{\"cases\": [], \"zap\": 1}"), SuiteValidationError);
  CHECK_THROWS_AS(parse_suite_text("{\"cases\": [], \"mode\": \"x\"}"),
                  SuiteValidationError);
  CHECK_THROWS_AS(
      parse_suite_text("{\"cases\": [{\"kind\":\"theorem\",\"id\":1,\"zap\":2}]}"),
      SuiteValidationError);
  CHECK_THROWS_AS(parse_suite_text("{\"cases\": [{\"kind\":\"kernel\",\"id\":\"nope\"}]}"),
                  SuiteValidationError);
  CHECK_THROWS_AS(parse_suite_text("{\"cases\": [{\"kind\":\"theorem\"}]}"),
                  SuiteValidationError);

  // shape-valid but semantically bad cases abort inside run_suite instead,
  // before any case executes
  SuiteSpec bad = parse_suite_text("{\"cases\": [{\"kind\":\"zort\",\"id\":1}]}");
  REQUIRE(bad.cases.size() == 1);
  CHECK_THROWS_AS(run_suite(bad), SuiteValidationError);

  SuiteSpec grid = parse_suite_text(
      "{\"cases\": [{\"kind\":\"kernel\",\"id\":\"cos_odd\",\"theta\":[0.5,1.0,1.5],"
      "\"n\":1}], \"tol\": {\"abs\": 1e-7}}");
  CHECK(grid.cases.size() == 3);
  CHECK(grid.tolAbs == 1e-7);
  CHECK(grid.cases[1].theta == 1.0);

  // f takes a bare name or an object with params
  SuiteSpec fshort = parse_suite_text(
      "{\"cases\": [{\"kind\":\"theorem\",\"id\":1,\"f\":\"sinh\"},"
      "{\"kind\":\"theorem\",\"id\":1,\"f\":{\"name\":\"power\",\"params\":{\"m\":2}}}]}");
  CHECK(fshort.cases[0].fname == "sinh");
  CHECK(fshort.cases[1].fparams.at("m") == 2.0);

  Report empty = run_suite(parse_suite_text("{\"cases\": []}"));
  CHECK(empty.cases.empty());
  CHECK(empty.pass + empty.fail + empty.unaudited + empty.boundary == 0);
  CHECK(empty.audit.size() == 12);

  CHECK_THROWS_AS(builtin_suite("nope"), SuiteValidationError);
}

TEST_CASE("built-in suites cover the catalog and pass", "[verify]") {
  SuiteSpec smoke = builtin_suite("smoke");
  CHECK(smoke.cases.size() == 12);
  Report rs = run_suite(smoke);
  CHECK(rs.pass == 12);
  CHECK(rs.fail == 0);
  CHECK(rs.unaudited == 0);
  CHECK(rs.boundary == 0);

  SuiteSpec full = builtin_suite("full");
  CHECK(full.cases.size() == 52);
  Report rf = run_suite(full);
  CHECK(rf.pass == 50);
  CHECK(rf.fail == 0);
  CHECK(rf.unaudited == 0);
  CHECK(rf.boundary == 2);
  for (std::size_t i = 1; i < rf.cases.size(); ++i)
    CHECK(rf.cases[i - 1].caseId <= rf.cases[i].caseId);
  int kernels = 0;
  for (const auto& r : rf.cases) kernels += r.kind == "kernel";
  CHECK(kernels == 12);
}

TEST_CASE("reports are deterministic and faithful to re-runs", "[verify]") {
  SuiteSpec smoke = builtin_suite("smoke");
  Report r1 = run_suite(smoke);
  Report r2 = run_suite(smoke);
  CHECK(report_json(r1, false) == report_json(r2, false));
  CHECK(report_csv(r1) == report_csv(r2));
  CHECK(report_md(r1) == report_md(r2));

  nlohmann::json j = nlohmann::json::parse(report_json(r1, false));
  CHECK_FALSE(j["meta"].contains("generatedAt"));
  CHECK(nlohmann::json::parse(report_json(r1, true))["meta"].contains("generatedAt"));
  CHECK(j["audit"].size() == 12);
  CHECK(j["cases"].size() == 12);
  CHECK(j["summary"]["pass"] == 12);
  CHECK(j["meta"]["suite"] == "smoke");
  CHECK(j["meta"]["mode"] == "audited");

  // a pass row re-verifies identically when its case is run alone
  CaseSpec cs = theorem_case(1, "exp", 0.0, 0.0, 1.0, 1.0, 1);
  VerificationRecord one = verify_case(cs);
  bool found = false;
  for (const auto& r : r1.cases) {
    if (r.caseId != one.caseId) continue;
    found = true;
    CHECK(r.closedPrinted == one.closedPrinted);
    REQUIRE(r.closedAudited.has_value());
    REQUIRE(one.closedAudited.has_value());
    CHECK(*r.closedAudited == *one.closedAudited);
    CHECK(r.status == one.status);
  }
  CHECK(found);
  CHECK(closed_value(cs) == *one.closedAudited);
  CHECK(closed_value(cs, FormulaMode::printed) == one.closedPrinted);

  std::size_t rows = 0, pos = 0;
  std::string csv = report_csv(r1);
  while ((pos = csv.find('\n', pos)) != std::string::npos) ++rows, ++pos;
  CHECK(rows == 13);

  CHECK(report_md(r1).find("## Sign audit") != std::string::npos);
  CHECK_THROWS_AS(emit_table(r1, "xml"), DomainError);
}
