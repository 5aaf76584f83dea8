#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pv/verify.hpp"

using namespace pv;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// run the installed binary with stdout captured; stderr is folded in so
// usage text lands somewhere inspectable
RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("PVMASTER_BIN");
  REQUIRE(bin != nullptr);
  std::string capture = "/tmp/pvcli_capture.txt";
  std::string cmd = std::string(bin) + " " + args + " > " + capture + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(capture);
  return r;
}

}  // namespace

TEST_CASE("eval output round-trips bit for bit", "[cli]") {
  RunResult r = run_cli("eval --theorem 2 --f power --fparam m=1 --theta 1 --n 0");
  REQUIRE(r.code == 0);

  CaseSpec cs;
  cs.kind = "theorem";
  cs.id = 2;
  cs.fname = "power";
  cs.fparams["m"] = 1.0;
  cs.theta = 1.0;
  cs.n = 0;
  CHECK(r.out == num17(closed_value(cs)) + "\n");
  CHECK(std::strtod(r.out.c_str(), nullptr) == closed_value(cs));

  RunResult printed = run_cli(
      "eval --theorem 2 --f power --fparam m=1 --theta 1 --n 0 --mode printed");
  REQUIRE(printed.code == 0);
  CHECK(printed.out == num17(closed_value(cs, FormulaMode::printed)) + "\n");

  // a theta grid prints one value per line
  RunResult grid = run_cli("eval --kernel cos_odd --theta 0.5 --theta 1.0 --n 1");
  REQUIRE(grid.code == 0);
  CHECK(std::count(grid.out.begin(), grid.out.end(), '\n') == 2);
}

TEST_CASE("eval check mode exercises the oracle", "[cli]") {
  RunResult r = run_cli("eval --theorem 1 --f exp --beta 1 --theta 1 --n 1 --check");
  CHECK(r.code == 0);
  CHECK(r.out.find("status=pass") != std::string::npos);
  CHECK(r.out.find("oracle=") != std::string::npos);

  RunResult bad = run_cli(
      "eval --theorem 2 --f power --fparam m=1 --theta 1 --n 0 --mode printed --check");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("status=fail") != std::string::npos);

  RunResult rim = run_cli("eval --example 3 --check");
  CHECK(rim.code == 0);
  CHECK(rim.out.find("status=boundary") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2 and leave no output file", "[cli]") {
  CHECK(run_cli("eval --theorem 1 --kernel cos_odd").code == 2);
  CHECK(run_cli("eval --theorem 1 --bogus 3").code == 2);
  CHECK(run_cli("eval").code == 2);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("--help").code == 0);

  std::remove("/tmp/pvcli_no_partial.json");
  CHECK(run_cli("verify --suite /definitely/not/here.json --out /tmp/pvcli_no_partial.json")
            .code == 2);
  CHECK(run_cli("verify --suite smoke --format xml --out /tmp/pvcli_no_partial.json")
            .code == 2);
  std::ifstream probe("/tmp/pvcli_no_partial.json");
  CHECK_FALSE(probe.good());
}

TEST_CASE("verify writes a report matching an in-process run", "[cli]") {
  std::string path = "/tmp/pvcli_smoke.json";
  std::remove(path.c_str());
  RunResult r = run_cli("verify --suite smoke --out " + path);
  REQUIRE(r.code == 0);

  nlohmann::json j = nlohmann::json::parse(slurp(path));
  CHECK(j["meta"]["suite"] == "smoke");
  CHECK(j["summary"]["pass"] == 12);
  CHECK(j["summary"]["fail"] == 0);
  REQUIRE(j["cases"].size() == 12);

  // the eval value for one of the suite's cases matches its record exactly
  Report rep = run_suite(builtin_suite("smoke"));
  bool matched = false;
  for (const auto& cj : j["cases"]) {
    for (const auto& rec : rep.cases) {
      if (cj["caseId"] != rec.caseId) continue;
      matched = true;
      REQUIRE(rec.closedAudited.has_value());
      CHECK(cj["closedAudited"].get<double>() == *rec.closedAudited);
      CHECK(cj["closedPrinted"].get<double>() == rec.closedPrinted);
    }
  }
  CHECK(matched);
}

TEST_CASE("table emission is byte stable with zero failing rows", "[cli]") {
  std::string a = "/tmp/pvcli_table_a.md", b = "/tmp/pvcli_table_b.md";
  REQUIRE(run_cli("table --out " + a).code == 0);
  REQUIRE(run_cli("table --out " + b).code == 0);
  std::string doc = slurp(a);
  CHECK(doc == slurp(b));
  CHECK(doc.find("## Cases") != std::string::npos);
  CHECK(doc.find("| fail |") == std::string::npos);
  std::size_t rows = 0, pos = 0;
  while ((pos = doc.find("\n| ", pos)) != std::string::npos) ++rows, ++pos;
  CHECK(rows >= 40);
}

TEST_CASE("identities and audit commands succeed", "[cli]") {
  RunResult ids = run_cli("identities");
  CHECK(ids.code == 0);
  CHECK(ids.out.find("FAIL") == std::string::npos);

  RunResult audit = run_cli("audit");
  CHECK(audit.code == 0);
  CHECK(audit.out.find("argument_order") != std::string::npos);
  CHECK(audit.out.find("thm2") != std::string::npos);
}
