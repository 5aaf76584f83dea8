#pragma once

// Serialization boundary: suite descriptor files in, report documents out.
// Documents are byte-stable for a given report; the JSON form carries the
// only timestamp, isolated in its meta object.

#include <ctime>
#include <string>

#include <json.hpp>

#include "pv/verify.hpp"

namespace pv {

namespace detail {

inline std::string csv_escape(const std::string& s) {
  bool needs = s.find_first_of(",\"\n") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

inline std::string mode_name(FormulaMode m) {
  return m == FormulaMode::printed ? "printed" : "audited";
}

inline std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// suite descriptor files

inline SuiteSpec parse_suite_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SuiteValidationError(std::string("suite descriptor is not valid JSON: ") + e.what());
  }
  SuiteSpec s;
  std::string problems;
  try {
    if (!j.is_object() || !j.contains("cases") || !j["cases"].is_array())
      throw SuiteValidationError("suite descriptor needs a top-level \"cases\" array");
    s.name = j.value("name", std::string("custom"));
    std::string mode = j.value("mode", std::string("audited"));
    if (mode == "printed") s.mode = FormulaMode::printed;
    else if (mode == "audited") s.mode = FormulaMode::audited;
    else throw SuiteValidationError("mode must be \"printed\" or \"audited\"");
    if (j.contains("tol")) {
      const auto& t = j["tol"];
      if (!t.is_object()) throw SuiteValidationError("tol must be an object");
      if (t.contains("abs")) s.tolAbs = t["abs"].get<double>();
      if (t.contains("rel")) s.tolRel = t["rel"].get<double>();
    }
    for (const auto& key : j.items()) {
      if (key.key() != "cases" && key.key() != "name" && key.key() != "mode" &&
          key.key() != "tol")
        throw SuiteValidationError("unknown suite key: " + key.key());
    }

    std::size_t idx = 0;
    for (const auto& cj : j["cases"]) {
      try {
        if (!cj.is_object()) throw SuiteValidationError("case must be an object");
        for (const auto& key : cj.items()) {
          static const char* known[] = {"kind", "id", "f",     "alpha", "beta",
                                        "theta", "n",  "m",    "b"};
          bool ok = false;
          for (const char* k : known) ok = ok || key.key() == k;
          if (!ok) throw SuiteValidationError("unknown case key: " + key.key());
        }
        CaseSpec c;
        c.kind = cj.at("kind").get<std::string>();
        if (c.kind == "kernel") {
          std::string id = cj.at("id").get<std::string>();
          bool found = false;
          for (KernelKind k :
               {KernelKind::cos_odd, KernelKind::xsin_odd, KernelKind::sin_even,
                KernelKind::cos_even, KernelKind::sin_mixed, KernelKind::cos_mixed}) {
            if (id == kernel_name(k) || id == kernel_formula_id(k)) {
              c.kernel = k;
              found = true;
            }
          }
          if (!found) throw SuiteValidationError("unknown kernel id: " + id);
        } else {
          c.id = cj.at("id").get<int>();
        }
        if (cj.contains("f")) {
          const auto& fj = cj["f"];
          if (fj.is_string()) {  // shorthand for a parameterless source
            c.fname = fj.get<std::string>();
          } else {
            c.fname = fj.at("name").get<std::string>();
            if (fj.contains("params"))
              for (const auto& p : fj["params"].items())
                c.fparams[p.key()] = p.value().get<double>();
          }
        }
        c.alpha = cj.value("alpha", 0.0);
        c.beta = cj.value("beta", 1.0);
        c.n = cj.value("n", 0);
        c.m = cj.value("m", 1);
        c.b = cj.value("b", 1.0);
        if (cj.contains("theta") && cj["theta"].is_array()) {
          for (const auto& t : cj["theta"]) {
            c.theta = t.get<double>();
            s.cases.push_back(c);
          }
        } else {
          c.theta = cj.value("theta", 1.0);
          s.cases.push_back(c);
        }
      } catch (const nlohmann::json::exception& e) {
        problems += "case " + std::to_string(idx) + ": " + e.what() + "\n";
      } catch (const SuiteValidationError& e) {
        problems += "case " + std::to_string(idx) + ": " + e.what() + "\n";
      }
      ++idx;
    }
  } catch (const nlohmann::json::exception& e) {
    throw SuiteValidationError(std::string("malformed suite descriptor: ") + e.what());
  }
  if (!problems.empty())
    throw SuiteValidationError("suite validation failed:\n" + problems);
  return s;
}

// ---------------------------------------------------------------------------
// report documents

inline std::string report_json(const Report& rep, bool withTimestamp = true) {
  nlohmann::ordered_json j;
  j["meta"] = nlohmann::ordered_json::object();
  j["meta"]["suite"] = rep.suiteName;
  j["meta"]["mode"] = detail::mode_name(rep.mode);
  if (withTimestamp) j["meta"]["generatedAt"] = detail::utc_timestamp();
  j["audit"] = nlohmann::ordered_json::array();
  for (const auto& a : rep.audit) {
    nlohmann::ordered_json e;
    e["formulaId"] = a.formulaId;
    e["sigma"] = a.sigma;
    e["witnesses"] = a.witnesses;
    e["consistent"] = a.consistent;
    e["correction"] = a.correction;
    j["audit"].push_back(e);
  }
  j["cases"] = nlohmann::ordered_json::array();
  for (const auto& r : rep.cases) {
    nlohmann::ordered_json e;
    e["caseId"] = r.caseId;
    e["kind"] = r.kind;
    e["formulaId"] = r.formulaId;
    e["params"] = r.paramsText;
    e["integrand"] = r.integrandText;
    e["closedForm"] = r.closedText;
    e["closedPrinted"] = r.closedPrinted;
    if (r.closedAudited) e["closedAudited"] = *r.closedAudited;
    else e["closedAudited"] = nullptr;
    e["sigma"] = r.sigma;
    e["oracleRaw"] = {{"value", r.oracleRaw.value},
                      {"errorEstimate", r.oracleRaw.errorEstimate},
                      {"evals", r.oracleRaw.evals},
                      {"converged", r.oracleRaw.converged}};
    if (r.oracleSeries) e["oracleSeries"] = *r.oracleSeries;
    else e["oracleSeries"] = nullptr;
    e["absDiff"] = r.absDiff;
    e["relDiff"] = r.relDiff;
    e["tolerance"] = r.tolerance;
    e["status"] = r.status;
    if (!r.note.empty()) e["note"] = r.note;
    j["cases"].push_back(e);
  }
  j["summary"] = {{"pass", rep.pass},
                  {"fail", rep.fail},
                  {"unaudited", rep.unaudited},
                  {"boundary", rep.boundary}};
  return j.dump(2) + "\n";
}

inline std::string report_csv(const Report& rep) {
  std::string out =
      "caseId,kind,formulaId,status,closedPrinted,closedAudited,sigma,oracleValue,"
      "oracleError,oracleSeries,absDiff,relDiff,tolerance,params,integrand\n";
  for (const auto& r : rep.cases) {
    out += detail::csv_escape(r.caseId) + "," + r.kind + "," + r.formulaId + "," + r.status +
           "," + num17(r.closedPrinted) + ",";
    out += r.closedAudited ? num17(*r.closedAudited) : std::string();
    out += "," + std::to_string(r.sigma) + "," + num17(r.oracleRaw.value) + "," +
           num17(r.oracleRaw.errorEstimate) + ",";
    out += r.oracleSeries ? num17(*r.oracleSeries) : std::string();
    out += "," + num17(r.absDiff) + "," + num17(r.relDiff) + "," + num17(r.tolerance) + "," +
           detail::csv_escape(r.paramsText) + "," + detail::csv_escape(r.integrandText) + "\n";
  }
  return out;
}

inline std::string report_md(const Report& rep) {
  std::string out = "# Verified principal-value integral table\n\n";
  out += "Suite: " + rep.suiteName + "  \n";
  out += "Mode: " + detail::mode_name(rep.mode) + "  \n";
  out += "Summary: " + std::to_string(rep.pass) + " pass, " + std::to_string(rep.fail) +
         " fail, " + std::to_string(rep.unaudited) + " unaudited, " +
         std::to_string(rep.boundary) + " boundary\n\n";
  out += "## Sign audit\n\n";
  out += "| formula | sigma | witnesses | consistent | correction |\n";
  out += "|---|---|---|---|---|\n";
  for (const auto& a : rep.audit) {
    out += "| " + a.formulaId + " | " + (a.sigma > 0 ? "+1" : "-1") + " | " +
           std::to_string(a.witnesses) + " | " + (a.consistent ? "yes" : "no") + " | " +
           a.correction + " |\n";
  }
  out += "\n## Cases\n\n";
  out += "| case | integrand | parameters | closed form | value | oracle | diff | status |\n";
  out += "|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : rep.cases) {
    double shown = r.closedAudited ? *r.closedAudited : r.closedPrinted;
    out += "| " + r.caseId + " | " + r.integrandText + " | " + r.paramsText + " | " +
           r.closedText + " | " + num17(shown) + " | " + num17(r.oracleRaw.value) + " | " +
           num17(r.absDiff) + " | " + r.status + " |\n";
  }
  return out;
}

inline std::string emit_table(const Report& rep, const std::string& format) {
  if (format == "json") return report_json(rep);
  if (format == "csv") return report_csv(rep);
  if (format == "md") return report_md(rep);
  throw DomainError("unknown report format: " + format);
}

}  // namespace pv
