#pragma once

#include <stdexcept>
#include <string>

namespace pv {

// Argument outside a formula's region of validity (pole proximity, branch
// cut, out-of-range order, theta at an excluded endpoint).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Catalog misuse: unknown function name, missing or malformed parameters.
struct UnsupportedFunctionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Audited-mode evaluation was requested for a formula whose empirical sign
// audit did not reach a consistent verdict across its witness grid.
struct UnauditedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical procedure failed to reach its target within its budget, e.g.
// the term-summation oracle not reaching its truncation threshold.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A suite descriptor failed validation; the message is the validation report
// listing every offending case. No case executes when this is thrown.
struct SuiteValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace pv
