#pragma once

// JSON interchange: the shared matrix format {"dim": n, "entries": [[re, im], ...]}
// (row-major, n*n pairs), problem files for the CLI, and solver/verification
// reports. Reports are written with stable key order and every floating
// value at 17 significant digits, so equal inputs give byte-identical files.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "maxent/classical.hpp"
#include "maxent/error.hpp"
#include "maxent/quantum.hpp"
#include "maxent/spin.hpp"
#include "maxent/verification.hpp"

namespace maxent::io {

using Json = nlohmann::ordered_json;

/// Malformed input. `location` is "line L, column C" for syntax errors or a
/// JSON pointer such as "/constraints/1/target" for field errors.
class ParseError : public Error {
 public:
  ParseError(const std::string& location, const std::string& message)
      : Error(location + ": " + message), location_(location) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

Json to_json(const ComplexMatrix& m);
/// Throws ParseError naming `path` on any shape or type problem.
ComplexMatrix matrix_from_json(const Json& j, const std::string& path = "");

Json to_json(const SpinProblem& p);
SpinProblem spin_problem_from_json(const Json& j, const std::string& path = "");

struct ClassicalProblem {
  ClassicalDistribution prior;
  std::vector<ClassicalConstraint> constraints;
};

struct QuantumProblem {
  DensityMatrix prior;
  std::vector<QuantumConstraint> constraints;
};

/// {"mode": "classical"|"quantum"|"spin", "prior": ..., "constraints":
/// [{"observable": ..., "target": x}], "solver": {"tol": x, "max_iter": n}}.
/// Spin files carry "a", "b", "c" and "target" at top level instead of prior
/// and constraints. Priors are normalized on load.
struct ProblemFile {
  std::variant<ClassicalProblem, QuantumProblem, SpinProblem> payload;
  SolverOptions solver;
};

/// Throws ParseError for syntax, type and shape problems; DomainError for
/// well-formed but invalid values (non-Hermitian observable, negative prior).
ProblemFile parse_problem(std::string_view text);

Json to_json(const ClassicalReport& r, const ClassicalDistribution& prior);
Json to_json(const QuantumReport& r, const DensityMatrix& prior, std::string_view mode = "quantum");
Json to_json(const verification::PropertyResult& r);
Json to_json(const std::vector<verification::PropertyResult>& results);

/// Pretty-printed JSON (2-space indent), floats as %.17g, non-finite as null.
std::string dump(const Json& j);

}  // namespace maxent::io
