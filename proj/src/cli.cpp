#include "maxent/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "maxent/json_io.hpp"

namespace maxent::cli {
namespace {

bool emit(const std::string& text, const std::optional<std::string>& out_path, std::ostream& out,
          std::ostream& err) {
  if (!out_path) {
    out << text;
    return static_cast<bool>(out);
  }
  std::ofstream f(*out_path, std::ios::binary);
  f << text;
  if (!f) {
    err << "error: cannot write " << *out_path << "\n";
    return false;
  }
  return true;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

int run_update(const std::string& problem_path, const std::optional<std::string>& out_path,
               std::ostream& out, std::ostream& err) {
  std::ifstream in(problem_path, std::ios::binary);
  if (!in) {
    err << "error: cannot read " << problem_path << "\n";
    return kInputError;
  }
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  try {
    const io::ProblemFile file = io::parse_problem(text);
    const double tol = file.solver.tol;
    auto [json, converged, max_residual] = std::visit(
        Overloaded{
            [&](const io::ClassicalProblem& p) {
              const ClassicalReport r = solve_classical(p.prior, p.constraints, file.solver);
              return std::tuple{io::to_json(r, p.prior), r.converged, r.max_residual()};
            },
            [&](const io::QuantumProblem& p) {
              const QuantumReport r = solve_quantum(p.prior, p.constraints, file.solver);
              return std::tuple{io::to_json(r, p.prior), r.converged, r.max_residual()};
            },
            [&](const SpinProblem& p) {
              const SpinReport r = solve_spin(p, std::min(tol, kDefaultSpinTol));
              return std::tuple{io::to_json(r, spin_prior(p), "spin"), r.converged,
                                r.max_residual()};
            }},
        file.payload);

    if (!emit(io::dump(json), out_path, out, err)) return kInputError;
    if (!converged) {
      err << "not converged: max residual " << max_residual << " > tol " << tol << "\n";
      return kNotConverged;
    }
    err << "converged: max residual " << max_residual << "\n";
    return kConverged;
  } catch (const io::ParseError& e) {
    err << problem_path << ": " << e.what() << "\n";
    return kInputError;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const SolverFailure& e) {
    err << "solver failure: " << e.what() << "\n";
    return kNotConverged;
  } catch (const Error& e) {
    err << problem_path << ": " << e.what() << "\n";
    return kInputError;
  }
}

int run_verify(std::uint64_t seed, long long trials, const std::optional<std::string>& out_path,
               std::ostream& out, std::ostream& err) {
  if (trials < 1) {
    err << "error: --trials must be at least 1\n";
    return kInputError;
  }
  const auto results = verification::run_suite(seed, static_cast<int>(trials));
  if (!emit(io::dump(io::to_json(results)), out_path, out, err)) return kInputError;
  bool all = true;
  for (const auto& r : results) {
    err << (r.passed ? "PASS " : "FAIL ") << r.name << "  max deviation " << r.max_deviation
        << " (threshold " << r.threshold << ")\n";
    all = all && r.passed;
  }
  return all ? 0 : 4;
}

}  // namespace maxent::cli
