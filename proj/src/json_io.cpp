#include "maxent/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace maxent::io {
namespace {

std::string child(const std::string& path, std::string_view key) {
  return path + "/" + std::string(key);
}

std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

const Json& require(const Json& j, std::string_view key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path.empty() ? "/" : path, "expected an object");
  const auto it = j.find(std::string(key));
  if (it == j.end()) throw ParseError(child(path, key), "missing required field");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

std::vector<double> number_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], child(path, i)));
  return out;
}

Json number_array(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (const cplx& z : m.entries()) entries.push_back(Json::array({z.real(), z.imag()}));
  Json j;
  j["dim"] = m.dim();
  j["entries"] = std::move(entries);
  return j;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& path) {
  const Json& dim_j = require(j, "dim", path);
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1)
    throw ParseError(child(path, "dim"), "expected a positive integer");
  const auto dim = static_cast<std::size_t>(dim_j.get<long long>());
  const Json& entries_j = require(j, "entries", path);
  const std::string epath = child(path, "entries");
  if (!entries_j.is_array()) throw ParseError(epath, "expected an array of [re, im] pairs");
  if (entries_j.size() != dim * dim) {
    std::ostringstream msg;
    msg << "expected " << dim * dim << " entries for dim " << dim << ", got " << entries_j.size();
    throw ParseError(epath, msg.str());
  }
  std::vector<cplx> entries;
  entries.reserve(dim * dim);
  for (std::size_t k = 0; k < entries_j.size(); ++k) {
    const Json& e = entries_j[k];
    const std::string p = child(epath, k);
    if (!e.is_array() || e.size() != 2) throw ParseError(p, "expected [re, im]");
    entries.emplace_back(number(e[0], child(p, std::size_t{0})), number(e[1], child(p, 1)));
  }
  return ComplexMatrix(dim, std::move(entries));
}

Json to_json(const SpinProblem& p) {
  Json j;
  j["a"] = p.a;
  j["b"] = p.b;
  j["c"] = number_array(p.c);
  j["target"] = p.target;
  return j;
}

SpinProblem spin_problem_from_json(const Json& j, const std::string& path) {
  SpinProblem p;
  p.a = number(require(j, "a", path), child(path, "a"));
  p.b = number(require(j, "b", path), child(path, "b"));
  const std::vector<double> c = number_array(require(j, "c", path), child(path, "c"));
  if (c.size() != 4) throw ParseError(child(path, "c"), "expected [c1, cx, cy, cz]");
  std::copy(c.begin(), c.end(), p.c.begin());
  p.target = number(require(j, "target", path), child(path, "target"));
  return p;
}

namespace {

SolverOptions parse_solver(const Json& root) {
  SolverOptions opts;
  const auto it = root.find("solver");
  if (it == root.end()) return opts;
  const Json& s = *it;
  if (!s.is_object()) throw ParseError("/solver", "expected an object");
  if (const auto t = s.find("tol"); t != s.end()) {
    opts.tol = number(*t, "/solver/tol");
    if (!(opts.tol > 0.0)) throw ParseError("/solver/tol", "must be positive");
  }
  if (const auto m = s.find("max_iter"); m != s.end()) {
    if (!m->is_number_integer() || m->get<long long>() < 0)
      throw ParseError("/solver/max_iter", "expected a nonnegative integer");
    opts.max_iter = static_cast<int>(m->get<long long>());
  }
  return opts;
}

const Json& constraint_list(const Json& root) {
  static const Json empty = Json::array();
  const auto it = root.find("constraints");
  if (it == root.end()) return empty;
  if (!it->is_array()) throw ParseError("/constraints", "expected an array");
  return *it;
}

ClassicalProblem parse_classical(const Json& root) {
  ClassicalProblem p;
  p.prior = ClassicalDistribution::normalize(number_array(require(root, "prior", ""), "/prior"));
  const Json& list = constraint_list(root);
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string path = child("/constraints", k);
    ClassicalConstraint c;
    c.values = number_array(require(list[k], "observable", path), child(path, "observable"));
    if (c.values.size() != p.prior.size()) {
      std::ostringstream msg;
      msg << "expected " << p.prior.size() << " values, got " << c.values.size();
      throw ParseError(child(path, "observable"), msg.str());
    }
    c.target = number(require(list[k], "target", path), child(path, "target"));
    p.constraints.push_back(std::move(c));
  }
  return p;
}

QuantumProblem parse_quantum(const Json& root) {
  QuantumProblem p;
  const ComplexMatrix prior = matrix_from_json(require(root, "prior", ""), "/prior");
  p.prior = DensityMatrix::normalize(HermitianOperator(prior));
  const Json& list = constraint_list(root);
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string path = child("/constraints", k);
    const std::string opath = child(path, "observable");
    ComplexMatrix obs = matrix_from_json(require(list[k], "observable", path), opath);
    if (obs.dim() != prior.dim()) {
      std::ostringstream msg;
      msg << "observable dim " << obs.dim() << " does not match prior dim " << prior.dim();
      throw ParseError(opath, msg.str());
    }
    try {
      p.constraints.push_back(
          {HermitianOperator(std::move(obs)),
           number(require(list[k], "target", path), child(path, "target"))});
    } catch (const DomainError& e) {
      throw DomainError(opath + ": " + e.what(), e.offending_value());
    }
  }
  return p;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(line_column(text, e.byte == 0 ? 0 : e.byte - 1), "invalid JSON");
  }
  if (!root.is_object()) throw ParseError("/", "expected a top-level object");
  const Json& mode_j = require(root, "mode", "");
  if (!mode_j.is_string()) throw ParseError("/mode", "expected a string");
  const std::string mode = mode_j.get<std::string>();

  ProblemFile file;
  file.solver = parse_solver(root);
  if (mode == "classical") {
    file.payload = parse_classical(root);
  } else if (mode == "quantum") {
    file.payload = parse_quantum(root);
  } else if (mode == "spin") {
    file.payload = spin_problem_from_json(root);
  } else {
    throw ParseError("/mode", "expected \"classical\", \"quantum\" or \"spin\", got \"" + mode + "\"");
  }
  return file;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

template <class Report>
Json report_head(const Report& r, std::string_view mode) {
  Json j;
  j["mode"] = std::string(mode);
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["multipliers"] = number_array(r.multipliers);
  j["log_partition"] = r.log_partition;
  return j;
}

}  // namespace

Json to_json(const ClassicalReport& r, const ClassicalDistribution& prior) {
  Json j = report_head(r, "classical");
  j["posterior"] = number_array(r.posterior.weights());
  j["residuals"] = number_array(r.residuals);
  Json entropy;
  entropy["full"] = relative_entropy(r.posterior, prior, EntropyForm::full);
  entropy["normalized"] = relative_entropy(r.posterior, prior, EntropyForm::normalized);
  j["entropy"] = std::move(entropy);
  j["residual_trace"] = number_array(r.trace);
  return j;
}

Json to_json(const QuantumReport& r, const DensityMatrix& prior, std::string_view mode) {
  Json j = report_head(r, mode);
  j["posterior"] = to_json(r.posterior.matrix());
  j["residuals"] = number_array(r.residuals);
  Json entropy;
  entropy["full"] = quantum_relative_entropy(r.posterior, prior, EntropyForm::full);
  entropy["umegaki"] = quantum_relative_entropy(r.posterior, prior, EntropyForm::umegaki);
  j["entropy"] = std::move(entropy);
  j["residual_trace"] = number_array(r.trace);
  return j;
}

Json to_json(const verification::PropertyResult& r) {
  Json j;
  j["name"] = r.name;
  j["max_deviation"] = r.max_deviation;
  j["threshold"] = r.threshold;
  j["passed"] = r.passed;
  j["detail"] = r.detail;
  return j;
}

Json to_json(const std::vector<verification::PropertyResult>& results) {
  Json a = Json::array();
  for (const auto& r : results) a.push_back(to_json(r));
  return a;
}

namespace {

void write(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out << ",\n";
        first = false;
        out << inner << Json(key).dump() << ": ";
        write(out, value, indent + 1);
      }
      out << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(),
                                     [](const Json& e) { return e.is_structured(); });
      if (flat) {
        out << "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out << ", ";
          write(out, j[k], indent + 1);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out << ",\n";
        out << inner;
        write(out, j[k], indent + 1);
      }
      out << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out << "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out << buf;
      return;
    }
    default:
      out << j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::ostringstream out;
  write(out, j, 0);
  out << "\n";
  return out.str();
}

}  // namespace maxent::io
