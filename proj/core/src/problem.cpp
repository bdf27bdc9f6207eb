#include "polydist/cli/problem.hpp"

#include <fstream>

#include "polydist/errors.hpp"

namespace polydist::cli {

using nlohmann::json;

std::string to_string(Mode m) {
  switch (m) {
    case Mode::automatic: return "auto";
    case Mode::force_single_pair: return "force-single-pair";
    case Mode::force_corrected: return "force-corrected";
  }
  return "auto";
}

std::optional<Mode> mode_from_string(const std::string& s) {
  if (s == "auto") return Mode::automatic;
  if (s == "single" || s == "force-single-pair") return Mode::force_single_pair;
  if (s == "corrected" || s == "force-corrected") return Mode::force_corrected;
  return std::nullopt;
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw Error("input." + field, "problem field '" + field + "': " + why);
}

const json& require_field(const json& j, const std::string& name) {
  if (!j.contains(name)) fail(name, "missing");
  return j.at(name);
}

int get_positive_int(const json& j, const std::string& name) {
  const json& v = require_field(j, name);
  if (!v.is_number_integer() || v.get<long long>() < 1) fail(name, "must be a positive integer");
  return v.get<int>();
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "must be a number");
  return v.get<double>();
}

Complex get_complex(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) fail(field, "complex values are [re, im] pairs");
  return {get_number(v[0], field + "[0]"), get_number(v[1], field + "[1]")};
}

Matrix get_matrix(const json& v, int n, const std::string& field) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    fail(field, "expected " + std::to_string(n) + " rows");
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = v[static_cast<size_t>(r)];
    const std::string rfield = field + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      fail(rfield, "expected " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c)
      m(r, c) = get_complex(row[static_cast<size_t>(c)], rfield + "[" + std::to_string(c) + "]");
  }
  return m;
}

}  // namespace

ProblemSpec parse_problem(const json& j) {
  if (!j.is_object()) throw Error("input.format", "problem file must be a JSON object");

  const int n = get_positive_int(j, "n");
  const int m = get_positive_int(j, "m");

  const json& cj = require_field(j, "coefficients");
  if (!cj.is_array() || static_cast<int>(cj.size()) != m + 1)
    fail("coefficients", "expected m+1 = " + std::to_string(m + 1) + " matrices A_0..A_m");
  std::vector<Matrix> coeffs;
  coeffs.reserve(cj.size());
  for (int k = 0; k <= m; ++k)
    coeffs.push_back(
        get_matrix(cj[static_cast<size_t>(k)], n, "coefficients[" + std::to_string(k) + "]"));

  std::vector<double> weights;
  if (j.contains("weights")) {
    const json& wj = j.at("weights");
    if (!wj.is_array() || static_cast<int>(wj.size()) != m + 1)
      fail("weights", "expected m+1 = " + std::to_string(m + 1) + " values");
    for (size_t k = 0; k < wj.size(); ++k)
      weights.push_back(get_number(wj[k], "weights[" + std::to_string(k) + "]"));
  } else {
    weights.assign(static_cast<size_t>(m) + 1, 1.0);
  }

  std::optional<Complex> mu;
  if (j.contains("mu")) mu = get_complex(j.at("mu"), "mu");

  GammaSearchOptions gopts;
  if (j.contains("gamma")) {
    const json& gj = j.at("gamma");
    if (!gj.is_object()) fail("gamma", "must be an object");
    if (gj.contains("max")) {
      gopts.gamma_max = get_number(gj.at("max"), "gamma.max");
      if (!(gopts.gamma_max > 0.0)) fail("gamma.max", "must be positive");
    }
    if (gj.contains("grid")) {
      if (!gj.at("grid").is_number_integer() || gj.at("grid").get<int>() < 3)
        fail("gamma.grid", "must be an integer >= 3");
      gopts.grid = gj.at("grid").get<int>();
    }
    if (gj.contains("tol")) {
      gopts.gamma_tol = get_number(gj.at("tol"), "gamma.tol");
      if (!(gopts.gamma_tol > 0.0)) fail("gamma.tol", "must be positive");
    }
    if (gj.contains("coalescence_rtol")) {
      gopts.coalescence_rtol = get_number(gj.at("coalescence_rtol"), "gamma.coalescence_rtol");
      if (!(gopts.coalescence_rtol > 0.0)) fail("gamma.coalescence_rtol", "must be positive");
    }
  }

  Mode mode = Mode::automatic;
  if (j.contains("mode")) {
    if (!j.at("mode").is_string()) fail("mode", "must be a string");
    const auto parsed = mode_from_string(j.at("mode").get<std::string>());
    if (!parsed) fail("mode", "expected auto, force-single-pair or force-corrected");
    mode = *parsed;
  }

  try {
    MatrixPolynomial P(std::move(coeffs));
    WeightSet w(std::move(weights));
    return ProblemSpec{std::move(P), std::move(w), mu, gopts, mode};
  } catch (const Error& e) {
    const std::string field =
        e.code().rfind("weights", 0) == 0 ? "weights" : "coefficients";
    fail(field, e.what());
  }
}

ProblemSpec load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("input.file", "cannot open problem file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("input.json", "problem file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_problem(j);
}

}  // namespace polydist::cli
