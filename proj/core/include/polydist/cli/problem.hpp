#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "polydist/matpoly.hpp"
#include "polydist/pencil.hpp"

namespace polydist::cli {

enum class Mode { automatic, force_single_pair, force_corrected };

std::string to_string(Mode m);

/// Accepts "auto", "force-single-pair"/"single", "force-corrected"/"corrected".
std::optional<Mode> mode_from_string(const std::string& s);

/// A problem file: dimensions, coefficients A_0..A_m (complex entries as
/// [re, im] pairs, row-major per coefficient), optional weights (default all
/// ones), mu, gamma-search options and mode. Parse errors name the offending
/// field.
struct ProblemSpec {
  MatrixPolynomial P;
  WeightSet weights;
  std::optional<Complex> mu;
  GammaSearchOptions gamma;
  Mode mode = Mode::automatic;
};

ProblemSpec parse_problem(const nlohmann::json& j);
ProblemSpec load_problem_file(const std::string& path);

}  // namespace polydist::cli
