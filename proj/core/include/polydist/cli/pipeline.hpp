#pragma once

#include <optional>
#include <string>

#include "polydist/cli/problem.hpp"
#include "polydist/perturbation.hpp"

namespace polydist::cli {

struct AnalysisOptions {
  double verify_tol = 1e-8;
};

struct AnalysisResult {
  HypothesisReport hypotheses;
  WeakNormalityReport normality;
  GammaStarRecord record;
  Mode mode = Mode::automatic;
  std::string path;                   // "single-pair" or "corrected"
  LemmaDiagnostics pre_diagnostics;   // of the plain 2n-1 pair
  double diag_tol = 0.0;
  std::optional<CorrectionResult> correction;
  PerturbationResult perturbation;
  double source_det_slope_abs = 0.0;  // |d/dz det P| at mu
  double slope_residual_vs_source = 0.0;
  bool verified_multiple = false;
};

/// precheck -> gamma search -> (conditional) correction -> perturbation ->
/// verification. Mode automatic takes the corrected path when the branches
/// coalesce at gamma* or the plain pair violates the usability conditions.
AnalysisResult run_analysis(const ProblemSpec& spec, const AnalysisOptions& opts = {});

}  // namespace polydist::cli
