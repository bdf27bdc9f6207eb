#include "polydist/cli/pipeline.hpp"

#include <cmath>

#include "polydist/errors.hpp"

namespace polydist::cli {

AnalysisResult run_analysis(const ProblemSpec& spec, const AnalysisOptions& opts) {
  if (!spec.mu) throw Error("input.mu", "problem field 'mu': missing");
  const MatrixPolynomial& P = spec.P;
  const Complex mu = *spec.mu;

  const HypothesisReport hyp = precheck_hypotheses(P, mu);
  const WeakNormalityReport normality = is_weakly_normal(P);
  const GammaStarRecord record = maximize_gamma(P, mu, spec.gamma);

  const LemmaDiagnostics pre = diagnose(record.triplet_a, P, mu);
  const double tol = diagnostic_tolerance(P, mu);

  bool take_corrected = false;
  switch (spec.mode) {
    case Mode::force_single_pair: take_corrected = false; break;
    case Mode::force_corrected: take_corrected = true; break;
    case Mode::automatic:
      take_corrected = record.coalesced || violates_lemma(pre, tol);
      break;
  }

  std::optional<CorrectionResult> correction;
  Matrix u_mat, v_mat;
  if (take_corrected) {
    correction = correct_pair(record, P, mu, spec.gamma.coalescence_rtol);
    u_mat = correction->U_mat;
    v_mat = correction->V_mat;
  } else {
    u_mat = u_pair_matrix(record.triplet_a);
    v_mat = v_pair_matrix(record.triplet_a);
  }

  PerturbationResult pert = build_perturbation(record.s_star, u_mat, v_mat,
                                               record.gamma_star, P, spec.weights, mu,
                                               opts.verify_tol);

  const double source_slope = std::abs(det_and_slope(P, mu).slope);
  const double vs_source =
      pert.residuals.det_slope_abs / std::max(1.0, source_slope);
  const bool verified =
      pert.residuals.verdict == MultiplicityVerdict::multiple_defective ||
      pert.residuals.verdict == MultiplicityVerdict::multiple_semisimple;

  return AnalysisResult{hyp,
                        normality,
                        record,
                        spec.mode,
                        take_corrected ? "corrected" : "single-pair",
                        pre,
                        tol,
                        std::move(correction),
                        std::move(pert),
                        source_slope,
                        vs_source,
                        verified};
}

}  // namespace polydist::cli
