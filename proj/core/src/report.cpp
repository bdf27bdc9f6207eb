#include "polydist/cli/report.hpp"

namespace polydist::cli {

Json json_complex(Complex z) {
  return Json::array({z.real(), z.imag()});
}

Json json_matrix(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(json_complex(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json json_poly(const MatrixPolynomial& p) {
  Json coeffs = Json::array();
  for (const Matrix& c : p.coeffs()) coeffs.push_back(json_matrix(c));
  return coeffs;
}

namespace {

Json json_diagnostics(const LemmaDiagnostics& d) {
  Json j;
  j["slope"] = d.slope;
  j["imag_residue"] = d.imag_residue;
  j["uv_gram_gap"] = d.uv_gram_gap;
  return j;
}

}  // namespace

Json verification_json(const VerificationReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["smin_ratio"] = r.smin_ratio;
  j["det_abs"] = r.det_abs;
  j["det_slope_abs"] = r.det_slope_abs;
  j["slope_scale"] = r.slope_scale;
  j["slope_residual"] = r.slope_residual;
  j["geometric_multiplicity"] = r.geometric_multiplicity;
  j["tol"] = r.tol;
  return j;
}

Json analysis_report(const ProblemSpec& spec, const AnalysisResult& result) {
  Json j;
  j["tool"] = "polydist";
  j["command"] = "analyze";

  Json input;
  input["n"] = spec.P.dim();
  input["m"] = spec.P.degree();
  input["mu"] = json_complex(*spec.mu);
  input["weights"] = spec.weights.weights();
  input["mode"] = to_string(spec.mode);
  j["input"] = std::move(input);

  Json hyp;
  hyp["pprime_smin_ratio"] = result.hypotheses.pprime_smin_ratio;
  hyp["pprime_ok"] = result.hypotheses.pprime_ok;
  hyp["p_smin"] = result.hypotheses.p_smin;
  hyp["p_smin_ratio"] = result.hypotheses.p_smin_ratio;
  hyp["mu_is_eigenvalue_of_p"] = result.hypotheses.mu_is_eigenvalue_of_p;
  hyp["weakly_normal"] = result.normality.weakly_normal;
  hyp["normality_worst_residual"] = result.normality.worst.residual;
  j["hypotheses"] = std::move(hyp);

  const GammaStarRecord& rec = result.record;
  Json gs;
  gs["gamma_star"] = rec.gamma_star;
  gs["s_star"] = rec.s_star;
  gs["gap"] = rec.gap;
  gs["coalesced"] = rec.coalesced;
  gs["slope_a"] = rec.slope_a;
  gs["slope_b"] = rec.slope_b;
  gs["imag_residue_a"] = rec.imag_residue_a;
  gs["imag_residue_b"] = rec.imag_residue_b;
  gs["s_next"] = rec.s_next;
  j["gamma_search"] = std::move(gs);

  j["path"] = result.path;
  j["diagnostic_tolerance"] = result.diag_tol;
  j["pre_diagnostics"] = json_diagnostics(result.pre_diagnostics);

  if (result.correction) {
    const CorrectionResult& c = *result.correction;
    Json corr;
    corr["M"] = json_matrix(c.M);
    corr["herm_residual"] = c.herm_residual;
    corr["eigenvalues"] = Json::array({c.lambda1, c.lambda2});
    corr["xi"] = c.xi;
    corr["eta"] = c.eta;
    corr["alpha"] = json_complex(c.alpha);
    corr["beta"] = json_complex(c.beta);
    corr["form_residual"] = c.form_residual;
    corr["post_diagnostics"] = json_diagnostics(c.diagnostics);
    j["correction"] = std::move(corr);
  }

  const PerturbationResult& pert = result.perturbation;
  Json p;
  p["delta"] = json_matrix(pert.delta);
  p["delta_norm"] = pert.delta_norm;
  p["delta_coeff_norms"] = pert.delta_coeff_norms;
  p["delta_coeffs"] = [&] {
    Json arr = Json::array();
    for (const Matrix& c : pert.delta_coeffs) arr.push_back(json_matrix(c));
    return arr;
  }();
  p["v_rank_deficient"] = pert.v_rank_deficient;
  j["perturbation"] = std::move(p);

  j["Q"] = json_poly(pert.Q);
  j["verification"] = verification_json(pert.residuals);

  Json vs;
  vs["source_det_slope_abs"] = result.source_det_slope_abs;
  vs["slope_residual"] = result.slope_residual_vs_source;
  j["verification_vs_source"] = std::move(vs);

  // s* is the bound from the construction's source; the realized perturbation
  // norms are what Q actually spends.
  Json bounds;
  bounds["s_star"] = pert.s_star;
  bounds["delta_norm"] = pert.delta_norm;
  Json per_coeff = Json::array();
  for (size_t k = 0; k < pert.delta_coeff_norms.size(); ++k) {
    Json e;
    e["omega"] = spec.weights.weight(static_cast<int>(k));
    e["norm"] = pert.delta_coeff_norms[k];
    per_coeff.push_back(std::move(e));
  }
  bounds["per_coefficient"] = std::move(per_coeff);
  j["distance_bounds"] = std::move(bounds);

  return j;
}

Json verify_report(const MatrixPolynomial& q, Complex mu, const VerificationReport& r) {
  Json j;
  j["tool"] = "polydist";
  j["command"] = "verify";
  Json input;
  input["n"] = q.dim();
  input["m"] = q.degree();
  input["mu"] = json_complex(mu);
  j["input"] = std::move(input);
  j["verification"] = verification_json(r);
  return j;
}

Json error_report(const std::string& command, const std::string& code,
                  const std::string& message) {
  Json j;
  j["tool"] = "polydist";
  j["command"] = command;
  Json e;
  e["code"] = code;
  e["message"] = message;
  j["error"] = std::move(e);
  return j;
}

std::string dump_report(const Json& j) {
  return j.dump(2) + "\n";
}

}  // namespace polydist::cli
