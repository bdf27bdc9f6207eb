#include "polydist/perturbation.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "polydist/errors.hpp"

namespace polydist {

DeltaResult build_delta(double s_star, const Matrix& u_mat, const Matrix& v_mat,
                        double gamma_star, Complex phi_value) {
  if (!(gamma_star > 0.0))
    throw Error("perturbation.gamma", "the construction requires gamma* > 0");
  if (u_mat.cols() != 2 || v_mat.cols() != 2 || u_mat.rows() != v_mat.rows())
    throw Error("perturbation.shape", "U and V must both be n x 2");
  if (v_mat.norm() == 0.0)
    throw Error("perturbation.v_zero", "V(gamma*) is zero; no perturbation direction");

  Eigen::Matrix2cd k;
  k << Complex(1.0, 0.0), -gamma_star * phi_value, Complex(0.0, 0.0), Complex(1.0, 0.0);
  const PinvResult pv = pinv_thin(v_mat);
  return {-s_star * u_mat * k * pv.pinv, pv.truncated};
}

std::vector<Matrix> delta_coefficients(const Matrix& delta, const WeightSet& w, Complex mu) {
  const double t = std::abs(mu);
  const double wt = weight_value(w, t);
  const Complex unit = (mu == Complex(0.0, 0.0)) ? Complex(0.0, 0.0) : std::conj(mu) / t;

  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(w.degree()) + 1);
  Complex power{1.0, 0.0};  // (conj(mu)/|mu|)^j with 0^0 = 1
  for (int j = 0; j <= w.degree(); ++j) {
    out.push_back((w.weight(j) / wt) * power * delta);
    power *= unit;
  }
  return out;
}

MatrixPolynomial build_Q(const MatrixPolynomial& p, const std::vector<Matrix>& delta_coeffs) {
  if (static_cast<int>(delta_coeffs.size()) != p.degree() + 1)
    throw Error("perturbation.shape", "need one perturbation per coefficient A_0..A_m");

  std::vector<Matrix> coeffs;
  coeffs.reserve(delta_coeffs.size());
  for (int j = 0; j <= p.degree(); ++j) {
    const Matrix& d = delta_coeffs[static_cast<size_t>(j)];
    if (d.rows() != p.dim() || d.cols() != p.dim())
      throw Error("perturbation.shape",
                  "perturbation " + std::to_string(j) + " does not match the coefficient size");
    coeffs.push_back(p.coeff(j) + d);
  }

  const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(coeffs.back()).singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > 1e-12 * smax))
    throw Error("perturbation.leading_singular",
                "perturbed leading coefficient is numerically singular (smin = " +
                    std::to_string(smin) + ", smax = " + std::to_string(smax) + ")");
  return MatrixPolynomial(std::move(coeffs));
}

const char* to_string(MultiplicityVerdict v) {
  switch (v) {
    case MultiplicityVerdict::not_an_eigenvalue: return "not-an-eigenvalue";
    case MultiplicityVerdict::simple_eigenvalue: return "simple-eigenvalue";
    case MultiplicityVerdict::multiple_defective: return "multiple (defective)";
    case MultiplicityVerdict::multiple_semisimple: return "multiple (semisimple-like)";
  }
  return "unknown";
}

VerificationReport verify_multiple(const MatrixPolynomial& q, Complex mu, double tol) {
  if (!(tol > 0.0)) throw Error("verify.tol", "tolerance must be positive");

  const Matrix qm = evaluate(q, mu);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(qm).singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);

  VerificationReport r;
  r.tol = tol;
  r.smin_ratio = smax > 0.0 ? smin / smax : 0.0;

  const DetSlope ds = det_and_slope(q, mu);
  r.det_abs = std::abs(ds.det);
  r.det_slope_abs = std::abs(ds.slope);
  const double qp_norm =
      q.degree() >= 1 ? spectral_norm(evaluate(derivative(q), mu)) : 0.0;
  r.slope_scale = std::max(1.0, spectral_norm(adjugate(qm)) * qp_norm);
  r.slope_residual = r.det_slope_abs / r.slope_scale;

  int mult = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) < tol * smax || smax == 0.0) ++mult;
  r.geometric_multiplicity = mult;

  const bool is_eigenvalue = r.smin_ratio <= tol;
  const bool slope_vanishes = r.slope_residual <= tol;
  if (!is_eigenvalue)
    r.verdict = MultiplicityVerdict::not_an_eigenvalue;
  else if (!slope_vanishes)
    r.verdict = MultiplicityVerdict::simple_eigenvalue;
  else
    r.verdict = mult >= 2 ? MultiplicityVerdict::multiple_semisimple
                          : MultiplicityVerdict::multiple_defective;
  return r;
}

HypothesisReport precheck_hypotheses(const MatrixPolynomial& p, Complex mu) {
  HypothesisReport r;

  const Matrix pp = evaluate(derivative(p), mu);
  const Eigen::VectorXd spp = Eigen::JacobiSVD<Matrix>(pp).singularValues();
  r.pprime_smin_ratio = spp(0) > 0.0 ? spp(spp.size() - 1) / spp(0) : 0.0;
  r.pprime_ok = r.pprime_smin_ratio > 1e-10;

  const Matrix pm = evaluate(p, mu);
  const Eigen::VectorXd sp = Eigen::JacobiSVD<Matrix>(pm).singularValues();
  r.p_smin = sp(sp.size() - 1);
  r.p_smin_ratio = sp(0) > 0.0 ? r.p_smin / sp(0) : 0.0;
  r.mu_is_eigenvalue_of_p = r.p_smin_ratio <= 1e-10;
  return r;
}

PerturbationResult build_perturbation(double s_star, const Matrix& u_mat,
                                      const Matrix& v_mat, double gamma_star,
                                      const MatrixPolynomial& p, const WeightSet& w,
                                      Complex mu, double verify_tol) {
  if (w.degree() != p.degree())
    throw Error("perturbation.weights_degree",
                "weight set must provide one weight per coefficient A_0..A_m");

  DeltaResult d = build_delta(s_star, u_mat, v_mat, gamma_star, phi(w, mu));
  std::vector<Matrix> coeffs = delta_coefficients(d.delta, w, mu);
  MatrixPolynomial q = build_Q(p, coeffs);
  VerificationReport residuals = verify_multiple(q, mu, verify_tol);

  std::vector<double> norms;
  norms.reserve(coeffs.size());
  for (const Matrix& c : coeffs) norms.push_back(spectral_norm(c));
  const double delta_norm = spectral_norm(d.delta);

  return PerturbationResult{std::move(d.delta), std::move(coeffs), std::move(q),
                            residuals,          delta_norm,        std::move(norms),
                            s_star,             d.v_rank_deficient};
}

}  // namespace polydist
