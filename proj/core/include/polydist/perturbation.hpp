#pragma once

#include <optional>

#include "polydist/corrector.hpp"

namespace polydist {

struct DeltaResult {
  Matrix delta;                    // n x n, rank <= 2
  bool v_rank_deficient = false;   // pseudoinverse truncation happened
};

/// Delta = -s* U [[1, -gamma* phi], [0, 1]] pinv(V) with U = U(gamma*),
/// V = V(gamma*). Requires gamma* > 0 and V nonzero.
DeltaResult build_delta(double s_star, const Matrix& u_mat, const Matrix& v_mat,
                        double gamma_star, Complex phi_value);

/// Delta_j = (w_j / w(|mu|)) (conj(mu)/|mu|)^j Delta, with the mu = 0
/// convention (conj(mu)/|mu|)^0 = 1 and all higher powers 0.
std::vector<Matrix> delta_coefficients(const Matrix& delta, const WeightSet& w, Complex mu);

/// Q = P + Delta(.) coefficientwise; the perturbed leading coefficient is
/// re-checked and a numerically singular one is a hard error.
MatrixPolynomial build_Q(const MatrixPolynomial& p, const std::vector<Matrix>& delta_coeffs);

enum class MultiplicityVerdict {
  not_an_eigenvalue,
  simple_eigenvalue,
  multiple_defective,
  multiple_semisimple,
};

const char* to_string(MultiplicityVerdict v);

struct VerificationReport {
  double smin_ratio = 0.0;      // s_min(Q(mu)) / ||Q(mu)||_2
  double det_abs = 0.0;         // |det Q(mu)|
  double det_slope_abs = 0.0;   // |d/dz det Q(z)| at mu
  double slope_scale = 0.0;     // max(1, ||adj(Q(mu))||_2 ||Q'(mu)||_2)
  double slope_residual = 0.0;  // det_slope_abs / slope_scale
  int geometric_multiplicity = 0;
  MultiplicityVerdict verdict = MultiplicityVerdict::not_an_eigenvalue;
  double tol = 0.0;
};

/// Is mu a multiple eigenvalue of Q? (a) relative smallest singular value of
/// Q(mu), (b) determinant-derivative residual (Jacobi's formula), (c) count
/// of singular values below tol * ||Q(mu)||_2 as the geometric-multiplicity
/// estimate. Failed verification is a verdict, not an error. The residuals
/// depend on Q and mu only, so an external re-check reproduces them exactly.
VerificationReport verify_multiple(const MatrixPolynomial& q, Complex mu, double tol = 1e-8);

struct HypothesisReport {
  double pprime_smin_ratio = 0.0;      // s_min(P'(mu)) / ||P'(mu)||_2
  bool pprime_ok = false;              // false when mu is (numerically) an
                                       // eigenvalue of P'
  double p_smin = 0.0;                 // s_min(P(mu))
  double p_smin_ratio = 0.0;
  bool mu_is_eigenvalue_of_p = false;  // distance interpretation changes
};

/// Warnings only; the construction assumes mu is not an eigenvalue of P'.
HypothesisReport precheck_hypotheses(const MatrixPolynomial& p, Complex mu);

struct PerturbationResult {
  Matrix delta;                      // Delta at gamma*
  std::vector<Matrix> delta_coeffs;  // Delta_0 .. Delta_m
  MatrixPolynomial Q;
  VerificationReport residuals;
  double delta_norm = 0.0;                // ||Delta||_2
  std::vector<double> delta_coeff_norms;  // ||Delta_j||_2
  double s_star = 0.0;
  bool v_rank_deficient = false;
};

/// build_delta -> delta_coefficients -> build_Q -> verify_multiple.
PerturbationResult build_perturbation(double s_star, const Matrix& u_mat,
                                      const Matrix& v_mat, double gamma_star,
                                      const MatrixPolynomial& p, const WeightSet& w,
                                      Complex mu, double verify_tol = 1e-8);

}  // namespace polydist
