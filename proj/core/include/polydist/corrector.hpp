#pragma once

#include "polydist/pencil.hpp"

namespace polydist {

/// Residuals of the two usability conditions of a singular pair: the slope
/// u2* P'(mu) v1 must vanish and the n x 2 pair matrices must satisfy
/// U*U = V*V. On weakly normal input the plain pair at gamma* violates both.
struct LemmaDiagnostics {
  double slope = 0.0;
  double imag_residue = 0.0;
  double uv_gram_gap = 0.0;  // ||U*U - V*V||_2
};

LemmaDiagnostics diagnose(const SingularTriplet& t, const MatrixPolynomial& p, Complex mu);

/// 1e-6 * max(1, ||P'(mu)||_2); either diagnostic above this marks the pair
/// as unusable for the perturbation construction.
double diagnostic_tolerance(const MatrixPolynomial& p, Complex mu);

bool violates_lemma(const LemmaDiagnostics& d, double tol);

struct MixForm {
  Eigen::Matrix2cd M;          // Hermitized: (M + M*)/2
  double herm_residual = 0.0;  // ||M - M*||_2 before Hermitization
};

/// M_ab = u2^(a)* P'(mu) v1^(b) over the two coalesced branches. The matrix
/// must be Hermitian up to 1e-6 ||M||_2; a larger residual means the u/v
/// branch pairing is inconsistent and is a hard error.
MixForm build_M(const SingularTriplet& a, const SingularTriplet& b,
                const MatrixPolynomial& p, Complex mu);

struct NullFormSolution {
  Eigen::Matrix2cd M;          // the Hermitian form that was solved
  Complex alpha, beta;         // |alpha|^2 + |beta|^2 = 1
  double xi = 0.0, eta = 0.0;  // real nonnegative
  double lambda1 = 0.0;        // lambda1 >= lambda2
  double lambda2 = 0.0;
  Eigen::Matrix2cd eigvecs;
  double form_residual = 0.0;  // |[conj(alpha) conj(beta)] M [alpha; beta]|
  bool degenerate = false;     // lambda1 = lambda2 = 0; any unit pair works
};

/// Nontrivial null vector of the indefinite Hermitian form:
/// |xi|^2 = |lambda2| / (|lambda1| + |lambda2|),
/// |eta|^2 = |lambda1| / (|lambda1| + |lambda2|),
/// [alpha; beta] = U [xi; eta], so that lambda1 |xi|^2 + lambda2 |eta|^2 = 0.
/// xi and eta are fixed real nonnegative; any relative phase would also give
/// a valid perturbation. Errors when the form is definite.
NullFormSolution solve_null_form(const Eigen::Matrix2cd& m);

struct CorrectionResult {
  Eigen::Matrix2cd M;
  double herm_residual = 0.0;
  double lambda1 = 0.0, lambda2 = 0.0;
  double xi = 0.0, eta = 0.0;
  Complex alpha, beta;
  double form_residual = 0.0;
  SingularTriplet combined;      // alpha * branch_a + beta * branch_b
  Matrix U_mat, V_mat;           // n x 2 pair matrices of the combined pair
  LemmaDiagnostics diagnostics;  // post-correction
};

/// Combine the two coalesced branches with the null-form coefficients. The
/// result is still a singular pair at s* (the branches share the singular
/// value). Errors when the post-correction slope exceeds
/// 1e-8 ||P'(mu)||_2 ("correction failed").
CorrectionResult combine(const NullFormSolution& sol, const SingularTriplet& a,
                         const SingularTriplet& b, const MatrixPolynomial& p, Complex mu);

/// Full correction for a coalesced gamma* record: guards against more than
/// two coalescing singular values, then build_M -> solve_null_form -> combine.
CorrectionResult correct_pair(const GammaStarRecord& rec, const MatrixPolynomial& p,
                              Complex mu, double coalescence_rtol = 1e-6);

}  // namespace polydist
