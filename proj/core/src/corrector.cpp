#include "polydist/corrector.hpp"

#include <cmath>

#include "polydist/errors.hpp"

namespace polydist {

LemmaDiagnostics diagnose(const SingularTriplet& t, const MatrixPolynomial& p, Complex mu) {
  const SlopeValue sv = singular_slope(t, p, mu);
  const Matrix u = u_pair_matrix(t);
  const Matrix v = v_pair_matrix(t);
  LemmaDiagnostics d;
  d.slope = sv.slope;
  d.imag_residue = sv.imag_residue;
  d.uv_gram_gap = spectral_norm(u.adjoint() * u - v.adjoint() * v);
  return d;
}

double diagnostic_tolerance(const MatrixPolynomial& p, Complex mu) {
  return 1e-6 * std::max(1.0, spectral_norm(evaluate(derivative(p), mu)));
}

bool violates_lemma(const LemmaDiagnostics& d, double tol) {
  return std::hypot(d.slope, d.imag_residue) > tol || d.uv_gram_gap > tol;
}

MixForm build_M(const SingularTriplet& a, const SingularTriplet& b,
                const MatrixPolynomial& p, Complex mu) {
  const Matrix pp = evaluate(derivative(p), mu);
  Eigen::Matrix2cd m;
  m(0, 0) = a.u2.dot(pp * a.v1);
  m(0, 1) = a.u2.dot(pp * b.v1);
  m(1, 0) = b.u2.dot(pp * a.v1);
  m(1, 1) = b.u2.dot(pp * b.v1);

  const double nm = spectral_norm(m);
  const double res = spectral_norm(m - m.adjoint());
  if (nm > 0.0 && res > 1e-6 * nm)
    throw Error("corrector.pairing_inconsistent",
                "mixing form is far from Hermitian; branch pairing inconsistent "
                "(u/v vectors likely mispaired)");
  return {0.5 * (m + m.adjoint()), res};
}

NullFormSolution solve_null_form(const Eigen::Matrix2cd& m) {
  const HermEig2 eig = herm_eig_2x2(m);
  const double scale = std::max(std::abs(eig.lambda1), std::abs(eig.lambda2));
  if (eig.lambda1 * eig.lambda2 > 1e-10 * scale * scale)
    throw Error("corrector.definite_form",
                "the mixing form is definite; coalescence correction inapplicable");

  NullFormSolution s;
  s.M = 0.5 * (m + m.adjoint());
  s.lambda1 = eig.lambda1;
  s.lambda2 = eig.lambda2;
  s.eigvecs = eig.U;

  const double denom = std::abs(eig.lambda1) + std::abs(eig.lambda2);
  if (denom == 0.0) {
    // Entire form vanishes: every unit vector solves it.
    s.degenerate = true;
    s.xi = 1.0;
    s.eta = 0.0;
  } else {
    s.xi = std::sqrt(std::abs(eig.lambda2) / denom);
    s.eta = std::sqrt(std::abs(eig.lambda1) / denom);
  }
  const Eigen::Vector2cd ab = s.eigvecs * Eigen::Vector2cd(s.xi, s.eta);
  s.alpha = ab(0);
  s.beta = ab(1);
  s.form_residual = std::abs((ab.adjoint() * s.M * ab)(0, 0));
  return s;
}

CorrectionResult combine(const NullFormSolution& sol, const SingularTriplet& a,
                         const SingularTriplet& b, const MatrixPolynomial& p, Complex mu) {
  const int n = static_cast<int>(a.u1.size());

  SingularTriplet c;
  c.s = a.s;
  c.u = sol.alpha * a.u + sol.beta * b.u;
  c.v = sol.alpha * a.v + sol.beta * b.v;
  c.u.normalize();
  c.v.normalize();
  c.u1 = c.u.head(n);
  c.u2 = c.u.tail(n);
  c.v1 = c.v.head(n);
  c.v2 = c.v.tail(n);

  CorrectionResult r;
  r.M = sol.M;
  r.lambda1 = sol.lambda1;
  r.lambda2 = sol.lambda2;
  r.xi = sol.xi;
  r.eta = sol.eta;
  r.alpha = sol.alpha;
  r.beta = sol.beta;
  r.form_residual = sol.form_residual;
  r.combined = c;
  r.U_mat = u_pair_matrix(c);
  r.V_mat = v_pair_matrix(c);
  r.diagnostics = diagnose(c, p, mu);

  const double tol = 1e-8 * spectral_norm(evaluate(derivative(p), mu));
  if (std::hypot(r.diagnostics.slope, r.diagnostics.imag_residue) > tol)
    throw Error("corrector.correction_failed",
                "combined pair still has a nonzero slope; correction failed");
  return r;
}

CorrectionResult correct_pair(const GammaStarRecord& rec, const MatrixPolynomial& p,
                              Complex mu, double coalescence_rtol) {
  if (!rec.coalesced)
    throw Error("corrector.not_coalesced",
                "branches are not coalesced at gamma*; the correction expects a double "
                "singular value");
  if (std::abs(rec.s_next - rec.s_star) <= coalescence_rtol * rec.s_star)
    throw Error("corrector.multi_coalescence",
                "more than two singular values coalesce at gamma*; the construction covers "
                "exactly a double coalescence");

  const MixForm mf = build_M(rec.triplet_a, rec.triplet_b, p, mu);
  const NullFormSolution sol = solve_null_form(mf.M);
  CorrectionResult r = combine(sol, rec.triplet_a, rec.triplet_b, p, mu);
  r.herm_residual = mf.herm_residual;
  return r;
}

}  // namespace polydist
