#pragma once

#include <utility>

#include "polydist/densela.hpp"

namespace polydist {

/// One singular value of F[P(mu);gamma] together with its 2n-dimensional
/// left/right vectors and their n-dimensional halves.
struct SingularTriplet {
  double s = 0.0;
  Vector u, v;    // dimension 2n
  Vector u1, u2;  // top/bottom halves of u
  Vector v1, v2;  // top/bottom halves of v
};

/// The n x 2 matrices [u1 u2] and [v1 v2] of a singular pair.
Matrix u_pair_matrix(const SingularTriplet& t);
Matrix v_pair_matrix(const SingularTriplet& t);

/// [[P(mu), 0], [gamma P'(mu), P(mu)]], size 2n x 2n. Requires gamma >= 0
/// and degree >= 1.
Matrix build_F(const MatrixPolynomial& p, Complex mu, double gamma);

/// Triplets for the (2n-1)-th and (2n-2)-th largest singular values of F,
/// in that order. Requires n >= 2.
std::pair<SingularTriplet, SingularTriplet> sigma_pair(const MatrixPolynomial& p,
                                                       Complex mu, double gamma);

struct SlopeValue {
  double slope = 0.0;         // Re(u2* P'(mu) v1) = ds/dgamma along the branch
  double imag_residue = 0.0;  // |Im(u2* P'(mu) v1)|, diagnostic only
};

/// Derivative of the singular value with respect to gamma, expressed through
/// the singular vectors. The value is real in exact arithmetic; the imaginary
/// residue is reported rather than enforced since vector phase conventions
/// can leave harmless residue.
SlopeValue singular_slope(const SingularTriplet& t, const MatrixPolynomial& p, Complex mu);

struct CurveSample {
  double gamma = 0.0;
  double s_hi = 0.0;  // s_{2n-2}
  double s_lo = 0.0;  // s_{2n-1}, always <= s_hi
};

/// Uniform samples of the two singular-value branches on [gamma_lo, gamma_hi].
/// Requires 0 <= gamma_lo < gamma_hi and count >= 2.
std::vector<CurveSample> sample_curve(const MatrixPolynomial& p, Complex mu,
                                      double gamma_lo, double gamma_hi, int count);

struct GammaSearchOptions {
  double gamma_max = 10.0;  // doubled up to 2^max_doublings times while the
                            // coarse maximum sits at the right endpoint
  int grid = 200;
  double gamma_tol = 1e-10;
  double coalescence_rtol = 1e-6;  // coalesced when gap <= rtol * s*
  int max_doublings = 10;
};

struct GammaStarRecord {
  double gamma_star = 0.0;
  double s_star = 0.0;
  SingularTriplet triplet_a;  // index 2n-1
  SingularTriplet triplet_b;  // index 2n-2
  bool coalesced = false;
  double gap = 0.0;           // |s_{2n-2} - s_{2n-1}| at gamma*
  double slope_a = 0.0;
  double slope_b = 0.0;
  double imag_residue_a = 0.0;
  double imag_residue_b = 0.0;
  double s_next = 0.0;        // s_{2n-3} at gamma*, guards >2-fold coalescence
};

/// Maximize s_{2n-1}(F[P(mu);gamma]) over gamma >= 0: coarse grid scan of
/// [0, gamma_max] followed by golden-section refinement of the bracket
/// around the best sample. A rise-then-fall shape is assumed; the coarse
/// grid guards the bracket.
///
/// Errors: s* <= 1e-12 ||F||_2 means mu is numerically already a multiple
/// eigenvalue of P (distance zero); a maximum at gamma = 0 within tolerance
/// is the degenerate case the construction excludes (gamma* > 0 required).
GammaStarRecord maximize_gamma(const MatrixPolynomial& p, Complex mu,
                               const GammaSearchOptions& opts = {});

}  // namespace polydist
