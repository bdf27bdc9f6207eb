#pragma once

#include "polydist/matpoly.hpp"

namespace polydist {

/// Full SVD with singular values in descending order.
///
/// Each pair (u_i, v_i) carries a fixed phase: the largest-modulus entry of
/// v_i is made real positive (ties broken by lowest index) and u_i absorbs
/// the same rotation, so A v_i = s_i u_i is preserved. Columns beyond
/// min(rows, cols) are phase-fixed on their own largest entry.
struct SvdResult {
  Eigen::VectorXd singular_values;
  Matrix U;
  Matrix V;
};

SvdResult svd(const Matrix& a);

/// Largest singular value.
double spectral_norm(const Matrix& a);

struct HermEig2 {
  double lambda1 = 0.0;  // lambda1 >= lambda2
  double lambda2 = 0.0;
  Eigen::Matrix2cd U;    // M = U diag(lambda1, lambda2) U*
};

/// Closed-form eigendecomposition of a 2x2 Hermitian matrix. The input must
/// satisfy ||M - M*||_2 <= 1e-8 ||M||_2; it is Hermitized internally.
HermEig2 herm_eig_2x2(const Eigen::Matrix2cd& m);

struct PinvResult {
  Matrix pinv;             // 2 x n
  int rank = 0;
  bool truncated = false;  // singular values below 1e-12 * s1 were dropped
};

/// Moore-Penrose pseudoinverse of an n x 2 matrix (n >= 2) via SVD with
/// relative truncation; rank deficiency is flagged, not an error.
PinvResult pinv_thin(const Matrix& v);

/// Adjugate (transposed cofactor matrix), each cofactor via an LU
/// determinant. Well defined for singular inputs.
Matrix adjugate(const Matrix& a);

struct DetSlope {
  Complex det;
  Complex slope;  // d/dz det Q(z) at mu = trace(adj(Q(mu)) Q'(mu))
};

DetSlope det_and_slope(const MatrixPolynomial& q, Complex mu);

}  // namespace polydist
