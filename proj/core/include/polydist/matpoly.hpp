#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace polydist {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Square matrix polynomial A_m z^m + ... + A_1 z + A_0.
///
/// Invariants enforced on construction: all coefficients are square with the
/// same dimension, and the leading coefficient is nonsingular in the sense
/// that its smallest singular value exceeds 1e-12 * ||A_m||_2.
class MatrixPolynomial {
public:
  explicit MatrixPolynomial(std::vector<Matrix> coeffs);

  int dim() const noexcept { return n_; }
  int degree() const noexcept { return m_; }
  const Matrix& coeff(int j) const { return coeffs_.at(static_cast<size_t>(j)); }
  const std::vector<Matrix>& coeffs() const noexcept { return coeffs_; }

private:
  std::vector<Matrix> coeffs_;
  int n_ = 0;
  int m_ = 0;
};

/// Horner evaluation of P(z) on matrix coefficients.
Matrix evaluate(const MatrixPolynomial& p, Complex z);

/// Termwise derivative, degree m-1; the leading coefficient m*A_m stays
/// nonsingular. Degree-0 input is rejected.
MatrixPolynomial derivative(const MatrixPolynomial& p);

/// Nonnegative perturbation weights w_0..w_m with w_0 > 0.
class WeightSet {
public:
  explicit WeightSet(std::vector<double> weights);
  static WeightSet ones(int degree);

  int degree() const noexcept { return static_cast<int>(weights_.size()) - 1; }
  double weight(int j) const { return weights_.at(static_cast<size_t>(j)); }
  const std::vector<double>& weights() const noexcept { return weights_; }

private:
  std::vector<double> weights_;
};

/// w(t) = sum_j w_j t^j for t >= 0; always >= w_0 > 0.
double weight_value(const WeightSet& w, double t);

/// w'(t) for t >= 0.
double weight_slope(const WeightSet& w, double t);

/// (w'(|mu|) / w(|mu|)) * conj(mu)/|mu|, with the convention phi = 0 at mu = 0.
Complex phi(const WeightSet& w, Complex mu);

struct NormalityWitness {
  enum class Kind { coefficient, sample_point };
  Kind kind = Kind::coefficient;
  int coeff_index = -1;  // valid when kind == coefficient
  Complex point;         // valid when kind == sample_point
  double residual = 0.0; // ||X X* - X* X||_2 / ||X||_2^2
};

struct WeakNormalityReport {
  bool weakly_normal = false;
  NormalityWitness worst;
};

/// Finite normality certificate: every coefficient and P(z_k) at the m+1
/// roots of unity z_k = exp(2 pi i k / (m+1)) must commute with its adjoint
/// to relative tolerance tol. Sufficient for testing; a false verdict is a
/// result, not an error.
WeakNormalityReport is_weakly_normal(const MatrixPolynomial& p, double tol = 1e-10);

}  // namespace polydist
