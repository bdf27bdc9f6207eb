#include "polydist/matpoly.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "polydist/errors.hpp"

namespace polydist {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::VectorXd singular_values_of(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix>(a).singularValues();
}

double norm2(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values_of(a)(0);
}

}  // namespace

MatrixPolynomial::MatrixPolynomial(std::vector<Matrix> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty())
    throw Error("matpoly.empty", "matrix polynomial needs at least one coefficient");
  const Eigen::Index n = coeffs_.front().rows();
  if (n < 1) throw Error("matpoly.dimension", "coefficients must be nonempty square matrices");
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    const Matrix& c = coeffs_[j];
    if (c.rows() != n || c.cols() != n)
      throw Error("matpoly.dimension",
                  "coefficient " + std::to_string(j) + " is not " + std::to_string(n) + "x" +
                      std::to_string(n));
    if (!c.allFinite())
      throw Error("matpoly.nonfinite",
                  "coefficient " + std::to_string(j) + " has non-finite entries");
  }
  n_ = static_cast<int>(n);
  m_ = static_cast<int>(coeffs_.size()) - 1;

  const Eigen::VectorXd sv = singular_values_of(coeffs_.back());
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > 1e-12 * smax))
    throw Error("matpoly.leading_singular",
                "leading coefficient is numerically singular (smin = " + std::to_string(smin) +
                    ", ||A_m||_2 = " + std::to_string(smax) + ")");
}

Matrix evaluate(const MatrixPolynomial& p, Complex z) {
  Matrix acc = p.coeffs().back();
  for (int j = p.degree() - 1; j >= 0; --j) acc = (acc * z + p.coeff(j)).eval();
  return acc;
}

MatrixPolynomial derivative(const MatrixPolynomial& p) {
  if (p.degree() < 1)
    throw Error("matpoly.degree", "derivative of a degree-0 matrix polynomial is rejected");
  std::vector<Matrix> c;
  c.reserve(static_cast<size_t>(p.degree()));
  for (int j = 1; j <= p.degree(); ++j) c.push_back(static_cast<double>(j) * p.coeff(j));
  return MatrixPolynomial(std::move(c));
}

WeightSet::WeightSet(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error("weights.empty", "weight set needs at least w_0");
  if (!(weights_.front() > 0.0)) throw Error("weights.w0", "w_0 must be positive");
  for (size_t j = 0; j < weights_.size(); ++j) {
    if (!(weights_[j] >= 0.0) || !std::isfinite(weights_[j]))
      throw Error("weights.negative", "w_" + std::to_string(j) + " must be finite and >= 0");
  }
}

WeightSet WeightSet::ones(int degree) {
  return WeightSet(std::vector<double>(static_cast<size_t>(degree) + 1, 1.0));
}

double weight_value(const WeightSet& w, double t) {
  if (t < 0.0) throw Error("weights.domain", "weight polynomial is evaluated at t >= 0 only");
  double acc = 0.0;
  for (int j = w.degree(); j >= 0; --j) acc = acc * t + w.weight(j);
  return acc;
}

double weight_slope(const WeightSet& w, double t) {
  if (t < 0.0) throw Error("weights.domain", "weight polynomial is evaluated at t >= 0 only");
  double acc = 0.0;
  for (int j = w.degree(); j >= 1; --j) acc = acc * t + static_cast<double>(j) * w.weight(j);
  return acc;
}

Complex phi(const WeightSet& w, Complex mu) {
  if (mu == Complex(0.0, 0.0)) return {0.0, 0.0};
  const double t = std::abs(mu);
  return (weight_slope(w, t) / weight_value(w, t)) * (std::conj(mu) / t);
}

namespace {

double normality_residual(const Matrix& x) {
  const double nx = norm2(x);
  if (nx == 0.0) return 0.0;
  return norm2(x * x.adjoint() - x.adjoint() * x) / (nx * nx);
}

}  // namespace

WeakNormalityReport is_weakly_normal(const MatrixPolynomial& p, double tol) {
  if (!(tol > 0.0)) throw Error("normality.tol", "tolerance must be positive");

  WeakNormalityReport rep;
  double worst = -1.0;
  for (int j = 0; j <= p.degree(); ++j) {
    const double r = normality_residual(p.coeff(j));
    if (r > worst) {
      worst = r;
      rep.worst = {NormalityWitness::Kind::coefficient, j, Complex{}, r};
    }
  }
  const int samples = p.degree() + 1;
  for (int k = 0; k < samples; ++k) {
    const double arg = 2.0 * kPi * k / samples;
    const Complex z{std::cos(arg), std::sin(arg)};
    const double r = normality_residual(evaluate(p, z));
    if (r > worst) {
      worst = r;
      rep.worst = {NormalityWitness::Kind::sample_point, -1, z, r};
    }
  }
  rep.weakly_normal = worst <= tol;
  return rep;
}

}  // namespace polydist
