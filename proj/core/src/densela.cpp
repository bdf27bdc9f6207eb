#include "polydist/densela.hpp"

#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "polydist/errors.hpp"

namespace polydist {

namespace {

Eigen::Index anchor_index(const Vector& x) {
  Eigen::Index best = 0;
  double mod = -1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double m = std::abs(x(i));
    if (m > mod) {
      mod = m;
      best = i;
    }
  }
  return best;
}

// Rotate a column so its largest-modulus entry is real positive.
void fix_column_phase(Matrix& m, Eigen::Index col) {
  const Vector c = m.col(col);
  const Complex a = c(anchor_index(c));
  const double mod = std::abs(a);
  if (mod == 0.0) return;
  m.col(col) *= std::conj(a) / mod;
}

}  // namespace

SvdResult svd(const Matrix& a) {
  if (a.size() == 0) throw Error("densela.empty", "svd of an empty matrix");
  if (!a.allFinite()) throw Error("densela.nonfinite", "svd input has non-finite entries");

  Eigen::JacobiSVD<Matrix> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdResult r{dec.singularValues(), dec.matrixU(), dec.matrixV()};

  const Eigen::Index pairs = r.singular_values.size();
  for (Eigen::Index i = 0; i < pairs; ++i) {
    const Vector v = r.V.col(i);
    const Complex anchor = v(anchor_index(v));
    const double mod = std::abs(anchor);
    if (mod == 0.0) continue;
    const Complex rot = std::conj(anchor) / mod;
    r.V.col(i) *= rot;
    r.U.col(i) *= rot;  // keep A v_i = s_i u_i
  }
  for (Eigen::Index i = pairs; i < r.U.cols(); ++i) fix_column_phase(r.U, i);
  for (Eigen::Index i = pairs; i < r.V.cols(); ++i) fix_column_phase(r.V, i);
  return r;
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (!a.allFinite()) throw Error("densela.nonfinite", "spectral norm of non-finite matrix");
  return Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
}

HermEig2 herm_eig_2x2(const Eigen::Matrix2cd& m) {
  const double nm = spectral_norm(m);
  const double herm_res = spectral_norm(m - m.adjoint());
  if (herm_res > 1e-8 * nm)
    throw Error("densela.not_hermitian", "herm_eig_2x2 input is not Hermitian to tolerance");

  const Eigen::Matrix2cd h = 0.5 * (m + m.adjoint());
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const Complex b = h(0, 1);
  const double mid = 0.5 * (a + d);
  const double disc = std::hypot(0.5 * (a - d), std::abs(b));

  HermEig2 out;
  out.lambda1 = mid + disc;
  out.lambda2 = mid - disc;

  Eigen::Vector2cd x1;
  if (std::abs(b) == 0.0) {
    x1 = (a >= d) ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
  } else {
    // Two algebraically equivalent representations; take the better scaled one.
    Eigen::Vector2cd c1(b, Complex(out.lambda1 - a, 0.0));
    Eigen::Vector2cd c2(Complex(out.lambda1 - d, 0.0), std::conj(b));
    x1 = (c1.norm() >= c2.norm()) ? c1 : c2;
    x1.normalize();
  }
  Eigen::Vector2cd x2(-std::conj(x1(1)), std::conj(x1(0)));

  auto fix = [](Eigen::Vector2cd& x) {
    const Eigen::Index k = std::abs(x(0)) >= std::abs(x(1)) ? 0 : 1;
    const double mod = std::abs(x(k));
    if (mod > 0.0) x *= std::conj(x(k)) / mod;
  };
  fix(x1);
  fix(x2);
  out.U.col(0) = x1;
  out.U.col(1) = x2;
  return out;
}

PinvResult pinv_thin(const Matrix& v) {
  if (v.cols() != 2 || v.rows() < 2)
    throw Error("densela.shape", "pinv_thin expects an n x 2 matrix with n >= 2");

  const SvdResult d = svd(v);
  const double cutoff = 1e-12 * d.singular_values(0);

  PinvResult out;
  out.pinv = Matrix::Zero(2, v.rows());
  for (Eigen::Index i = 0; i < d.singular_values.size(); ++i) {
    const double s = d.singular_values(i);
    if (s > cutoff && s > 0.0) {
      out.pinv += (1.0 / s) * d.V.col(i) * d.U.col(i).adjoint();
      ++out.rank;
    } else {
      out.truncated = true;
    }
  }
  return out;
}

Matrix adjugate(const Matrix& a) {
  const Eigen::Index n = a.rows();
  if (n == 0 || a.cols() != n) throw Error("densela.shape", "adjugate needs a square matrix");
  if (n == 1) return Matrix::Ones(1, 1);

  Matrix adj(n, n);
  Matrix minor(n - 1, n - 1);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      for (Eigen::Index i = 0, mi = 0; i < n; ++i) {
        if (i == r) continue;
        for (Eigen::Index j = 0, mj = 0; j < n; ++j) {
          if (j == c) continue;
          minor(mi, mj) = a(i, j);
          ++mj;
        }
        ++mi;
      }
      const Complex det = minor.determinant();
      adj(c, r) = ((r + c) % 2 == 0) ? det : -det;
    }
  }
  return adj;
}

DetSlope det_and_slope(const MatrixPolynomial& q, Complex mu) {
  const Matrix qm = evaluate(q, mu);
  DetSlope out;
  out.det = qm.determinant();
  if (q.degree() == 0) {
    out.slope = {0.0, 0.0};
    return out;
  }
  const Matrix qp = evaluate(derivative(q), mu);
  out.slope = (adjugate(qm) * qp).trace();
  return out;
}

}  // namespace polydist
