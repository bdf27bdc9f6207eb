#include "polydist/pencil.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "polydist/errors.hpp"

namespace polydist {

namespace {

Eigen::VectorXd singvals(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix>(a).singularValues();
}

SingularTriplet make_triplet(const SvdResult& d, int n, Eigen::Index idx) {
  SingularTriplet t;
  t.s = d.singular_values(idx);
  t.u = d.U.col(idx);
  t.v = d.V.col(idx);
  t.u1 = t.u.head(n);
  t.u2 = t.u.tail(n);
  t.v1 = t.v.head(n);
  t.v2 = t.v.tail(n);
  return t;
}

}  // namespace

Matrix u_pair_matrix(const SingularTriplet& t) {
  Matrix m(t.u1.size(), 2);
  m.col(0) = t.u1;
  m.col(1) = t.u2;
  return m;
}

Matrix v_pair_matrix(const SingularTriplet& t) {
  Matrix m(t.v1.size(), 2);
  m.col(0) = t.v1;
  m.col(1) = t.v2;
  return m;
}

Matrix build_F(const MatrixPolynomial& p, Complex mu, double gamma) {
  if (!(gamma >= 0.0)) throw Error("pencil.gamma", "gamma must be nonnegative");
  const int n = p.dim();
  const Matrix pm = evaluate(p, mu);
  const Matrix pp = evaluate(derivative(p), mu);
  Matrix f = Matrix::Zero(2 * n, 2 * n);
  f.topLeftCorner(n, n) = pm;
  f.bottomRightCorner(n, n) = pm;
  f.bottomLeftCorner(n, n) = gamma * pp;
  return f;
}

std::pair<SingularTriplet, SingularTriplet> sigma_pair(const MatrixPolynomial& p,
                                                       Complex mu, double gamma) {
  const int n = p.dim();
  if (n < 2)
    throw Error("pencil.dimension", "the pencil construction needs matrix dimension n >= 2");
  const SvdResult d = svd(build_F(p, mu, gamma));
  return {make_triplet(d, n, 2 * n - 2), make_triplet(d, n, 2 * n - 3)};
}

SlopeValue singular_slope(const SingularTriplet& t, const MatrixPolynomial& p, Complex mu) {
  const Matrix pp = evaluate(derivative(p), mu);
  const Complex w = t.u2.dot(pp * t.v1);
  return {w.real(), std::abs(w.imag())};
}

std::vector<CurveSample> sample_curve(const MatrixPolynomial& p, Complex mu,
                                      double gamma_lo, double gamma_hi, int count) {
  if (!(gamma_lo >= 0.0) || !(gamma_hi > gamma_lo))
    throw Error("pencil.range", "curve range needs 0 <= gamma_lo < gamma_hi");
  if (count < 2) throw Error("pencil.range", "curve needs at least 2 samples");
  const int n = p.dim();
  if (n < 2)
    throw Error("pencil.dimension", "the pencil construction needs matrix dimension n >= 2");

  const double step = (gamma_hi - gamma_lo) / (count - 1);
  std::vector<CurveSample> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double g = (i == count - 1) ? gamma_hi : gamma_lo + step * i;
    const Eigen::VectorXd sv = singvals(build_F(p, mu, g));
    out.push_back({g, sv(2 * n - 3), sv(2 * n - 2)});
  }
  return out;
}

GammaStarRecord maximize_gamma(const MatrixPolynomial& p, Complex mu,
                               const GammaSearchOptions& opts) {
  const int n = p.dim();
  if (n < 2)
    throw Error("pencil.dimension", "the pencil construction needs matrix dimension n >= 2");
  if (!(opts.gamma_max > 0.0) || opts.grid < 3 || !(opts.gamma_tol > 0.0))
    throw Error("pencil.options", "gamma_max > 0, grid >= 3 and gamma_tol > 0 required");

  const Eigen::Index lo_idx = 2 * n - 2;  // 0-based position of s_{2n-1}
  auto f = [&](double g) { return singvals(build_F(p, mu, g))(lo_idx); };

  // Coarse scan; grow the window while the best sample sits at the right end.
  double gmax = opts.gamma_max;
  int best = -1;
  std::vector<double> gs(static_cast<size_t>(opts.grid));
  std::vector<double> fs(static_cast<size_t>(opts.grid));
  for (int doubling = 0; doubling <= opts.max_doublings; ++doubling) {
    for (int i = 0; i < opts.grid; ++i) {
      gs[static_cast<size_t>(i)] = gmax * i / (opts.grid - 1);
      fs[static_cast<size_t>(i)] = f(gs[static_cast<size_t>(i)]);
    }
    best = static_cast<int>(std::max_element(fs.begin(), fs.end()) - fs.begin());
    if (best < opts.grid - 1) break;
    if (doubling == opts.max_doublings)
      throw Error("gamma.unbounded",
                  "the coarse maximum kept sitting at the right endpoint up to gamma_max = " +
                      std::to_string(gmax));
    gmax *= 2.0;
  }

  // Golden-section refinement of the bracket around the best sample.
  double a = (best > 0) ? gs[static_cast<size_t>(best - 1)] : 0.0;
  double b = gs[static_cast<size_t>(best + 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > opts.gamma_tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double gamma_star = 0.5 * (a + b);

  // Slope polish: value comparisons go noise-blind within O(sqrt(eps)) of a
  // smooth maximum, while the branch derivative Re(u2* P'(mu) v1) changes
  // sign across the maximizer (continuously at a smooth maximum, by a jump
  // at a crossing) and localizes it to machine precision.
  {
    auto slope_at = [&](double g) {
      const SvdResult d = svd(build_F(p, mu, g));
      return singular_slope(make_triplet(d, n, 2 * n - 2), p, mu).slope;
    };
    const double w = std::max(1e-6, 1e-6 * gamma_star);
    double lo = std::max(0.0, gamma_star - w);
    double hi = gamma_star + w;
    if (slope_at(lo) > 0.0 && slope_at(hi) < 0.0) {
      for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (slope_at(mid) > 0.0 ? lo : hi) = mid;
      }
      gamma_star = 0.5 * (lo + hi);
    }
  }

  const SvdResult dec = svd(build_F(p, mu, gamma_star));
  GammaStarRecord rec;
  rec.gamma_star = gamma_star;
  rec.triplet_a = make_triplet(dec, n, 2 * n - 2);
  rec.triplet_b = make_triplet(dec, n, 2 * n - 3);
  rec.s_star = rec.triplet_a.s;
  rec.s_next = dec.singular_values(2 * n - 4);

  if (rec.s_star <= 1e-12 * dec.singular_values(0))
    throw Error("gamma.already_multiple",
                "s* is numerically zero: mu is already a multiple eigenvalue of P "
                "(e.g. geometric multiplicity >= 2); the distance is zero");
  if (gamma_star <= 100.0 * opts.gamma_tol)
    throw Error("gamma.at_zero",
                "s_{2n-1} attains its maximum at gamma = 0; the construction requires "
                "gamma* > 0");

  rec.gap = std::abs(rec.triplet_b.s - rec.triplet_a.s);
  rec.coalesced = rec.gap <= opts.coalescence_rtol * rec.s_star;
  const SlopeValue sa = singular_slope(rec.triplet_a, p, mu);
  const SlopeValue sb = singular_slope(rec.triplet_b, p, mu);
  rec.slope_a = sa.slope;
  rec.slope_b = sb.slope;
  rec.imag_residue_a = sa.imag_residue;
  rec.imag_residue_b = sb.imag_residue;
  return rec;
}

}  // namespace polydist
