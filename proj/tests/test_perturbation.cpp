#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/SVD>

#include "polydist/errors.hpp"
#include "polydist/perturbation.hpp"
#include "testutil.hpp"

using namespace polydist;

namespace {

const Complex kMu{3.0, 0.0};

struct WorkedExample {
  MatrixPolynomial P = testutil::eq2();
  WeightSet w = WeightSet({1, 1, 1});
  GammaStarRecord rec = maximize_gamma(P, kMu);
  CorrectionResult corr = correct_pair(rec, P, kMu);
};

}  // namespace

TEST_CASE("build_delta on the isometry case") {
  auto rng = testutil::make_rng(51);
  const Matrix u = testutil::random_unitary(rng, 5).leftCols(2);
  const DeltaResult d = build_delta(1.0, u, u, 1.0, Complex(0, 0));
  CHECK_FALSE(d.v_rank_deficient);
  CHECK(spectral_norm(d.delta + u * u.adjoint()) <= 1e-12);

  CHECK_THROWS_AS(static_cast<void>(build_delta(1.0, u, u, 0.0, Complex(0, 0))), Error);
  CHECK_THROWS_AS(static_cast<void>(build_delta(1.0, u, Matrix::Zero(5, 2), 1.0, Complex(0, 0))),
                  Error);
}

TEST_CASE("delta_coefficients distribute the core perturbation") {
  auto rng = testutil::make_rng(52);
  const Matrix delta = testutil::randn_matrix(rng, 3, 3);

  const WeightSet ones({1, 1, 1});
  const auto equal = delta_coefficients(delta, ones, {3, 0});
  REQUIRE(equal.size() == 3);
  for (const Matrix& c : equal) CHECK(spectral_norm(c - delta / 13.0) <= 1e-14);

  const WeightSet sparse({1.0, 0.0, 2.0});
  const auto with_zero = delta_coefficients(delta, sparse, {3, 0});
  CHECK(spectral_norm(with_zero[1]) == 0.0);

  const auto at_zero = delta_coefficients(delta, ones, {0, 0});
  CHECK(spectral_norm(at_zero[0] - delta) <= 1e-14);
  CHECK(spectral_norm(at_zero[1]) == 0.0);
  CHECK(spectral_norm(at_zero[2]) == 0.0);

  // norm law: ||Delta_j|| = (w_j / w(|mu|)) ||Delta||
  std::uniform_real_distribution<double> unit(0.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> ws{unit(rng) + 0.1, unit(rng), unit(rng)};
    const WeightSet w(ws);
    const Complex mu = testutil::randn_c(rng);
    const auto cs = delta_coefficients(delta, w, mu);
    const double dn = spectral_norm(delta);
    const double wt = weight_value(w, std::abs(mu));
    for (int j = 0; j <= 2; ++j) {
      const double expected = (mu == Complex(0, 0) && j > 0) ? 0.0 : ws[(size_t)j] / wt * dn;
      CHECK(std::abs(spectral_norm(cs[(size_t)j]) - expected) <= 1e-12 * std::max(1.0, dn));
    }
  }
}

TEST_CASE("build_Q adds coefficients and rechecks the leading term") {
  const MatrixPolynomial p = testutil::eq2();
  std::vector<Matrix> zero(3, Matrix::Zero(3, 3));
  const MatrixPolynomial q = build_Q(p, zero);
  for (int j = 0; j <= 2; ++j)
    CHECK((q.coeff(j) - p.coeff(j)).cwiseAbs().maxCoeff() == 0.0);

  std::vector<Matrix> killer(3, Matrix::Zero(3, 3));
  killer[2] = -Matrix::Identity(3, 3);
  CHECK_THROWS_WITH_AS(static_cast<void>(build_Q(p, killer)), doctest::Contains("singular"),
                       Error);

  CHECK_THROWS_AS(static_cast<void>(build_Q(p, std::vector<Matrix>(2, Matrix::Zero(3, 3)))),
                  Error);
}

TEST_CASE("corrected pipeline matches the published perturbed polynomial") {
  WorkedExample ex;
  const PerturbationResult pr = build_perturbation(
      ex.rec.s_star, ex.corr.U_mat, ex.corr.V_mat, ex.rec.gamma_star, ex.P, ex.w, kMu);

  // the final display, quadratic / linear / constant coefficients
  const double display[3][3][3] = {
      {{1.7722, -0.0955, 0}, {0.0527, -0.3935, 0}, {0, 0, 2}},
      {{-3.2278, -0.0955, 0}, {0.0527, -1.3935, 0}, {0, 0, 3}},
      {{0.7722, -0.0955, 0}, {0.0527, 0.6065, 0}, {0, 0, 1}},
  };
  for (int j = 0; j < 3; ++j)
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        CHECK(std::abs(pr.Q.coeff(j)(r, c) - Complex(display[j][r][c], 0)) <= 5e-3);

  CHECK(pr.residuals.verdict == MultiplicityVerdict::multiple_defective);
  CHECK(pr.residuals.smin_ratio <= 1e-8);
  CHECK(pr.residuals.slope_residual <= 1e-8);
  CHECK(pr.residuals.geometric_multiplicity == 1);

  // delta/coefficient bookkeeping
  for (int j = 0; j <= 2; ++j)
    CHECK(spectral_norm(pr.delta_coeffs[(size_t)j] - pr.delta / 13.0) <= 1e-14);
  CHECK(pr.delta_norm >= pr.s_star - 1e-12);
  CHECK_FALSE(pr.v_rank_deficient);

  // the core perturbation has rank at most 2
  const Eigen::VectorXd dsv = Eigen::JacobiSVD<Matrix>(pr.delta).singularValues();
  CHECK(dsv(2) <= 1e-12 * dsv(0));
}

TEST_CASE("single-pair pipeline reproduces the failure on normal input") {
  WorkedExample ex;
  const PerturbationResult pr = build_perturbation(
      ex.rec.s_star, u_pair_matrix(ex.rec.triplet_a), v_pair_matrix(ex.rec.triplet_a),
      ex.rec.gamma_star, ex.P, ex.w, kMu);

  CHECK(pr.v_rank_deficient);  // block-pure pair has a rank-1 V
  CHECK(pr.residuals.verdict == MultiplicityVerdict::not_an_eigenvalue);
  CHECK(pr.residuals.smin_ratio > 1e-2);
}

TEST_CASE("verify_multiple verdicts") {
  // constructed double root: diag((z-3)^2, (z-5)^2)
  {
    Matrix a0 = Matrix::Zero(2, 2);
    a0(0, 0) = 9.0;
    a0(1, 1) = 25.0;
    Matrix a1 = Matrix::Zero(2, 2);
    a1(0, 0) = -6.0;
    a1(1, 1) = -10.0;
    const MatrixPolynomial q({a0, a1, Matrix::Identity(2, 2)});
    const VerificationReport r = verify_multiple(q, {3, 0});
    CHECK(r.verdict == MultiplicityVerdict::multiple_defective);
    CHECK(r.geometric_multiplicity == 1);
  }
  // semisimple double eigenvalue: diag(z-3, z-3)
  {
    Matrix a0 = -3.0 * Matrix::Identity(2, 2);
    const MatrixPolynomial q({a0, Matrix::Identity(2, 2)});
    const VerificationReport r = verify_multiple(q, {3, 0});
    CHECK(r.verdict == MultiplicityVerdict::multiple_semisimple);
    CHECK(r.geometric_multiplicity == 2);
  }
  // simple eigenvalue: diag(z-3, z-1)
  {
    Matrix a0 = Matrix::Zero(2, 2);
    a0(0, 0) = -3.0;
    a0(1, 1) = -1.0;
    const MatrixPolynomial q({a0, Matrix::Identity(2, 2)});
    const VerificationReport r = verify_multiple(q, {3, 0});
    CHECK(r.verdict == MultiplicityVerdict::simple_eigenvalue);
  }
  // P itself at a non-eigenvalue
  {
    const VerificationReport r = verify_multiple(testutil::eq2(), {0.5, 0.25});
    CHECK(r.verdict == MultiplicityVerdict::not_an_eigenvalue);
  }
  CHECK_THROWS_AS(static_cast<void>(verify_multiple(testutil::eq2(), kMu, 0.0)), Error);
}

TEST_CASE("precheck_hypotheses flags") {
  const HypothesisReport ok = precheck_hypotheses(testutil::eq2(), kMu);
  CHECK(ok.pprime_ok);
  CHECK_FALSE(ok.mu_is_eigenvalue_of_p);

  // P = I z^2 at mu = 0: P'(0) = 0
  const MatrixPolynomial iz2(
      {Matrix::Zero(2, 2), Matrix::Zero(2, 2), Matrix::Identity(2, 2)});
  const HypothesisReport bad = precheck_hypotheses(iz2, {0, 0});
  CHECK_FALSE(bad.pprime_ok);

  // mu = 1 is an eigenvalue of the worked example
  const HypothesisReport eig = precheck_hypotheses(testutil::eq2(), {1, 0});
  CHECK(eig.mu_is_eigenvalue_of_p);
  CHECK(eig.p_smin <= 1e-12);
}

TEST_CASE("corrected pipeline succeeds on random weakly normal polynomials") {
  auto rng = testutil::make_rng(53);
  int done = 0;
  for (int attempt = 0; attempt < 2000 && done < 100; ++attempt) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 3);
    const auto data = testutil::random_normal_poly(rng, n, m);
    const auto mu = testutil::pick_mu(data, rng);
    if (!mu) continue;
    const MatrixPolynomial p = data.poly();

    const GammaStarRecord rec = maximize_gamma(p, *mu);
    REQUIRE(rec.coalesced);
    const CorrectionResult corr = correct_pair(rec, p, *mu);
    const PerturbationResult pr =
        build_perturbation(rec.s_star, corr.U_mat, corr.V_mat, rec.gamma_star, p,
                           WeightSet::ones(m), *mu, 1e-6);

    CHECK(pr.residuals.verdict == MultiplicityVerdict::multiple_defective);
    CHECK(pr.residuals.smin_ratio <= 1e-6);
    CHECK(pr.residuals.slope_residual <= 1e-6);
    CHECK(pr.delta_norm >= pr.s_star - 1e-10);

    // v1 of the combined pair becomes a right eigenvector of Q at mu
    const Matrix qm = evaluate(pr.Q, *mu);
    CHECK((qm * corr.combined.v1).norm() <= 1e-8 * spectral_norm(qm));
    ++done;
  }
  CHECK(done >= 12);
}
