#include <gtest/gtest.h>

#include <numbers>

#include "eja/error.hpp"
#include "eja/jacobi.hpp"
#include "eja/spectral.hpp"
#include "helpers.hpp"

using namespace eja;

TEST(Jacobi, MatchesEigenOnRandomHermitian) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXcd a(5, 5);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      a.data()[i] = {re, im};
    }
    a = (a + a.adjoint()).eval();
    const auto r = jacobi_eigen<std::complex<double>>(a);
    ASSERT_TRUE(r.converged);
    Eigen::VectorXd want = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(a).eigenvalues().reverse();
    EXPECT_LE((r.values - want).cwiseAbs().maxCoeff(), 1e-12 * a.norm());
    EXPECT_LE((a * r.vectors - r.vectors * r.values.asDiagonal()).norm(), 1e-11 * a.norm());
  }
}

TEST(Spectral, Examples) {
  const Element r = Element(Algebra::real_n(3), Eigen::Vector3d(3, 1, 2));
  const auto s = spectral(r);
  EXPECT_EQ(s.eigenvalues, Eigen::Vector3d(3, 2, 1));
  EXPECT_EQ(s.frame[1].coords(), Eigen::Vector3d(0, 0, 1));

  Eigen::Matrix2d a;
  a << 0, 1, 1, 0;
  const auto sa = spectral(from_sym_matrix(a));
  EXPECT_NEAR(sa.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(sa.eigenvalues(1), -1.0, 1e-14);
  Eigen::Matrix2d f0;
  f0 << 0.5, 0.5, 0.5, 0.5;
  EXPECT_LE((to_sym_matrix(sa.frame[0]) - f0).norm(), 1e-14);

  Eigen::Matrix2d b;
  b << 1, 2, 2, 1;
  const Eigen::VectorXd eb = eigenvalues(from_sym_matrix(b));
  EXPECT_NEAR(eb(0), 3.0, 1e-14);
  EXPECT_NEAR(eb(1), -1.0, 1e-14);

  EXPECT_LE((eigenvalues(unit(Algebra::herm(4))) - Eigen::VectorXd::Ones(4)).norm(), 1e-14);
}

TEST(Spectral, MatchesOracleAndReconstructs) {
  Rng rng(2);
  for (const auto& alg : fixtures::sample_algebras()) {
    for (int t = 0; t < 30; ++t) {
      const Element x = random_element(alg, rng);
      const auto s = spectral(x);
      EXPECT_LE((s.eigenvalues - fixtures::oracle_eigenvalues(x)).cwiseAbs().maxCoeff(), 1e-11 * (1 + norm(x)));
      for (Eigen::Index i = 1; i < s.eigenvalues.size(); ++i) EXPECT_GE(s.eigenvalues(i - 1), s.eigenvalues(i));
      const Element back = compose(std::span<const double>(s.eigenvalues.data(), s.eigenvalues.size()), s.frame);
      EXPECT_LE(norm(back - x), 1e-9 * norm(x));
      EXPECT_LE(frame_residuals(s.frame).max(), 1e-10);
    }
  }
}

TEST(Spectral, SpinDegenerateUsesFixedFrame) {
  const Element x = from_spin_natural(Eigen::Vector3d(2, 0, 0));
  const auto s = spectral(x);
  EXPECT_TRUE(s.spin_degenerate);
  const Eigen::VectorXd f0 = spin_natural(s.frame[0]);
  EXPECT_NEAR(f0(0), 0.5, 1e-15);
  EXPECT_NEAR(f0(1), 0.5, 1e-15);
  EXPECT_LE(norm(compose(std::span<const double>(s.eigenvalues.data(), 2), s.frame) - x), 1e-14);
  EXPECT_FALSE(spectral(from_spin_natural(Eigen::Vector3d(2, 1, 0))).spin_degenerate);
}

TEST(Spectral, ConeAndParts) {
  const Algebra r2 = Algebra::real_n(2);
  EXPECT_FALSE(in_cone(Element(r2, Eigen::Vector2d(1, -1)), 1e-12));
  EXPECT_TRUE(in_cone(Element::zero(r2), 1e-12));
  const auto [xp, xm] = pos_neg_parts(Element(r2, Eigen::Vector2d(2, -3)));
  EXPECT_EQ(xp.coords(), Eigen::Vector2d(2, 0));
  EXPECT_EQ(xm.coords(), Eigen::Vector2d(0, 3));

  Rng rng(4);
  for (const auto& alg : fixtures::sample_algebras()) {
    const Element z = random_cone_element(alg, rng);
    EXPECT_TRUE(in_cone(z, 1e-12));
    const Element x = random_element(alg, rng);
    const auto [p, m] = pos_neg_parts(x);
    EXPECT_LE(norm(p - m - x), 1e-12 * (1 + norm(x)));
    EXPECT_NEAR(inner(p, m), 0.0, 1e-10 * (1 + norm(x) * norm(x)));
    EXPECT_GE(min_eigenvalue(p), -1e-10);
    EXPECT_GE(min_eigenvalue(m), -1e-10);
    // Self-duality face: the cone sits in its dual.
    EXPECT_GE(inner(z, random_cone_element(alg, rng)), -1e-12);
  }
}

TEST(Spectral, OperatorExamples) {
  Rng rng(6);
  for (const auto& alg : fixtures::sample_algebras()) {
    const int d = alg.dim();
    EXPECT_LE((l_op(unit(alg)).matrix() - Eigen::MatrixXd::Identity(d, d)).norm(), 1e-14);
    EXPECT_LE((quad_rep(unit(alg)).matrix() - Eigen::MatrixXd::Identity(d, d)).norm(), 1e-14);
    const Element a = random_element(alg, rng);
    const Eigen::MatrixXd la = l_op(a).matrix();
    EXPECT_LE((la - la.transpose()).norm(), 1e-14);
    EXPECT_TRUE(operator_commute(a, square(a), 1e-10 * (1 + norm(a) * norm(a) * norm(a))));
  }
  const Algebra r2 = Algebra::real_n(2);
  const Element a(r2, Eigen::Vector2d(2, 3));
  EXPECT_EQ(l_op(a).matrix(), Eigen::Vector2d(2, 3).asDiagonal().toDenseMatrix());
  EXPECT_LE((quad_rep(a)(Element(r2, Eigen::Vector2d(1, 1))).coords() - Eigen::Vector2d(4, 9)).norm(), 1e-14);

  Eigen::Matrix2d e11 = Eigen::Matrix2d::Zero();
  e11(0, 0) = 1;
  Eigen::Matrix2d s;
  s << 0, 1, 1, 0;
  const Element ea = from_sym_matrix(e11);
  const Element sb = from_sym_matrix(s);
  // Oracle: L_a L_b - L_b L_a applied to the basis by direct matrix products.
  const double direct = (l_op(ea).matrix() * l_op(sb).matrix() - l_op(sb).matrix() * l_op(ea).matrix()).norm();
  EXPECT_GT(direct, 0.1);
  EXPECT_FALSE(operator_commute(ea, sb, 1e-8));
  Eigen::Matrix2d d1 = Eigen::Vector2d(1, 5).asDiagonal();
  Eigen::Matrix2d d2 = Eigen::Vector2d(-2, 3).asDiagonal();
  EXPECT_TRUE(operator_commute(from_sym_matrix(d1), from_sym_matrix(d2), 1e-12));
}

TEST(Spectral, QuadRepIsAXA) {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const Element a = random_element(Algebra::herm(3), rng);
    const Element x = random_element(Algebra::herm(3), rng);
    const Eigen::MatrixXcd am = to_herm_matrix(a);
    const Eigen::MatrixXcd want = am * to_herm_matrix(x) * am;
    EXPECT_LE((to_herm_matrix(quad_rep(a)(x)) - want).norm(), 1e-11 * (1 + want.norm()));
  }
}

TEST(Peirce, CanonicalExample) {
  Eigen::Matrix2d x;
  x << 2, 5, 5, -1;
  const auto pd = peirce(from_sym_matrix(x), canonical_frame(Algebra::sym(2)));
  EXPECT_NEAR(pd.diagonal(0), 2.0, 1e-14);
  EXPECT_NEAR(pd.diagonal(1), -1.0, 1e-14);
  Eigen::Matrix2d off;
  off << 0, 5, 5, 0;
  EXPECT_LE((to_sym_matrix(pd.block(0, 1)) - off).norm(), 1e-14);

  const auto pe = peirce(unit(Algebra::herm(3)), canonical_frame(Algebra::herm(3)));
  EXPECT_LE((pe.diagonal - Eigen::Vector3d::Ones()).norm(), 1e-14);
  for (const auto& [key, blk] : pe.off_blocks) EXPECT_LE(norm(blk), 1e-14);
}

TEST(Peirce, InvariantsOnRandomFrames) {
  Rng rng(9);
  for (const auto& alg : fixtures::sample_algebras()) {
    for (int t = 0; t < 10; ++t) {
      const JordanFrame f = random_frame(alg, rng);
      EXPECT_LE(peirce_identity_residual(f), 1e-10);
      const Element x = random_element(alg, rng);
      const auto pd = peirce(x, f);
      EXPECT_LE(norm(pd.reconstruct() - x), 1e-10 * (1 + norm(x)));
      for (const auto& [key, blk] : pd.off_blocks) {
        EXPECT_LE(norm(jordan_product(blk, f[key.first]) - 0.5 * blk), 1e-10 * (1 + norm(x)));
        EXPECT_LE(norm(jordan_product(blk, f[key.second]) - 0.5 * blk), 1e-10 * (1 + norm(x)));
        for (int i = 0; i < f.size(); ++i) EXPECT_NEAR(inner(blk, f[i]), 0.0, 1e-10 * (1 + norm(x)));
        for (const auto& [key2, blk2] : pd.off_blocks)
          if (key2 != key) EXPECT_NEAR(inner(blk, blk2), 0.0, 1e-10 * (1 + norm(x) * norm(x)));
      }
    }
  }
}

TEST(Peirce, InvalidFrameRejected) {
  JordanFrame f = canonical_frame(Algebra::sym(3));
  f.idempotents[0] = 2.0 * f.idempotents[0];
  try {
    peirce(unit(Algebra::sym(3)), f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidFrame);
  }
}

TEST(Delta, Examples) {
  const JordanFrame f = canonical_frame(Algebra::sym(2));
  const Element e = unit(Algebra::sym(2));
  EXPECT_LE((delta_matrix(e, e, f) - Eigen::Matrix2d::Identity()).norm(), 1e-14);
  Eigen::Matrix2d ones = Eigen::Matrix2d::Ones();
  const Element x = from_sym_matrix(ones);
  EXPECT_LE((delta_matrix(x, x, f) - ones).norm(), 1e-14);
}

TEST(Delta, ConeElementsGivePsd) {
  Rng rng(10);
  for (const auto& alg : fixtures::sample_algebras()) {
    for (int t = 0; t < 20; ++t) {
      const Element x = random_cone_element(alg, rng);
      const JordanFrame f = random_frame(alg, rng);
      const Eigen::MatrixXd d = delta_matrix(x, x, f);
      EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(d).eigenvalues().minCoeff(), -1e-10 * (1 + d.norm()));
    }
  }
}

TEST(ZeroDiagonal, Examples) {
  const Algebra alg = Algebra::sym(3);
  const JordanFrame f = canonical_frame(alg);
  EXPECT_TRUE(check_zero_diagonal(f[1], f, 0, 1e-12));
  try {
    check_zero_diagonal(unit(alg), f, 0, 1e-12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDiagonalNotZero);
  }
  try {
    check_zero_diagonal(-1.0 * unit(alg), f, 0, 1e-12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kXNotInCone);
  }
  // PSD matrix with first row and column zeroed, then conjugated with the frame.
  Rng rng(12);
  Eigen::MatrixXd g(3, 3);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.normal();
  Eigen::MatrixXd m = g * g.transpose();
  m.row(0).setZero();
  m.col(0).setZero();
  EXPECT_TRUE(check_zero_diagonal(from_sym_matrix(m), f, 0, 1e-12));
}

TEST(Gap, DistinctnessGate) {
  EXPECT_TRUE(has_distinct_values(Eigen::Vector3d(1, 2, 3)));
  EXPECT_FALSE(has_distinct_values(Eigen::Vector3d(1, 2, 2 + 1e-12)));
  EXPECT_DOUBLE_EQ(min_gap(Eigen::Vector3d(3, 1, 2.5)), 0.5);
}
