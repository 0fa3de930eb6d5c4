#include <gtest/gtest.h>

#include <algorithm>

#include "eja/error.hpp"
#include "eja/majorization.hpp"
#include "eja/omega.hpp"
#include "eja/positive_maps.hpp"
#include "eja/spectral.hpp"
#include "helpers.hpp"

using namespace eja;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kParseError;  // sentinel: nothing thrown
}

// Raw definition of "x majorized by y": smallest partial-sum slack over k < n,
// and the gap between the totals.
struct RawSlack {
  double partial = 1e300;
  double total = 0.0;
};

RawSlack raw_majorization_slack(Eigen::VectorXd x, Eigen::VectorXd y) {
  std::sort(x.data(), x.data() + x.size(), std::greater<>());
  std::sort(y.data(), y.data() + y.size(), std::greater<>());
  RawSlack r;
  double sx = 0.0;
  double sy = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    sx += x(k);
    sy += y(k);
    if (k + 1 < x.size()) r.partial = std::min(r.partial, sy - sx);
  }
  r.total = std::abs(sy - sx);
  return r;
}

Eigen::MatrixXd random_ds(int n, Rng& rng) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double w = rng.uniform(0.05, 1.0);
    a += w * permutation_matrix(random_permutation(n, rng));
    total += w;
  }
  return a / total;
}

Eigen::MatrixXd swap2() {
  Eigen::Matrix2d s;
  s << 0, 1, 1, 0;
  return s;
}

}  // namespace

TEST(OmegaMembership, Examples) {
  const Eigen::Vector2d p(2, 1);
  EXPECT_TRUE(omega_membership(Eigen::Matrix2d::Identity(), p, 1e-12).member);
  EXPECT_TRUE(omega_membership(swap2(), p, 1e-12).member);
  Eigen::Matrix2d collapse;
  collapse << 0, 1, 0, 1;
  const auto c = omega_membership(collapse, p, 1e-12);
  EXPECT_FALSE(c.member);
  EXPECT_NEAR(c.reports[1].total_gap, 1.0, 1e-15);

  EXPECT_EQ(code_of([] { omega_membership(Eigen::Matrix2d::Identity(), Eigen::Vector2d(1, -1), 1e-9); }),
            ErrorCode::kPNotPositive);
  EXPECT_EQ(code_of([] { omega_membership(Eigen::Matrix2d::Identity(), Eigen::Vector2d(1, 1), 1e-9); }),
            ErrorCode::kDegenerateSpectrum);
  EXPECT_EQ(code_of([] { omega_membership(Eigen::Matrix3d::Identity(), Eigen::Vector2d(1, 2), 1e-9); }),
            ErrorCode::kSizeMismatch);
}

TEST(OmegaMembership, ThreeWayAgreement) {
  Rng rng(1);
  int members = 0;
  int compared = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + rng.index(4);
    const Eigen::VectorXd p = fixtures::distinct_positive(n, rng);
    Eigen::MatrixXd a = random_ds(n, rng);
    if (t % 3 == 1) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = std::max(0.0, a(i, j) + 0.05 * rng.normal());
    } else if (t % 3 == 2) {
      for (int i = 0; i < n; ++i) a.row(i) /= a.row(i).sum();
    }
    const Eigen::VectorXd h[] = {Eigen::VectorXd::Ones(n), p, p.cwiseProduct(p)};
    double partial = a.minCoeff();
    double total = 0.0;
    for (const auto& v : h) {
      const RawSlack s = raw_majorization_slack(a * v, v);
      partial = std::min(partial, s.partial);
      total = std::max(total, s.total);
    }
    // Skip samples too close to the boundary for the tolerances to agree.
    if ((partial < -1e-12 && partial > -1e-6) || (total > 1e-12 && total < 1e-6)) continue;
    const bool raw = partial >= -1e-12 && total <= 1e-12;
    const bool linear = feasibility_violation(omega_polytope(p).region, matrix_to_vars(a)) <= 1e-9;
    const bool member = omega_membership(a, p, 1e-9).member;
    ++compared;
    EXPECT_EQ(member, raw) << t;
    EXPECT_EQ(linear, raw) << t;
    members += member ? 1 : 0;
  }
  EXPECT_GT(members, 100);
  EXPECT_GT(compared - members, 100);
}

TEST(OmegaVertices, TwoByTwo) {
  const auto v = omega_vertices(Eigen::Vector2d(2, 1), 500, 1);
  ASSERT_EQ(v.vertices.size(), 2u);
  const bool id_first = v.vertices[0](0, 0) > 0.5;
  EXPECT_LE((v.vertices[id_first ? 0 : 1] - Eigen::Matrix2d::Identity()).norm(), 1e-12);
  EXPECT_LE((v.vertices[id_first ? 1 : 0] - swap2()).norm(), 1e-12);
  EXPECT_TRUE(v.complete);
  EXPECT_TRUE(v.all_doubly_stochastic);
}

TEST(OmegaVertices, ThreeByThreeAllDoublyStochastic) {
  const Eigen::Vector3d p(3, 2, 1);
  const auto v = omega_vertices(p, 1000, 2);
  EXPECT_TRUE(v.complete) << v.max_lp_gap << " " << v.max_argmax_distance;
  EXPECT_TRUE(v.all_doubly_stochastic);
  EXPECT_GE(v.vertices.size(), 6u);  // at least the permutation matrices
  const Polyhedron region = omega_polytope(p).region;
  for (const auto& m : v.vertices) {
    EXPECT_TRUE(omega_membership(m, p, 1e-9).member);
    EXPECT_TRUE(is_extreme_point(region, matrix_to_vars(m)));
  }
  const Eigen::MatrixXd mid = 0.5 * (v.vertices[0] + v.vertices[1]);
  EXPECT_FALSE(is_extreme_point(region, matrix_to_vars(mid)));

  EXPECT_EQ(code_of([] { omega_vertices(Eigen::Vector4d(4, 3, 2, 1), 1); }), ErrorCode::kRankTooLarge);
}

TEST(OmegaLp, Examples) {
  const OmegaPolytope two = omega_polytope(Eigen::Vector2d(2, 1));
  Eigen::Matrix2d e11 = Eigen::Matrix2d::Zero();
  e11(0, 0) = 1;
  EXPECT_NEAR(omega_lp(two, e11, Sense::kMaximize).optimum, 1.0, 1e-12);

  const OmegaPolytope three = omega_polytope(Eigen::Vector3d(1, 2, 3));
  Eigen::Matrix3d col = Eigen::Matrix3d::Zero();
  col.col(0).setOnes();
  EXPECT_NEAR(omega_lp(three, col, Sense::kMaximize).optimum, 1.0, 1e-9);
  EXPECT_NEAR(omega_lp(three, col, Sense::kMinimize).optimum, 1.0, 1e-9);
  EXPECT_EQ(omega_lp(three, Eigen::Matrix3d::Zero(), Sense::kMaximize).optimum, 0.0);
}

TEST(OmegaLp, AgreesWithBruteForceOnTwoByTwo) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const Eigen::VectorXd p = fixtures::distinct_positive(2, rng);
    const OmegaPolytope omega = omega_polytope(p);
    Eigen::Matrix2d c;
    for (int i = 0; i < 4; ++i) c.data()[i] = rng.normal();
    // Oracle: Omega_p for n = 2 is the segment between I and the swap.
    const double brute = std::max(c.trace(), c(0, 1) + c(1, 0));
    EXPECT_NEAR(omega_lp(omega, c, Sense::kMaximize).optimum, brute, 1e-9);
  }
}

TEST(KorovkinPolytope, OnlyTheIdentity) {
  const auto v3 = enumerate_vertices(korovkin_polytope(Eigen::Vector3d(1, 2, 3)), 1e-8);
  ASSERT_EQ(v3.size(), 1u);
  EXPECT_LE((vars_to_matrix(v3[0], 3) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-8);

  const Polyhedron k4 = korovkin_polytope(Eigen::Vector4d(1, 2, 3, 4));
  const Eigen::VectorXd id = matrix_to_vars(Eigen::Matrix4d::Identity());
  for (int i = 0; i < 16; ++i) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(16);
    c(i) = 1;
    EXPECT_NEAR(lp_solve({k4, c, Sense::kMaximize}).optimum, id(i), 1e-8);
    EXPECT_NEAR(lp_solve({k4, c, Sense::kMinimize}).optimum, id(i), 1e-8);
  }
}

TEST(NonDsSearch, TerminatesWithWitnessOrBounds) {
  const NonDsReport r = non_ds_search(4, 6, 7);
  ASSERT_EQ(r.samples.size(), 6u);
  int validated = 0;
  for (const auto& s : r.samples) {
    EXPECT_TRUE(s.certified_ds || !s.witnesses.empty());
    for (int j = 0; j < 4; ++j) {
      // The identity is a member, so every column-sum range contains 1.
      EXPECT_LE(s.column_min(j), 1.0 + 1e-9);
      EXPECT_GE(s.column_max(j), 1.0 - 1e-9);
    }
    for (const auto& w : s.witnesses) {
      if (!w.validated) continue;
      ++validated;
      EXPECT_TRUE(omega_membership(w.matrix, s.p, 1e-9).member);
      EXPECT_FALSE(is_doubly_stochastic_matrix(w.matrix, 1e-6));
    }
  }
  EXPECT_EQ(validated, r.witness_count);
}

TEST(NonDsSearch, ThreadCountDoesNotChangeResults) {
  const NonDsReport a = non_ds_search(4, 4, 11, 1);
  const NonDsReport b = non_ds_search(4, 4, 11, 3);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].p, b.samples[i].p);
    EXPECT_EQ(a.samples[i].column_max, b.samples[i].column_max);
    EXPECT_EQ(a.samples[i].column_min, b.samples[i].column_min);
  }
  EXPECT_EQ(a.witness_count, b.witness_count);
}

TEST(BasisDs, Examples) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + rng.index(4);
    const auto r = basis_ds_criterion(random_ds(n, rng), fixtures::distinct_positive(n, rng), 1e-10);
    EXPECT_TRUE(r.all_majorized);
    EXPECT_TRUE(r.bound_holds);
    EXPECT_TRUE(r.doubly_stochastic);
  }
  EXPECT_TRUE(basis_ds_criterion(Eigen::Matrix4d::Identity(), Eigen::Vector4d(4, 3, 2, 1), 1e-12).doubly_stochastic);

  Eigen::Matrix4d rs;
  rs << 0.5, 0.5, 0, 0,  //
      0.5, 0.5, 0, 0,    //
      0.5, 0, 0.5, 0,    //
      0, 0, 0, 1;
  const auto r = basis_ds_criterion(rs, Eigen::Vector4d(4, 3, 2, 1), 1e-10);
  EXPECT_FALSE(r.all_majorized);
  EXPECT_GE(r.first_failing_power, 1);
  EXPECT_FALSE(r.doubly_stochastic);
}

TEST(Kadison, IdentityAutomorphismAndDiag) {
  Rng rng(5);
  const Algebra h3 = Algebra::herm(3);
  for (int t = 0; t < 50; ++t) {
    const Element x = random_element(h3, rng);
    const LinearMap phi = random_automorphism(h3, rng);
    EXPECT_LE(norm(phi(square(x)) - square(phi(x))), 1e-10 * (1 + norm(x) * norm(x)));
    const LinearMap d = diag_map(h3);
    const Element gap = d(square(x)) - square(d(x));
    EXPECT_GE(fixtures::oracle_eigenvalues(gap).minCoeff(), -1e-10 * (1 + norm(x) * norm(x)));
  }
}

TEST(Kadison, ProbeIsReproducible) {
  for (const auto& alg : {Algebra::sym(3), Algebra::herm(3), Algebra::spin(4)}) {
    const KadisonReport a = kadison_probe(alg, 300, 21, 1);
    const KadisonReport b = kadison_probe(alg, 300, 21, 3);
    EXPECT_EQ(a.min_slack, b.min_slack);
    EXPECT_EQ(a.witness_trial, b.witness_trial);
    EXPECT_EQ(a.witness_family, b.witness_family);
    ASSERT_TRUE(a.witness_x.has_value());
    EXPECT_EQ(a.witness_x->coords(), b.witness_x->coords());
    EXPECT_EQ(a.candidates.size(), b.candidates.size());
    EXPECT_EQ(a.trials, 300);
  }
}
