#include <gtest/gtest.h>

#include <complex>

#include "eja/error.hpp"
#include "eja/majorization.hpp"
#include "eja/positive_maps.hpp"
#include "eja/spectral.hpp"
#include "helpers.hpp"

using namespace eja;
using cd = std::complex<double>;

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

Eigen::MatrixXcd unit_matrix(int n, int i) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  m(i, i) = 1.0;
  return m;
}

}  // namespace

TEST(Apply, Examples) {
  Rng rng(1);
  const Algebra s3 = Algebra::sym(3);
  const Element x = random_element(s3, rng);
  EXPECT_EQ(identity_map(s3)(x).coords(), x.coords());

  Eigen::Matrix2d m;
  m << 1, 2, 2, 1;
  const Element d = diag_map(Algebra::sym(2))(from_sym_matrix(m));
  EXPECT_LE((to_sym_matrix(d) - Eigen::Matrix2d::Identity()).norm(), 1e-15);

  const LinearMap ones = schur_map(Eigen::MatrixXd::Ones(3, 3), canonical_frame(s3));
  EXPECT_LE(norm(ones(x) - x), 1e-13);

  EXPECT_EQ(code_of([&] { diag_map(s3)(random_element(Algebra::herm(3), rng)); }),
            ErrorCode::kAlgebraMismatch);
}

TEST(Adjoint, Examples) {
  Rng rng(2);
  const Algebra s3 = Algebra::sym(3);
  const LinearMap t = schur_map(random_correlation(3, rng), random_frame(s3, rng));
  EXPECT_LE((adjoint(t).matrix() - t.matrix()).norm(), 1e-13);

  const Algebra r3 = Algebra::real_n(3);
  const LinearMap p = permutation_automorphism(r3, {1, 2, 0});
  const LinearMap pa = adjoint(p);
  EXPECT_LE((pa.matrix() * p.matrix() - Eigen::Matrix3d::Identity()).norm(), 1e-15);
  EXPECT_EQ(pa.provenance().permutation, (std::vector<int>{2, 0, 1}));

  const LinearMap raw = LinearMap::raw(s3, Eigen::MatrixXd::Random(6, 6));
  EXPECT_EQ(adjoint(adjoint(raw)).matrix(), raw.matrix());
}

TEST(DiagMap, Properties) {
  const Algebra h2 = Algebra::herm(2);
  Eigen::Matrix2cd x;
  x << 1.0, cd(0.3, 2.0), cd(0.3, -2.0), -4.0;
  const Eigen::MatrixXcd out = to_herm_matrix(diag_map(h2)(from_herm_matrix(x)));
  EXPECT_EQ(out(0, 1), cd(0, 0));
  EXPECT_EQ(out(0, 0), cd(1, 0));

  const Algebra h3 = Algebra::herm(3);
  const LinearMap d = diag_map(h3);
  EXPECT_LE((d.matrix() * d.matrix() - d.matrix()).norm(), 1e-15);
  const Element p = compose(std::vector<double>{1, 2, 3}, canonical_frame(h3));
  EXPECT_LE(norm(d(p) - p), 1e-15);
  const Classification c = classify(d, 1e-12);
  EXPECT_TRUE(c.unital);
  EXPECT_TRUE(c.subunital);
  EXPECT_TRUE(c.trace_preserving);
  EXPECT_TRUE(c.doubly_stochastic);
  EXPECT_EQ(c.positivity, Positivity::kByConstruction);
  EXPECT_EQ(code_of([] { diag_map(Algebra::spin(3)); }), ErrorCode::kUnsupportedAlgebra);
}

TEST(SchurMap, BlockActionAndErrors) {
  const double rho = 0.3;
  Eigen::Matrix2d a;
  a << 1, rho, rho, 1;
  const LinearMap t = schur_map(a, canonical_frame(Algebra::sym(2)));
  Eigen::Matrix2d x;
  x << 2, 5, 5, -1;
  Eigen::Matrix2d want;
  want << 2, rho * 5, rho * 5, -1;
  EXPECT_LE((to_sym_matrix(t(from_sym_matrix(x))) - want).norm(), 1e-14);

  const Algebra h3 = Algebra::herm(3);
  EXPECT_LE((schur_map(Eigen::MatrixXd::Identity(3, 3), canonical_frame(h3)).matrix() - diag_map(h3).matrix()).norm(),
            1e-14);

  Eigen::Matrix2d bad;
  bad << 1, 2, 2, 1;
  EXPECT_EQ(code_of([&] { schur_map(bad, canonical_frame(Algebra::sym(2))); }), ErrorCode::kNotCorrelationMatrix);
  Eigen::Matrix2d nondiag;
  nondiag << 2, 0, 0, 1;
  EXPECT_EQ(code_of([&] { schur_map(nondiag, canonical_frame(Algebra::sym(2))); }), ErrorCode::kNotCorrelationMatrix);
  JordanFrame broken = canonical_frame(Algebra::sym(2));
  broken.idempotents.pop_back();
  EXPECT_EQ(code_of([&] { schur_map(a, broken); }), ErrorCode::kInvalidFrame);
}

TEST(SchurMap, QuadraticRepresentationIsMajorized) {
  // P_a = B . L_{a^2} with b_ij = 2 a_i a_j / (a_i^2 + a_j^2) in the frame of a.
  Rng rng(3);
  const Algebra s4 = Algebra::sym(4);
  for (int t = 0; t < 50; ++t) {
    const Element a = random_element(s4, rng);
    const auto sa = spectral(a);
    const Eigen::VectorXd& l = sa.eigenvalues;
    Eigen::MatrixXd b(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) b(i, j) = 2 * l(i) * l(j) / (l(i) * l(i) + l(j) * l(j));
    const Element x = random_element(s4, rng);
    const Element lx = l_op(square(a))(x);
    const Element px = quad_rep(a)(x);
    EXPECT_LE(norm(schur_map(b, sa.frame, 1e-9)(lx) - px), 1e-9 * (1 + norm(px)));
    EXPECT_GE(element_majorize(px, lx, 1e-9 * (1 + norm(lx))).min_slack(), -1e-9 * (1 + norm(lx)));
    EXPECT_TRUE(element_majorize(px, lx, 1e-9 * (1 + norm(lx))).strictly());
  }
}

TEST(SchurMap, MapsConeIntoCone) {
  Rng rng(4);
  for (const auto& alg : {Algebra::sym(4), Algebra::herm(3), Algebra::spin(5)}) {
    for (int t = 0; t < 30; ++t) {
      const LinearMap s = schur_map(random_correlation(alg.rank(), rng), random_frame(alg, rng));
      const Element x = random_cone_element(alg, rng);
      EXPECT_GE(min_eigenvalue(s(x)), -1e-9 * (1 + norm(x)));
      EXPECT_TRUE(classify(s, 1e-10).doubly_stochastic);
    }
  }
}

TEST(CpMap, Examples) {
  Rng rng(5);
  const Algebra h3 = Algebra::herm(3);
  const Eigen::MatrixXcd u = random_unitary(3, rng);
  const LinearMap t = cp_map({u}, h3);
  EXPECT_LE((t.matrix() - conjugation(h3, u).matrix()).norm(), 1e-13);
  EXPECT_TRUE(classify(t, 1e-12).doubly_stochastic);

  const Algebra h2 = Algebra::herm(2);
  EXPECT_LE((cp_map({unit_matrix(2, 0), unit_matrix(2, 1)}, h2).matrix() - diag_map(h2).matrix()).norm(), 1e-15);

  const auto kraus = random_unital_kraus(3, 3, rng);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(3, 3);
  for (const auto& a : kraus) sum += a * a.adjoint();
  EXPECT_LE((sum - Eigen::MatrixXcd::Identity(3, 3)).norm(), 1e-12);
  EXPECT_TRUE(classify(cp_map(kraus, h3), 1e-10).unital);

  EXPECT_EQ(code_of([&] { cp_map({Eigen::MatrixXcd::Identity(2, 2)}, h3); }), ErrorCode::kSizeMismatch);
  EXPECT_EQ(code_of([&] { cp_map({Eigen::MatrixXcd::Identity(2, 2)}, Algebra::sym(2)); }),
            ErrorCode::kUnsupportedAlgebra);
}

TEST(CpMap, AdjointUsesConjugateKraus) {
  Rng rng(6);
  const Algebra h3 = Algebra::herm(3);
  const auto kraus = random_unital_kraus(3, 2, rng);
  std::vector<Eigen::MatrixXcd> star;
  for (const auto& a : kraus) star.push_back(a.adjoint());
  const LinearMap t = cp_map(kraus, h3);
  const LinearMap ts = cp_map(star, h3);
  for (int k = 0; k < 10; ++k) {
    const Element x = random_element(h3, rng);
    EXPECT_LE(norm(adjoint(t)(x) - ts(x)), 1e-10 * (1 + norm(x)));
  }
  EXPECT_LE((adjoint(t).matrix() - ts.matrix()).norm(), 1e-12);
}

TEST(CpCanonicalForm, Examples) {
  const Algebra h3 = Algebra::herm(3);
  const JordanFrame can = canonical_frame(h3);
  const auto f = cp_canonical_form(cp_map({unit_matrix(3, 0), unit_matrix(3, 1), unit_matrix(3, 2)}, h3), can, 1e-12);
  EXPECT_LE((f.u - Eigen::MatrixXcd::Identity(3, 3)).norm(), 1e-15);
  EXPECT_LE((f.c - Eigen::MatrixXcd::Identity(3, 3)).norm(), 1e-15);

  Eigen::MatrixXcd du = Eigen::MatrixXcd::Zero(3, 3);
  du(0, 0) = std::polar(1.0, 0.3);
  du(1, 1) = std::polar(1.0, -1.1);
  du(2, 2) = std::polar(1.0, 2.0);
  const auto g = cp_canonical_form(cp_map({du}, h3), can, 1e-12);
  EXPECT_LE((g.c.cwiseAbs() - Eigen::MatrixXd::Ones(3, 3)).norm(), 1e-14);
  EXPECT_LE(g.reconstruction_residual, 1e-13);
}

TEST(CpCanonicalForm, RandomFrameFixingFamilies) {
  Rng rng(7);
  const Algebra h3 = Algebra::herm(3);
  for (int t = 0; t < 20; ++t) {
    const Eigen::MatrixXcd w = random_unitary(3, rng);
    // Diagonal Kraus factors normalized so sum_k |d_k,i|^2 = 1 for each i.
    std::vector<Eigen::VectorXcd> d(3, Eigen::VectorXcd(3));
    Eigen::VectorXd weight = Eigen::VectorXd::Zero(3);
    for (auto& v : d) {
      for (int i = 0; i < 3; ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(i) = cd(re, im);
        weight(i) += std::norm(v(i));
      }
    }
    std::vector<Eigen::MatrixXcd> kraus;
    for (auto& v : d) {
      v = v.cwiseQuotient(weight.cwiseSqrt().cast<cd>());
      kraus.push_back(w * v.asDiagonal() * w.adjoint());
    }
    JordanFrame frame{h3, {}};
    for (int i = 0; i < 3; ++i) frame.idempotents.push_back(from_herm_matrix(w * unit_matrix(3, i) * w.adjoint()));
    const auto form = cp_canonical_form(cp_map(kraus, h3), frame, 1e-10);
    EXPECT_LE(form.reconstruction_residual, 1e-8);
    EXPECT_LE((form.c.diagonal().real() - Eigen::Vector3d::Ones()).norm(), 1e-10);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(form.c).eigenvalues().minCoeff(), -1e-10);
    EXPECT_LE((form.u.adjoint() * form.u - Eigen::MatrixXcd::Identity(3, 3)).norm(), 1e-10);
  }
  const LinearMap generic = cp_map(random_unital_kraus(3, 2, rng), h3);
  EXPECT_EQ(code_of([&] { cp_canonical_form(generic, canonical_frame(h3), 1e-9); }), ErrorCode::kFrameNotFixed);
}

TEST(FrameAutomorphism, Examples) {
  Rng rng(8);
  for (const auto& alg : {Algebra::sym(3), Algebra::herm(3), Algebra::spin(4), Algebra::real_n(4)}) {
    const JordanFrame src = random_frame(alg, rng);
    const LinearMap same = frame_automorphism(src, src);
    EXPECT_LE((same.matrix() - Eigen::MatrixXd::Identity(alg.dim(), alg.dim())).norm(), 1e-9);

    const JordanFrame dst = canonical_frame(alg);
    const LinearMap phi = frame_automorphism(src, dst);
    for (int i = 0; i < src.size(); ++i) EXPECT_LE(norm(phi(src[i]) - dst[i]), 1e-10);
    EXPECT_LE(multiplicativity_residual(phi, 20, 1), 1e-9);
    const LinearMap inv = inverse_automorphism(phi);
    EXPECT_LE((inv.matrix() * phi.matrix() - Eigen::MatrixXd::Identity(alg.dim(), alg.dim())).norm(), 1e-10);
  }
  const Algebra r3 = Algebra::real_n(3);
  const JordanFrame can = canonical_frame(r3);
  const JordanFrame permuted{r3, {can[2], can[0], can[1]}};
  const LinearMap p = frame_automorphism(can, permuted);
  EXPECT_EQ(p.provenance().permutation, (std::vector<int>{2, 0, 1}));

  const Algebra parts[] = {Algebra::sym(2), Algebra::sym(2)};
  const Algebra prod = Algebra::product(parts);
  EXPECT_EQ(code_of([&] { frame_automorphism(canonical_frame(prod), canonical_frame(prod)); }), ErrorCode::kNotSimple);
}

TEST(Automorphisms, PreserveEigenvalues) {
  Rng rng(9);
  for (const auto& alg : {Algebra::sym(4), Algebra::herm(3), Algebra::spin(5), Algebra::real_n(4)}) {
    for (int t = 0; t < 20; ++t) {
      const LinearMap phi = random_automorphism(alg, rng);
      const Element x = random_element(alg, rng);
      EXPECT_LE((eigenvalues(phi(x)) - eigenvalues(x)).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_TRUE(classify(phi, 1e-10).doubly_stochastic);
    }
  }
}

TEST(Classify, Examples) {
  const Algebra s3 = Algebra::sym(3);
  const LinearMap neg = LinearMap::raw(s3, -Eigen::MatrixXd::Identity(6, 6));
  const Classification c = classify(neg, 1e-10, 100, 3);
  EXPECT_EQ(c.positivity, Positivity::kFalsified);
  EXPECT_FALSE(c.doubly_stochastic);

  const LinearMap ident_raw = LinearMap::raw(s3, Eigen::MatrixXd::Identity(6, 6));
  const Classification u = classify(ident_raw, 1e-10, 50, 3);
  EXPECT_EQ(u.positivity, Positivity::kUnknown);
  EXPECT_EQ(u.positivity_trials, 50);
  EXPECT_FALSE(u.doubly_stochastic);

  const LinearMap half = combination(std::vector<double>{0.5}, std::vector<LinearMap>{identity_map(s3)});
  const Classification h = classify(half, 1e-10);
  EXPECT_FALSE(h.unital);
  EXPECT_TRUE(h.subunital);
}

TEST(DsProbe, Examples) {
  Rng rng(10);
  const Algebra h3 = Algebra::herm(3);
  EXPECT_TRUE(ds_majorization_probe(diag_map(h3), 500, 1e-10, 1).passed(1e-10));

  std::vector<LinearMap> autos;
  std::vector<double> w;
  for (int k = 0; k < 4; ++k) {
    autos.push_back(random_automorphism(h3, rng));
    w.push_back(0.25);
  }
  const LinearMap combo = combination(w, autos);
  EXPECT_TRUE(ds_majorization_probe(combo, 200, 1e-10, 2).passed(1e-10));

  const LinearMap twice = combination(std::vector<double>{2.0}, std::vector<LinearMap>{identity_map(h3)});
  const MajorizationProbe p = ds_majorization_probe(twice, 5, 1e-10, 3);
  EXPECT_EQ(p.failures, 5);
  EXPECT_FALSE(p.passed(1e-10));
}

TEST(DoublyStochasticChain, ConvexCombinationsOfAutomorphisms) {
  Rng rng(11);
  for (const auto& alg : {Algebra::sym(3), Algebra::herm(3), Algebra::spin(4)}) {
    for (int t = 0; t < 20; ++t) {
      std::vector<LinearMap> autos;
      std::vector<double> w;
      double total = 0;
      for (int k = 0; k < 3; ++k) {
        autos.push_back(random_automorphism(alg, rng));
        w.push_back(rng.uniform(0.1, 1.0));
        total += w.back();
      }
      for (auto& x : w) x /= total;
      const LinearMap t_map = combination(w, autos);
      EXPECT_TRUE(classify(t_map, 1e-10).doubly_stochastic);
      const Element y = random_element(alg, rng);
      EXPECT_TRUE(element_majorize(t_map(y), y, 1e-10 * (1 + norm(y))).strictly());
    }
  }
}
