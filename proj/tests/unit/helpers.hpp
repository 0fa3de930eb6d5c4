#pragma once

#include <Eigen/Eigenvalues>

#include <vector>

#include "eja/algebra.hpp"
#include "eja/random.hpp"
#include "eja/spectral.hpp"

namespace eja::fixtures {

inline std::vector<Algebra> sample_algebras() {
  return {Algebra::real_n(3), Algebra::sym(2), Algebra::sym(4), Algebra::herm(2),
          Algebra::herm(3),   Algebra::spin(4), Algebra::spin(2)};
}

/// Decreasing eigenvalues from Eigen's solver, independent of the library's Jacobi code.
inline Eigen::VectorXd oracle_eigenvalues(const Element& x) {
  const Algebra& alg = x.algebra();
  Eigen::VectorXd v;
  switch (alg.kind()) {
    case Kind::kRN: v = x.coords(); break;
    case Kind::kSymN:
      v = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(to_sym_matrix(x)).eigenvalues();
      break;
    case Kind::kHermN:
      v = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(to_herm_matrix(x)).eigenvalues();
      break;
    case Kind::kSpinN: {
      const Eigen::VectorXd nat = spin_natural(x);
      const double r = nat.tail(nat.size() - 1).norm();
      v = Eigen::Vector2d(nat(0) - r, nat(0) + r);
      break;
    }
    case Kind::kProduct: return {};
  }
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

/// Element with prescribed eigenvalues over a random frame.
inline Element element_with_spectrum(const Algebra& alg, const Eigen::VectorXd& values, Rng& rng) {
  const JordanFrame f = random_frame(alg, rng);
  return compose(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())), f);
}

/// Positive, well separated eigenvalues: 1 + k + uniform jitter, shuffled.
inline Eigen::VectorXd distinct_positive(int n, Rng& rng) {
  Eigen::VectorXd v(n);
  for (int k = 0; k < n; ++k) v(k) = 1.0 + k + rng.uniform(0.1, 0.8);
  for (int i = n - 1; i > 0; --i) std::swap(v(i), v(rng.index(i + 1)));
  return v;
}

}  // namespace eja::fixtures
