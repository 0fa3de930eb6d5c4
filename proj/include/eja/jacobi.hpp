#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <type_traits>
#include <vector>

namespace eja {

template <typename Scalar>
struct JacobiResult {
  Eigen::VectorXd values;  // nonincreasing
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // columns
  int sweeps = 0;
  bool converged = false;
};

namespace detail {

inline double conj_if(double v) { return v; }
inline std::complex<double> conj_if(std::complex<double> v) { return std::conj(v); }
inline double real_of(double v) { return v; }
inline double real_of(std::complex<double> v) { return v.real(); }

}  // namespace detail

/// Cyclic Jacobi eigensolver for a real symmetric or complex Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot a_pq (a diagonal
/// unitary), then applies the classical real rotation. Sweeps stop when the
/// off-diagonal Frobenius norm drops below rel_tol * ||A||_F. Eigenvalues are
/// returned in nonincreasing order; ties keep their original diagonal order.
template <typename Scalar>
JacobiResult<Scalar> jacobi_eigen(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a,
    double rel_tol = 1e-13, int max_sweeps = 100) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = a.rows();
  // Work with the Hermitian part; inputs are expected to be Hermitian already.
  a = (0.5 * (a + a.adjoint())).eval();
  Mat v = Mat::Identity(n, n);
  JacobiResult<Scalar> out;

  const double total = a.norm();
  auto off_norm = [&]() {
    double s = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) s += 2.0 * std::norm(a(p, q));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_norm() <= rel_tol * total) {
      out.converged = true;
      break;
    }
    ++out.sweeps;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = detail::real_of(a(p, p));
        const double aqq = detail::real_of(a(q, q));
        // Rotation already below the representable threshold.
        if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
            std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
          a(p, q) = Scalar(0);
          a(q, p) = Scalar(0);
          continue;
        }
        const Scalar phase = apq / mag;  // a_pq = |a_pq| * phase
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // V = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const Scalar v00 = c;
        const Scalar v01 = s;
        const Scalar v10 = -s * detail::conj_if(phase);
        const Scalar v11 = c * detail::conj_if(phase);
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = akp * v00 + akq * v10;
          a(k, q) = akp * v01 + akq * v11;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = detail::conj_if(v00) * apk + detail::conj_if(v10) * aqk;
          a(q, k) = detail::conj_if(v01) * apk + detail::conj_if(v11) * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = Scalar(detail::real_of(a(p, p)));
        a(q, q) = Scalar(detail::real_of(a(q, q)));
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = vkp * v00 + vkq * v10;
          v(k, q) = vkp * v01 + vkq * v11;
        }
      }
    }
  }
  if (!out.converged) out.converged = off_norm() <= rel_tol * total;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return detail::real_of(a(i, i)) > detail::real_of(a(j, j));
  });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = detail::real_of(a(order[k], order[k]));
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

}  // namespace eja
