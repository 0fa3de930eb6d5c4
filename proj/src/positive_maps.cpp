#include "eja/positive_maps.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "eja/error.hpp"
#include "eja/majorization.hpp"
#include "eja/spectral.hpp"

namespace eja {

namespace {

using cd = std::complex<double>;

bool is_matrix_kind(Kind k) { return k == Kind::kSymN || k == Kind::kHermN; }

Eigen::MatrixXcd as_complex(const Element& x) {
  if (x.algebra().kind() == Kind::kSymN) return to_sym_matrix(x).cast<cd>();
  return to_herm_matrix(x);
}

Element from_complex(const Algebra& alg, const Eigen::MatrixXcd& m) {
  if (alg.kind() == Kind::kSymN) return Element(alg, from_sym_matrix(m.real()).coords());
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  return Element(alg, from_herm_matrix(h).coords());
}

// Unit vector spanning the range of a rank-one projector, first nonzero entry real positive.
Eigen::VectorXcd projector_vector(const Eigen::MatrixXcd& e) {
  Eigen::Index col = 0;
  e.colwise().norm().maxCoeff(&col);
  Eigen::VectorXcd v = e.col(col);
  v /= v.norm();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return v;
}

void require_single_block(const Algebra& alg) {
  if (alg.kind() == Kind::kProduct) {
    throw Error(ErrorCode::kNotSimple, alg.describe() + " is a product algebra");
  }
}

std::shared_ptr<Provenance> automorphism_provenance(AutomorphismForm form) {
  auto p = std::make_shared<Provenance>();
  p->kind = ProvenanceKind::kAutomorphism;
  p->form = form;
  return p;
}

}  // namespace

LinearMap diag_map(const Algebra& algebra) {
  const Kind k = algebra.kind();
  if (!is_matrix_kind(k) && k != Kind::kRN) {
    throw Error(ErrorCode::kUnsupportedAlgebra, "diag_map needs RN, SymN or HermN");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(algebra.dim(), algebra.dim());
  for (int i = 0; i < algebra.size(); ++i) m(i, i) = 1.0;
  auto p = std::make_shared<Provenance>();
  p->kind = ProvenanceKind::kDiag;
  return LinearMap(algebra, std::move(m), std::move(p));
}

LinearMap schur_map(const Eigen::MatrixXd& a, const JordanFrame& frame, double tol) {
  const int n = frame.algebra.rank();
  if (a.rows() != n || a.cols() != n) {
    throw Error(ErrorCode::kNotCorrelationMatrix,
                "expected " + std::to_string(n) + "x" + std::to_string(n));
  }
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorCode::kNotCorrelationMatrix, "matrix is not symmetric");
  }
  if ((a.diagonal().array() - 1.0).abs().maxCoeff() > tol) {
    throw Error(ErrorCode::kNotCorrelationMatrix, "diagonal entries must be 1");
  }
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  if (Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym, Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff() < -tol) {
    throw Error(ErrorCode::kNotCorrelationMatrix, "matrix is not positive semidefinite");
  }
  validate_frame(frame, 1e-8);
  const int d = frame.algebra.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double w = i == j ? 1.0 : sym(i, j);
      m += w * peirce_projection(frame, i, j);
    }
  }
  m = (0.5 * (m + m.transpose())).eval();
  auto p = std::make_shared<Provenance>();
  p->kind = ProvenanceKind::kSchurProduct;
  p->correlation = sym;
  p->frame = frame.idempotents;
  return LinearMap(frame.algebra, std::move(m), std::move(p));
}

LinearMap cp_map(const std::vector<Eigen::MatrixXcd>& kraus, const Algebra& algebra) {
  if (algebra.kind() != Kind::kHermN) {
    throw Error(ErrorCode::kUnsupportedAlgebra, "cp_map is defined on HermN");
  }
  const int n = algebra.size();
  if (kraus.empty()) throw Error(ErrorCode::kSizeMismatch, "empty Kraus family");
  for (const auto& a : kraus) {
    if (a.rows() != n || a.cols() != n) {
      throw Error(ErrorCode::kSizeMismatch, "Kraus operators must be " + std::to_string(n) + "x" +
                                                std::to_string(n));
    }
  }
  Eigen::MatrixXd m = LinearMap::tabulate(algebra, [&](const Element& x) {
    const Eigen::MatrixXcd xm = to_herm_matrix(x);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& a : kraus) out += a * xm * a.adjoint();
    return from_complex(algebra, out);
  });
  auto p = std::make_shared<Provenance>();
  p->kind = ProvenanceKind::kCompletelyPositive;
  p->kraus = kraus;
  return LinearMap(algebra, std::move(m), std::move(p));
}

CpCanonicalForm cp_canonical_form(const LinearMap& t, const JordanFrame& frame, double tol) {
  if (t.provenance_kind() != ProvenanceKind::kCompletelyPositive) {
    throw Error(ErrorCode::kUnsupportedAlgebra, "map has no Kraus representation");
  }
  require_same_algebra(t.algebra(), frame.algebra);
  validate_frame(frame, 1e-8);
  for (int i = 0; i < frame.size(); ++i) {
    const double r = norm(t(frame[i]) - frame[i]);
    if (r > tol) {
      throw Error(ErrorCode::kFrameNotFixed,
                  "||T(e_" + std::to_string(i) + ") - e_" + std::to_string(i) + "|| = " +
                      std::to_string(r));
    }
  }
  const int n = frame.size();
  CpCanonicalForm out;
  out.u.resize(n, n);
  for (int i = 0; i < n; ++i) out.u.col(i) = projector_vector(to_herm_matrix(frame[i]));
  out.c = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& a : t.provenance().kraus) {
    const Eigen::VectorXcd b = (out.u.adjoint() * a * out.u).diagonal();
    out.c += b * b.adjoint();
  }
  const Eigen::MatrixXd rebuilt = LinearMap::tabulate(t.algebra(), [&](const Element& x) {
    const Eigen::MatrixXcd y = out.u.adjoint() * to_herm_matrix(x) * out.u;
    return from_complex(t.algebra(), out.u * out.c.cwiseProduct(y) * out.u.adjoint());
  });
  out.reconstruction_residual = (rebuilt - t.matrix()).cwiseAbs().maxCoeff();
  return out;
}

LinearMap conjugation(const Algebra& algebra, const Eigen::MatrixXcd& u) {
  if (!is_matrix_kind(algebra.kind())) {
    throw Error(ErrorCode::kUnsupportedAlgebra, "conjugation needs SymN or HermN");
  }
  const int n = algebra.size();
  if (u.rows() != n || u.cols() != n) throw Error(ErrorCode::kSizeMismatch, "unitary has wrong size");
  if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).norm() > 1e-9) {
    throw Error(ErrorCode::kNotAutomorphism, "matrix is not unitary");
  }
  if (algebra.kind() == Kind::kSymN && u.imag().cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorCode::kNotAutomorphism, "SymN conjugation needs a real orthogonal matrix");
  }
  Eigen::MatrixXd m = LinearMap::tabulate(algebra, [&](const Element& x) {
    return from_complex(algebra, u * as_complex(x) * u.adjoint());
  });
  auto p = automorphism_provenance(AutomorphismForm::kConjugation);
  p->unitary = u;
  return LinearMap(algebra, std::move(m), std::move(p));
}

LinearMap permutation_automorphism(const Algebra& algebra, const std::vector<int>& perm) {
  if (algebra.kind() != Kind::kRN) {
    throw Error(ErrorCode::kUnsupportedAlgebra, "permutation automorphisms act on RN");
  }
  const int n = algebra.size();
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(static_cast<std::size_t>(n));
  std::iota(expected.begin(), expected.end(), 0);
  if (sorted != expected) throw Error(ErrorCode::kNotAutomorphism, "not a permutation");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) m(perm[static_cast<std::size_t>(j)], j) = 1.0;
  auto p = automorphism_provenance(AutomorphismForm::kPermutation);
  p->permutation = perm;
  return LinearMap(algebra, std::move(m), std::move(p));
}

LinearMap spin_orthogonal(const Algebra& algebra, const Eigen::MatrixXd& r) {
  if (algebra.kind() != Kind::kSpinN) {
    throw Error(ErrorCode::kUnsupportedAlgebra, "spin_orthogonal acts on SpinN");
  }
  const int k = algebra.dim() - 1;
  if (r.rows() != k || r.cols() != k) throw Error(ErrorCode::kSizeMismatch, "rotation has wrong size");
  if ((r.transpose() * r - Eigen::MatrixXd::Identity(k, k)).norm() > 1e-9) {
    throw Error(ErrorCode::kNotAutomorphism, "matrix is not orthogonal");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(k + 1, k + 1);
  m.bottomRightCorner(k, k) = r;
  auto p = automorphism_provenance(AutomorphismForm::kSpinOrthogonal);
  p->orthogonal = r;
  return LinearMap(algebra, std::move(m), std::move(p));
}

LinearMap frame_automorphism(const JordanFrame& src, const JordanFrame& dst) {
  require_same_algebra(src.algebra, dst.algebra);
  const Algebra& alg = src.algebra;
  require_single_block(alg);
  validate_frame(src, 1e-8);
  validate_frame(dst, 1e-8);
  const int n = src.size();
  switch (alg.kind()) {
    case Kind::kRN: {
      std::vector<int> perm(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        Eigen::Index from = 0;
        Eigen::Index to = 0;
        src[i].coords().maxCoeff(&from);
        dst[i].coords().maxCoeff(&to);
        perm[static_cast<std::size_t>(from)] = static_cast<int>(to);
      }
      return permutation_automorphism(alg, perm);
    }
    case Kind::kSymN:
    case Kind::kHermN: {
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        const Eigen::VectorXcd a = projector_vector(as_complex(src[i]));
        const Eigen::VectorXcd b = projector_vector(as_complex(dst[i]));
        u += b * a.adjoint();
      }
      if (alg.kind() == Kind::kSymN) u = u.real().cast<cd>();
      return conjugation(alg, u);
    }
    case Kind::kSpinN: {
      // src[0] = (1/2)(1, u), dst[0] = (1/2)(1, v) in natural coordinates.
      const Eigen::VectorXd a = 2.0 * spin_natural(src[0]).tail(alg.dim() - 1);
      const Eigen::VectorXd b = 2.0 * spin_natural(dst[0]).tail(alg.dim() - 1);
      const int k = alg.dim() - 1;
      Eigen::MatrixXd r = Eigen::MatrixXd::Identity(k, k);
      const Eigen::VectorXd w = a / a.norm() - b / b.norm();
      if (w.norm() > 1e-14) r -= 2.0 * w * w.transpose() / w.squaredNorm();
      return spin_orthogonal(alg, r);
    }
    case Kind::kProduct: break;
  }
  throw Error(ErrorCode::kNotSimple, alg.describe());
}

LinearMap inverse_automorphism(const LinearMap& phi) {
  if (phi.provenance_kind() != ProvenanceKind::kAutomorphism) {
    throw Error(ErrorCode::kNotAutomorphism, "map does not have automorphism provenance");
  }
  // Automorphisms are orthogonal in the trace inner product.
  return adjoint(phi);
}

double multiplicativity_residual(const LinearMap& phi, int pairs, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    const Element x = random_element(phi.algebra(), rng);
    const Element y = random_element(phi.algebra(), rng);
    const double r = norm(phi(jordan_product(x, y)) - jordan_product(phi(x), phi(y)));
    worst = std::max(worst, r / (1.0 + norm(x) * norm(y)));
  }
  return worst;
}

std::string_view to_string(Positivity p) {
  switch (p) {
    case Positivity::kByConstruction: return "BY_CONSTRUCTION";
    case Positivity::kFalsified: return "FALSIFIED";
    case Positivity::kUnknown: return "UNKNOWN";
  }
  return "?";
}

Classification classify(const LinearMap& t, double tol, int trials, std::uint64_t seed) {
  Classification c;
  const Algebra& alg = t.algebra();
  const Element e = unit(alg);
  const Element te = t(e);
  c.unit_residual = norm(te - e);
  c.trace_residual = norm(adjoint(t)(e) - e);
  c.unital = c.unit_residual <= tol;
  c.trace_preserving = c.trace_residual <= tol;
  c.subunital = min_eigenvalue(e - te) >= -tol;
  c.asserted_positive = t.positivity_asserted();
  if (t.positive_by_construction()) {
    c.positivity = Positivity::kByConstruction;
  } else {
    Rng rng(seed);
    for (int k = 0; k < trials; ++k) {
      const Element x = random_cone_element(alg, rng);
      const double m = min_eigenvalue(t(x)) / (1.0 + norm(x));
      c.worst_image_eigenvalue = k == 0 ? m : std::min(c.worst_image_eigenvalue, m);
      ++c.positivity_trials;
      if (m < -10.0 * tol) {
        c.positivity = Positivity::kFalsified;
        break;
      }
    }
  }
  const bool positive = c.positivity == Positivity::kByConstruction ||
                        (c.asserted_positive && c.positivity != Positivity::kFalsified);
  c.doubly_stochastic = positive && c.unital && c.trace_preserving;
  return c;
}

MajorizationProbe ds_majorization_probe(const LinearMap& t, int trials, double tol,
                                        std::uint64_t seed) {
  Rng rng(seed);
  MajorizationProbe probe;
  probe.worst_slack = std::numeric_limits<double>::infinity();
  for (int k = 0; k < trials; ++k) {
    const Element x = random_element(t.algebra(), rng);
    const double scale = 1.0 + norm(x);
    const auto r = element_majorize(t(x), x, tol * scale);
    const double slack = std::min(r.min_slack(), -std::abs(r.total_gap)) / scale;
    ++probe.trials;
    if (!r.strictly()) ++probe.failures;
    if (slack < probe.worst_slack) {
      probe.worst_slack = slack;
      probe.worst_x = x.coords();
    }
  }
  if (probe.trials == 0) probe.worst_slack = 0.0;
  return probe;
}

Eigen::MatrixXd random_correlation(int n, Rng& rng) {
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.normal();
  const Eigen::MatrixXd m = g * g.transpose();
  const Eigen::VectorXd s = m.diagonal().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd c = s.asDiagonal() * m * s.asDiagonal();
  c = (0.5 * (c + c.transpose())).eval();
  c.diagonal().setOnes();
  return c;
}

Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

Eigen::MatrixXcd random_unitary(int n, Rng& rng) {
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    g.data()[i] = cd(re, im);
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(rng.index(i + 1))]);
  return perm;
}

LinearMap random_automorphism(const Algebra& algebra, Rng& rng) {
  switch (algebra.kind()) {
    case Kind::kRN: return permutation_automorphism(algebra, random_permutation(algebra.size(), rng));
    case Kind::kSymN: return conjugation(algebra, random_orthogonal(algebra.size(), rng).cast<cd>());
    case Kind::kHermN: return conjugation(algebra, random_unitary(algebra.size(), rng));
    case Kind::kSpinN: return spin_orthogonal(algebra, random_orthogonal(algebra.dim() - 1, rng));
    case Kind::kProduct: break;
  }
  throw Error(ErrorCode::kNotSimple, "random automorphisms need a single-block algebra");
}

std::vector<Eigen::MatrixXcd> random_unital_kraus(int n, int count, Rng& rng) {
  std::vector<Eigen::MatrixXcd> g(static_cast<std::size_t>(count), Eigen::MatrixXcd(n, n));
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
  for (auto& a : g) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      a.data()[i] = cd(re, im);
    }
    s += a * a.adjoint();
  }
  const Eigen::MatrixXcd inv_sqrt =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(s).operatorInverseSqrt();
  for (auto& a : g) a = (inv_sqrt * a).eval();
  return g;
}

}  // namespace eja
