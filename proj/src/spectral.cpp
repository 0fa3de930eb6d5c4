#include "eja/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "eja/error.hpp"
#include "eja/jacobi.hpp"

namespace eja {

namespace {

struct Eigenpair {
  double value;
  Element idempotent;
};

void block_spectral(const Element& x, int bi, std::vector<Eigenpair>& out, bool& degenerate) {
  const Algebra& alg = x.algebra();
  const Block& b = alg.blocks()[static_cast<std::size_t>(bi)];
  const auto seg = x.coords().segment(b.offset, b.dim);
  auto embed = [&](const Eigen::VectorXd& local) {
    Element c = Element::zero(alg);
    c.coords().segment(b.offset, b.dim) = local;
    return c;
  };
  switch (b.kind) {
    case Kind::kRN:
      for (int i = 0; i < b.n; ++i) {
        Eigen::VectorXd local = Eigen::VectorXd::Zero(b.dim);
        local(i) = 1.0;
        out.push_back({seg(i), embed(local)});
      }
      return;
    case Kind::kSymN: {
      const Eigen::MatrixXd m = sym_matrix_from(std::span<const double>(seg.data(), b.dim), b.n);
      const auto r = jacobi_eigen<double>(m);
      for (int i = 0; i < b.n; ++i) {
        const Eigen::VectorXd v = r.vectors.col(i);
        Eigen::VectorXd local(b.dim);
        sym_coords_from(v * v.transpose(), std::span<double>(local.data(), b.dim));
        out.push_back({r.values(i), embed(local)});
      }
      return;
    }
    case Kind::kHermN: {
      const Eigen::MatrixXcd m = herm_matrix_from(std::span<const double>(seg.data(), b.dim), b.n);
      const auto r = jacobi_eigen<std::complex<double>>(m);
      for (int i = 0; i < b.n; ++i) {
        const Eigen::VectorXcd v = r.vectors.col(i);
        Eigen::VectorXd local(b.dim);
        herm_coords_from(v * v.adjoint(), std::span<double>(local.data(), b.dim));
        out.push_back({r.values(i), embed(local)});
      }
      return;
    }
    case Kind::kSpinN: {
      const Eigen::VectorXd nat = seg / std::numbers::sqrt2;
      const double x0 = nat(0);
      Eigen::VectorXd u = nat.tail(b.dim - 1);
      const double r = u.norm();
      if (r == 0.0) {
        degenerate = true;
        u.setZero();
        u(0) = 1.0;
      } else {
        u /= r;
      }
      for (double sign : {1.0, -1.0}) {
        Eigen::VectorXd local(b.dim);
        local(0) = 0.5;
        local.tail(b.dim - 1) = 0.5 * sign * u;
        out.push_back({x0 + sign * r, embed(local * std::numbers::sqrt2)});
      }
      return;
    }
    case Kind::kProduct: break;
  }
}

}  // namespace

Element PeirceDecomposition::reconstruct() const {
  Element x = compose(std::span<const double>(diagonal.data(), static_cast<std::size_t>(diagonal.size())), frame);
  for (const auto& [key, blk] : off_blocks) x += blk;
  return x;
}

SpectralDecomposition spectral(const Element& x) {
  std::vector<Eigenpair> pairs;
  bool degenerate = false;
  const int nb = static_cast<int>(x.algebra().blocks().size());
  for (int bi = 0; bi < nb; ++bi) block_spectral(x, bi, pairs, degenerate);

  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return pairs[i].value > pairs[j].value; });
  SpectralDecomposition out{Eigen::VectorXd(static_cast<Eigen::Index>(pairs.size())),
                            JordanFrame{x.algebra(), {}}, false};
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.eigenvalues(static_cast<Eigen::Index>(k)) = pairs[order[k]].value;
    out.frame.idempotents.push_back(pairs[order[k]].idempotent);
  }
  out.spin_degenerate = degenerate;
  return out;
}

Eigen::VectorXd eigenvalues(const Element& x) { return spectral(x).eigenvalues; }

double min_eigenvalue(const Element& x) { return eigenvalues(x).minCoeff(); }

double inf_norm(const Element& x) { return eigenvalues(x).cwiseAbs().maxCoeff(); }

bool in_cone(const Element& x, double tol) { return min_eigenvalue(x) >= -tol; }

std::pair<Element, Element> pos_neg_parts(const Element& x) {
  const auto s = spectral(x);
  const Eigen::VectorXd plus = s.eigenvalues.cwiseMax(0.0);
  Element xp = compose(std::span<const double>(plus.data(), static_cast<std::size_t>(plus.size())), s.frame);
  Element xm = xp - x;
  return {std::move(xp), std::move(xm)};
}

LinearMap l_op(const Element& a) {
  Eigen::MatrixXd m =
      LinearMap::tabulate(a.algebra(), [&](const Element& b) { return jordan_product(a, b); });
  m = (0.5 * (m + m.transpose())).eval();
  return LinearMap::raw(a.algebra(), std::move(m));
}

LinearMap quad_rep(const Element& a) {
  const Eigen::MatrixXd la = l_op(a).matrix();
  const Eigen::MatrixXd la2 = l_op(square(a)).matrix();
  Eigen::MatrixXd p = 2.0 * la * la - la2;
  p = (0.5 * (p + p.transpose())).eval();
  return LinearMap::raw(a.algebra(), std::move(p), /*asserted_positive=*/true);
}

double commutator_norm(const Element& a, const Element& b) {
  const Eigen::MatrixXd la = l_op(a).matrix();
  const Eigen::MatrixXd lb = l_op(b).matrix();
  return (la * lb - lb * la).norm();
}

bool operator_commute(const Element& a, const Element& b, double tol) {
  return commutator_norm(a, b) <= tol;
}

double FrameResiduals::max() const { return std::max({idempotency, trace, orthogonality, unit}); }

FrameResiduals frame_residuals(const JordanFrame& frame) {
  FrameResiduals r;
  Element sum = Element::zero(frame.algebra);
  for (int i = 0; i < frame.size(); ++i) {
    const Element& c = frame[i];
    require_same_algebra(frame.algebra, c.algebra());
    r.idempotency = std::max(r.idempotency, norm(square(c) - c));
    r.trace = std::max(r.trace, std::abs(trace(c) - 1.0));
    for (int j = i + 1; j < frame.size(); ++j)
      r.orthogonality = std::max(r.orthogonality, norm(jordan_product(c, frame[j])));
    sum += c;
  }
  r.unit = norm(sum - unit(frame.algebra));
  return r;
}

void validate_frame(const JordanFrame& frame, double tol) {
  if (frame.size() != frame.algebra.rank()) {
    throw Error(ErrorCode::kInvalidFrame, "frame has " + std::to_string(frame.size()) +
                                              " members, rank is " +
                                              std::to_string(frame.algebra.rank()));
  }
  const FrameResiduals r = frame_residuals(frame);
  if (r.max() > tol) {
    throw Error(ErrorCode::kInvalidFrame, "frame residual " + std::to_string(r.max()));
  }
}

Eigen::MatrixXd peirce_projection(const JordanFrame& frame, int i, int j) {
  if (i == j) return quad_rep(frame[i]).matrix();
  const Eigen::MatrixXd li = l_op(frame[i]).matrix();
  const Eigen::MatrixXd lj = l_op(frame[j]).matrix();
  Eigen::MatrixXd p = 2.0 * (li * lj + lj * li);
  return p;
}

PeirceDecomposition peirce(const Element& x, const JordanFrame& frame) {
  require_same_algebra(x.algebra(), frame.algebra);
  validate_frame(frame, 1e-8);
  PeirceDecomposition out{frame, Eigen::VectorXd(frame.size()), {}};
  for (int i = 0; i < frame.size(); ++i) out.diagonal(i) = inner(x, frame[i]);
  for (int i = 0; i < frame.size(); ++i) {
    for (int j = i + 1; j < frame.size(); ++j) {
      out.off_blocks.emplace(std::pair{i, j},
                             Element(x.algebra(), peirce_projection(frame, i, j) * x.coords()));
    }
  }
  return out;
}

double peirce_identity_residual(const JordanFrame& frame) {
  const int d = frame.algebra.dim();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < frame.size(); ++i)
    for (int j = i; j < frame.size(); ++j) sum += peirce_projection(frame, i, j);
  return (sum - Eigen::MatrixXd::Identity(d, d)).norm();
}

Eigen::MatrixXd delta_matrix(const Element& x, const Element& y, const JordanFrame& frame) {
  const PeirceDecomposition px = peirce(x, frame);
  const PeirceDecomposition py = peirce(y, frame);
  const int n = frame.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = px.diagonal(i) * py.diagonal(i);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = m(j, i) = 0.5 * inner(px.block(i, j), py.block(i, j));
    }
  }
  return m;
}

bool check_zero_diagonal(const Element& x, const JordanFrame& frame, int i, double tol) {
  const double scale = 1.0 + norm(x);
  if (min_eigenvalue(x) < -tol * scale) {
    throw Error(ErrorCode::kXNotInCone, "element has a negative eigenvalue");
  }
  const PeirceDecomposition p = peirce(x, frame);
  if (std::abs(p.diagonal(i)) > tol * scale) {
    throw Error(ErrorCode::kDiagonalNotZero,
                "x_" + std::to_string(i) + " = " + std::to_string(p.diagonal(i)));
  }
  const double bound = std::sqrt(tol) * 2.0 * scale;
  for (const auto& [key, blk] : p.off_blocks) {
    if ((key.first == i || key.second == i) && norm(blk) > bound) return false;
  }
  return true;
}

double min_gap(const Eigen::VectorXd& values) {
  if (values.size() < 2) return std::numeric_limits<double>::infinity();
  std::vector<double> v(values.data(), values.data() + values.size());
  std::sort(v.begin(), v.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < v.size(); ++k) gap = std::min(gap, v[k] - v[k - 1]);
  return gap;
}

double default_gap_threshold(const Eigen::VectorXd& values) {
  const double spread = values.size() ? values.maxCoeff() - values.minCoeff() : 0.0;
  return 1e-8 * (1.0 + spread);
}

bool has_distinct_values(const Eigen::VectorXd& values) {
  return min_gap(values) > default_gap_threshold(values);
}

Element random_element(const Algebra& algebra, Rng& rng) {
  Eigen::VectorXd c(algebra.dim());
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = rng.normal();
  return Element(algebra, std::move(c));
}

Element random_cone_element(const Algebra& algebra, Rng& rng) {
  return square(random_element(algebra, rng));
}

JordanFrame random_frame(const Algebra& algebra, Rng& rng) {
  return spectral(random_element(algebra, rng)).frame;
}

}  // namespace eja
