#include "eja/majorization.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eja/error.hpp"
#include "eja/spectral.hpp"

namespace eja {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::kMajorizesWeak: return "MAJORIZES_WEAK";
    case Relation::kMajorizes: return "MAJORIZES";
    case Relation::kNeither: return "NEITHER";
  }
  return "?";
}

double MajorizationReport::min_slack() const {
  return partial_sum_slack.size() ? partial_sum_slack.minCoeff() : 0.0;
}

std::vector<int> decreasing_order(const Eigen::VectorXd& v) {
  std::vector<int> order(static_cast<std::size_t>(v.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return v(i) > v(j); });
  return order;
}

Eigen::VectorXd sorted_decreasing(const Eigen::VectorXd& v) {
  const auto order = decreasing_order(v);
  Eigen::VectorXd out(v.size());
  for (std::size_t k = 0; k < order.size(); ++k) out(static_cast<Eigen::Index>(k)) = v(order[k]);
  return out;
}

double default_majorization_tol(const Eigen::VectorXd& y) {
  return 1e-9 * (1.0 + (y.size() ? y.cwiseAbs().maxCoeff() : 0.0));
}

MajorizationReport majorize_check(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double tol) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
  const Eigen::VectorXd xs = sorted_decreasing(x);
  const Eigen::VectorXd ys = sorted_decreasing(y);
  MajorizationReport r;
  r.partial_sum_slack.resize(x.size());
  double sx = 0.0;
  double sy = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    sx += xs(k);
    sy += ys(k);
    r.partial_sum_slack(k) = sy - sx;
  }
  r.total_gap = sy - sx;
  const bool weak = r.partial_sum_slack.size() == 0 || r.min_slack() >= -tol;
  if (weak && std::abs(r.total_gap) <= tol) {
    r.relation = Relation::kMajorizes;
  } else if (weak) {
    r.relation = Relation::kMajorizesWeak;
  } else {
    r.relation = Relation::kNeither;
  }
  return r;
}

MajorizationReport element_majorize(const Element& x, const Element& y, double tol) {
  require_same_algebra(x.algebra(), y.algebra());
  return majorize_check(eigenvalues(x), eigenvalues(y), tol);
}

Eigen::MatrixXd hlp_witness(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const auto check = majorize_check(x, y, 1e-10);
  if (!check.strictly()) {
    throw Error(ErrorCode::kNotMajorized, "x is not majorized by y");
  }
  const Eigen::Index n = x.size();
  const auto ox = decreasing_order(x);
  const auto oy = decreasing_order(y);
  Eigen::VectorXd xs(n);
  Eigen::VectorXd z(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    xs(k) = x(ox[static_cast<std::size_t>(k)]);
    z(k) = y(oy[static_cast<std::size_t>(k)]);
  }
  const double eps = 1e-13 * (1.0 + z.cwiseAbs().maxCoeff());
  Eigen::MatrixXd ds = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index step = 0; step < n; ++step) {
    Eigen::Index j = -1;
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      if (z(i) > xs(i) + eps) {
        j = i;
        break;
      }
    }
    if (j < 0) break;
    Eigen::Index k = -1;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      if (z(i) < xs(i) - eps) {
        k = i;
        break;
      }
    }
    if (k < 0) break;
    const double delta = std::min(z(j) - xs(j), xs(k) - z(k));
    const double s = delta / (z(j) - z(k));  // weight of the swap
    Eigen::MatrixXd t = Eigen::MatrixXd::Identity(n, n);
    t(j, j) = 1.0 - s;
    t(j, k) = s;
    t(k, j) = s;
    t(k, k) = 1.0 - s;
    ds = (t * ds).eval();
    const double zj = z(j);
    const double zk = z(k);
    z(j) = (1.0 - s) * zj + s * zk;
    z(k) = s * zj + (1.0 - s) * zk;
  }
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      d(ox[static_cast<std::size_t>(a)], oy[static_cast<std::size_t>(b)]) = ds(a, b);
  return d;
}

double doubly_stochastic_residual(const Eigen::MatrixXd& d) {
  if (d.size() == 0) return 0.0;
  const double rows = (d.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double cols = (d.colwise().sum().array() - 1.0).abs().maxCoeff();
  const double neg = std::max(0.0, -d.minCoeff());
  return std::max({rows, cols, neg});
}

Eigen::MatrixXd permutation_matrix(const std::vector<int>& permutation) {
  const auto n = static_cast<Eigen::Index>(permutation.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) p(i, permutation[static_cast<std::size_t>(i)]) = 1.0;
  return p;
}

Eigen::MatrixXd reconstruct(const std::vector<BirkhoffTerm>& terms, int n) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (const auto& t : terms) d += t.weight * permutation_matrix(t.permutation);
  return d;
}

namespace {

// Kuhn's augmenting-path matching on the mask; returns row -> column or empty.
std::vector<int> perfect_matching(const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& mask) {
  const int n = static_cast<int>(mask.rows());
  std::vector<int> col_owner(static_cast<std::size_t>(n), -1);
  for (int r = 0; r < n; ++r) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    auto augment = [&](auto&& self, int row) -> bool {
      for (int c = 0; c < n; ++c) {
        if (!mask(row, c) || seen[static_cast<std::size_t>(c)]) continue;
        seen[static_cast<std::size_t>(c)] = 1;
        if (col_owner[static_cast<std::size_t>(c)] < 0 ||
            self(self, col_owner[static_cast<std::size_t>(c)])) {
          col_owner[static_cast<std::size_t>(c)] = row;
          return true;
        }
      }
      return false;
    };
    if (!augment(augment, r)) return {};
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) perm[static_cast<std::size_t>(col_owner[static_cast<std::size_t>(c)])] = c;
  return perm;
}

// Perfect matching maximizing the smallest matched entry.
std::vector<int> bottleneck_matching(const Eigen::MatrixXd& r, double eps) {
  std::vector<double> levels;
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (r.data()[i] > eps) levels.push_back(r.data()[i]);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<int> best;
  std::size_t lo = 0;
  std::size_t hi = levels.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto m = perfect_matching((r.array() >= levels[mid]).matrix());
    if (!m.empty()) {
      best = m;
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return best;
}

// Drops terms until the count is at most (n-1)^2 + 1 using affine
// dependencies among the permutation matrices.
void prune(std::vector<BirkhoffTerm>& terms, int n) {
  const std::size_t bound = static_cast<std::size_t>((n - 1) * (n - 1) + 1);
  while (terms.size() > bound) {
    const auto m = static_cast<Eigen::Index>(terms.size());
    Eigen::MatrixXd a(n * n + 1, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      const Eigen::MatrixXd p = permutation_matrix(terms[static_cast<std::size_t>(k)].permutation);
      a.col(k).head(n * n) = Eigen::Map<const Eigen::VectorXd>(p.data(), n * n);
      a(n * n, k) = 1.0;
    }
    const Eigen::MatrixXd kernel = Eigen::FullPivLU<Eigen::MatrixXd>(a).kernel();
    Eigen::VectorXd c = kernel.col(0);
    if (c.maxCoeff() <= 0.0) c = -c;
    double alpha = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < m; ++k)
      if (c(k) > 1e-12) alpha = std::min(alpha, terms[static_cast<std::size_t>(k)].weight / c(k));
    std::vector<BirkhoffTerm> next;
    bool dropped = false;
    for (Eigen::Index k = 0; k < m; ++k) {
      auto t = terms[static_cast<std::size_t>(k)];
      t.weight -= alpha * c(k);
      if (t.weight <= 1e-15 && !dropped) {
        dropped = true;
        continue;
      }
      if (t.weight > 1e-15) next.push_back(std::move(t));
    }
    terms = std::move(next);
  }
}

}  // namespace

std::vector<BirkhoffTerm> birkhoff(const Eigen::MatrixXd& d, double tol) {
  if (d.rows() != d.cols()) throw Error(ErrorCode::kSizeMismatch, "matrix not square");
  if (doubly_stochastic_residual(d) > tol) {
    throw Error(ErrorCode::kNotDoublyStochastic,
                "residual " + std::to_string(doubly_stochastic_residual(d)));
  }
  const int n = static_cast<int>(d.rows());
  const double eps = std::max(1e-14, std::min(tol, 1e-12));
  Eigen::MatrixXd r = d.cwiseMax(0.0);
  std::vector<BirkhoffTerm> terms;
  for (int iter = 0; iter < n * n + 1 && r.maxCoeff() > eps; ++iter) {
    const auto perm = bottleneck_matching(r, eps);
    if (perm.empty()) break;
    double w = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) w = std::min(w, r(i, perm[static_cast<std::size_t>(i)]));
    for (int i = 0; i < n; ++i) {
      double& entry = r(i, perm[static_cast<std::size_t>(i)]);
      entry -= w;
      if (entry < eps) entry = 0.0;
    }
    terms.push_back({w, perm});
  }
  prune(terms, n);
  if (terms.size() > static_cast<std::size_t>((n - 1) * (n - 1) + 1)) {
    throw Error(ErrorCode::kNumericalStall, "Birkhoff term bound exceeded");
  }
  return terms;
}

}  // namespace eja
