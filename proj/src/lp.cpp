#include "eja/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eja/error.hpp"

namespace eja {

namespace {

constexpr double kPivotEps = 1e-11;

void append_row(Eigen::MatrixXd& m, Eigen::VectorXd& rhs, const Eigen::VectorXd& row, double b) {
  const Eigen::Index r = m.rows();
  m.conservativeResize(r + 1, row.size());
  m.row(r) = row.transpose();
  rhs.conservativeResize(r + 1);
  rhs(r) = b;
}

// Tableau in canonical form: rows 0..m-1 are constraints, row m holds the
// reduced costs c_j - c_B B^-1 A_j (maximization) and minus the objective value.
class Tableau {
 public:
  Tableau(Eigen::MatrixXd t, std::vector<int> basis) : t_(std::move(t)), basis_(std::move(basis)) {}

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  double& rhs(int i) { return t_(i, cols()); }
  double rhs(int i) const { return t_(i, cols()); }
  double value() const { return -t_(rows(), cols()); }
  const std::vector<int>& basis() const { return basis_; }
  Eigen::MatrixXd& data() { return t_; }
  int pivots() const { return pivots_; }

  void set_costs(const Eigen::VectorXd& cost) {
    const int m = rows();
    t_.row(m).setZero();
    t_.row(m).head(cost.size()) = cost.transpose();
    for (int i = 0; i < m; ++i) {
      const double cb = cost(basis_[static_cast<std::size_t>(i)]);
      if (cb != 0.0) t_.row(m) -= cb * t_.row(i);
    }
  }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    t_(r, c) = 1.0;
    basis_[static_cast<std::size_t>(r)] = c;
    ++pivots_;
  }

  void drop_row(int r) {
    const Eigen::Index last = t_.rows() - 1;
    Eigen::MatrixXd next(t_.rows() - 1, t_.cols());
    next << t_.topRows(r), t_.middleRows(r + 1, last - r);
    t_ = std::move(next);
    basis_.erase(basis_.begin() + r);
  }

  // Bland's rule over columns [0, allowed). Returns false when unbounded.
  bool optimize(int allowed, double cost_eps, int max_pivots) {
    const int m = rows();
    while (true) {
      int enter = -1;
      for (int j = 0; j < allowed; ++j) {
        if (t_(m, j) > cost_eps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      int leave_var = std::numeric_limits<int>::max();
      double best = 0.0;
      for (Eigen::Index row = 0; row < t_.rows() - 1; ++row) {
        const int i = static_cast<int>(row);
        const double a = t_(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = std::max(0.0, rhs(i)) / a;
        const double slop = 1e-13 * (1.0 + best);
        const int var = basis_[static_cast<std::size_t>(i)];
        const bool better = leave < 0 || ratio < best - slop;
        const bool tie_break = !better && ratio <= best + slop && var < leave_var;
        if (better || tie_break) {
          leave = i;
          leave_var = var;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      if (pivots_ >= max_pivots) {
        throw Error(ErrorCode::kNumericalStall,
                    "simplex exceeded " + std::to_string(max_pivots) + " pivots");
      }
      pivot(leave, enter);
    }
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  int pivots_ = 0;
};

// Inequality rows of the polyhedron including x >= 0 written as -x <= 0.
void all_inequalities(const Polyhedron& poly, Eigen::MatrixXd& g, Eigen::VectorXd& h) {
  const int d = poly.dim();
  const Eigen::Index mle = poly.a_le.rows();
  g.resize(mle + d, d);
  h.resize(mle + d);
  if (mle > 0) {
    g.topRows(mle) = poly.a_le;
    h.head(mle) = poly.b_le;
  }
  g.bottomRows(d) = -Eigen::MatrixXd::Identity(d, d);
  h.tail(d).setZero();
}

}  // namespace

Polyhedron make_polyhedron(int dim) {
  return {Eigen::MatrixXd(0, dim), Eigen::VectorXd(0), Eigen::MatrixXd(0, dim), Eigen::VectorXd(0)};
}

void add_equality(Polyhedron& poly, const Eigen::VectorXd& row, double rhs) {
  append_row(poly.a_eq, poly.b_eq, row, rhs);
}

void add_inequality(Polyhedron& poly, const Eigen::VectorXd& row, double rhs) {
  append_row(poly.a_le, poly.b_le, row, rhs);
}

double feasibility_violation(const Polyhedron& poly, const Eigen::VectorXd& x) {
  double v = std::max(0.0, -x.minCoeff());
  if (poly.a_eq.rows() > 0) v = std::max(v, (poly.a_eq * x - poly.b_eq).cwiseAbs().maxCoeff());
  if (poly.a_le.rows() > 0) v = std::max(v, (poly.a_le * x - poly.b_le).maxCoeff());
  return v;
}

LpSolution lp_solve(const LpProblem& problem, int max_pivots) {
  const Polyhedron& poly = problem.region;
  const int d = poly.dim();
  if (problem.objective.size() != d) {
    throw Error(ErrorCode::kSizeMismatch, "objective length differs from the number of variables");
  }
  const int meq = static_cast<int>(poly.a_eq.rows());
  const int mle = static_cast<int>(poly.a_le.rows());
  const int m = meq + mle;
  const int ns = d + mle;  // structural columns: variables then slacks

  // Standard form M y = b, y >= 0, with b >= 0.
  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(m, ns);
  Eigen::VectorXd b(m);
  if (meq > 0) {
    big.topLeftCorner(meq, d) = poly.a_eq;
    b.head(meq) = poly.b_eq;
  }
  if (mle > 0) {
    big.block(meq, 0, mle, d) = poly.a_le;
    big.block(meq, d, mle, mle).setIdentity();
    b.tail(mle) = poly.b_le;
  }
  for (int i = 0; i < m; ++i) {
    if (b(i) < 0) {
      big.row(i) *= -1.0;
      b(i) = -b(i);
    }
  }

  // Phase 1: one artificial per row.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, ns + m + 1);
  t.topLeftCorner(m, ns) = big;
  t.block(0, ns, m, m).setIdentity();
  t.col(ns + m).head(m) = b;
  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = ns + i;
  Tableau tab(std::move(t), std::move(basis));
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(ns + m);
  phase1.tail(m).setConstant(-1.0);
  tab.set_costs(phase1);
  tab.optimize(ns + m, 1e-12, max_pivots);
  const double infeas = -tab.value();
  if (infeas > 1e-9 * (1.0 + b.lpNorm<1>())) {
    throw Error(ErrorCode::kInfeasible, "no feasible point (phase-1 residual " + std::to_string(infeas) + ")");
  }

  // Drive artificials out of the basis; rows where that is impossible are redundant.
  std::vector<int> kept;
  for (int i = 0; i < m; ++i) kept.push_back(i);
  for (int i = tab.rows() - 1; i >= 0; --i) {
    if (tab.basis()[static_cast<std::size_t>(i)] < ns) continue;
    int col = -1;
    double best = 1e-9;
    for (int j = 0; j < ns; ++j) {
      if (std::abs(tab.data()(i, j)) > best) {
        best = std::abs(tab.data()(i, j));
        col = j;
      }
    }
    if (col >= 0) {
      tab.pivot(i, col);
    } else {
      tab.drop_row(i);
      kept.erase(kept.begin() + i);
    }
  }

  // Phase 2 on the structural columns.
  const double sign = problem.sense == Sense::kMaximize ? 1.0 : -1.0;
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(ns + m);
  cost.head(d) = sign * problem.objective;
  tab.set_costs(cost);
  const double cost_eps = 1e-10 * (1.0 + problem.objective.cwiseAbs().maxCoeff());
  if (!tab.optimize(ns, cost_eps, max_pivots)) {
    throw Error(ErrorCode::kUnbounded, "objective is unbounded on the feasible region");
  }

  // Recover the basic solution from the original data to shed tableau round-off.
  const int r = tab.rows();
  Eigen::VectorXd y = Eigen::VectorXd::Zero(ns);
  for (int i = 0; i < r; ++i) y(tab.basis()[static_cast<std::size_t>(i)]) = std::max(0.0, tab.rhs(i));
  if (r > 0) {
    Eigen::MatrixXd bm(r, r);
    Eigen::VectorXd bb(r);
    for (int i = 0; i < r; ++i) {
      bb(i) = b(kept[static_cast<std::size_t>(i)]);
      for (int k = 0; k < r; ++k) bm(i, k) = big(kept[static_cast<std::size_t>(i)], tab.basis()[static_cast<std::size_t>(k)]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(bm);
    if (lu.isInvertible()) {
      const Eigen::VectorXd xb = lu.solve(bb);
      if (xb.minCoeff() >= -1e-9) {
        y.setZero();
        for (int k = 0; k < r; ++k) y(tab.basis()[static_cast<std::size_t>(k)]) = std::max(0.0, xb(k));
      }
    }
  }
  LpSolution out;
  out.x = y.head(d);
  out.optimum = problem.objective.dot(out.x);
  out.iterations = tab.pivots();
  return out;
}

std::vector<Eigen::VectorXd> enumerate_vertices(const Polyhedron& poly, double tol) {
  const int d = poly.dim();
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(d, d);
  if (poly.a_eq.rows() > 0) {
    x0 = poly.a_eq.completeOrthogonalDecomposition().solve(poly.b_eq);
    if ((poly.a_eq * x0 - poly.b_eq).cwiseAbs().maxCoeff() > tol) return {};
    Eigen::FullPivLU<Eigen::MatrixXd> lu(poly.a_eq);
    lu.setThreshold(1e-10);
    basis = lu.rank() == d ? Eigen::MatrixXd(d, 0) : Eigen::MatrixXd(lu.kernel());
  }
  const int f = static_cast<int>(basis.cols());
  if (f == 0) {
    if (feasibility_violation(poly, x0) <= tol) return {x0};
    return {};
  }
  Eigen::MatrixXd g;
  Eigen::VectorXd h;
  all_inequalities(poly, g, h);
  const Eigen::MatrixXd gz = g * basis;
  const Eigen::VectorXd hz = h - g * x0;
  const int rows = static_cast<int>(g.rows());
  std::vector<Eigen::VectorXd> found;
  if (rows < f) return found;

  std::vector<int> pick(static_cast<std::size_t>(f));
  for (int i = 0; i < f; ++i) pick[static_cast<std::size_t>(i)] = i;
  Eigen::MatrixXd s(f, f);
  Eigen::VectorXd rhs(f);
  while (true) {
    for (int i = 0; i < f; ++i) {
      s.row(i) = gz.row(pick[static_cast<std::size_t>(i)]);
      rhs(i) = hz(pick[static_cast<std::size_t>(i)]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(s);
    lu.setThreshold(1e-10);
    if (lu.rank() == f) {
      Eigen::VectorXd x = x0 + basis * lu.solve(rhs);
      if (feasibility_violation(poly, x) <= tol) {
        x = x.cwiseMax(0.0);
        const bool seen = std::any_of(found.begin(), found.end(), [&](const Eigen::VectorXd& v) {
          return (v - x).cwiseAbs().maxCoeff() <= tol;
        });
        if (!seen) found.push_back(x);
      }
    }
    int k = f - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == rows - f + k) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (int i = k + 1; i < f; ++i) pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
  }
  return found;
}

bool is_extreme_point(const Polyhedron& poly, const Eigen::VectorXd& x, double tol) {
  if (feasibility_violation(poly, x) > tol) return false;
  const int d = poly.dim();
  Eigen::MatrixXd g;
  Eigen::VectorXd h;
  all_inequalities(poly, g, h);
  // Every point of P satisfies c.y <= sum of active right-hand sides; x attains it.
  Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
  const Eigen::VectorXd slack = h - g * x;
  for (Eigen::Index k = 0; k < g.rows(); ++k)
    if (slack(k) <= tol) c += g.row(k).transpose();
  LpProblem face{poly, Eigen::VectorXd::Zero(d), Sense::kMaximize};
  add_equality(face.region, c, c.dot(x));
  for (int i = 0; i < d; ++i) {
    face.objective.setZero();
    face.objective(i) = 1.0;
    face.sense = Sense::kMaximize;
    const double hi = lp_solve(face).optimum;
    face.sense = Sense::kMinimize;
    const double lo = lp_solve(face).optimum;
    if (hi - lo > 10.0 * tol) return false;
  }
  return true;
}

}  // namespace eja
