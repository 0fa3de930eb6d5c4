#pragma once

#include <Eigen/Dense>

#include <vector>

namespace eja {

/// {x >= 0 : a_eq x = b_eq, a_le x <= b_le}
struct Polyhedron {
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
  Eigen::MatrixXd a_le;
  Eigen::VectorXd b_le;

  int dim() const { return static_cast<int>(std::max(a_eq.cols(), a_le.cols())); }
};

/// Empty polyhedron description over `dim` variables.
Polyhedron make_polyhedron(int dim);
void add_equality(Polyhedron& poly, const Eigen::VectorXd& row, double rhs);
void add_inequality(Polyhedron& poly, const Eigen::VectorXd& row, double rhs);

/// Largest violation of any constraint of `poly` at x (0 when feasible).
double feasibility_violation(const Polyhedron& poly, const Eigen::VectorXd& x);

enum class Sense { kMaximize, kMinimize };

struct LpProblem {
  Polyhedron region;
  Eigen::VectorXd objective;
  Sense sense = Sense::kMaximize;
};

struct LpSolution {
  double optimum = 0.0;
  Eigen::VectorXd x;
  int iterations = 0;
};

/// Dense two-phase simplex with Bland's rule. Throws INFEASIBLE, UNBOUNDED,
/// or NUMERICAL_STALL when the pivot budget runs out.
LpSolution lp_solve(const LpProblem& problem, int max_pivots = 100000);

/// All vertices, by brute force over active-constraint subsets of the
/// inequality rows (x >= 0 included), deduplicated within `tol`.
std::vector<Eigen::VectorXd> enumerate_vertices(const Polyhedron& poly, double tol = 1e-8);

/// x is feasible and the optimal face of the summed active normals is {x}.
/// Costs 2 * dim LP solves.
bool is_extreme_point(const Polyhedron& poly, const Eigen::VectorXd& x, double tol = 1e-8);

}  // namespace eja
