#pragma once

#include <Eigen/Dense>

#include <vector>

#include "eja/algebra.hpp"

namespace eja {

enum class Relation { kMajorizesWeak, kMajorizes, kNeither };

std::string_view to_string(Relation r);

/// Result of comparing x against y ("x is majorized by y").
struct MajorizationReport {
  Relation relation = Relation::kNeither;
  /// k-th entry: sum_{j<=k} y_j^down - sum_{j<=k} x_j^down.
  Eigen::VectorXd partial_sum_slack;
  /// sum y - sum x
  double total_gap = 0.0;

  double min_slack() const;
  bool weakly() const { return relation != Relation::kNeither; }
  bool strictly() const { return relation == Relation::kMajorizes; }
};

/// Decreasing rearrangement; ties keep their original order.
Eigen::VectorXd sorted_decreasing(const Eigen::VectorXd& v);
/// order[k] = index of the k-th largest entry (stable).
std::vector<int> decreasing_order(const Eigen::VectorXd& v);

/// Tolerance used when none is given: 1e-9 * (1 + ||y||_inf).
double default_majorization_tol(const Eigen::VectorXd& y);

MajorizationReport majorize_check(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double tol);
MajorizationReport element_majorize(const Element& x, const Element& y, double tol);

/// Doubly stochastic D with D y = x, built from at most n-1 T-transforms.
/// Throws NOT_MAJORIZED unless x is majorized by y within 1e-10.
Eigen::MatrixXd hlp_witness(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

struct BirkhoffTerm {
  double weight;
  std::vector<int> permutation;  // row i -> column permutation[i]
};

/// Convex decomposition of a doubly stochastic matrix into permutation
/// matrices, extracted greedily with a bottleneck perfect matching and then
/// pruned to at most (n-1)^2 + 1 terms.
std::vector<BirkhoffTerm> birkhoff(const Eigen::MatrixXd& d, double tol);

Eigen::MatrixXd permutation_matrix(const std::vector<int>& permutation);
Eigen::MatrixXd reconstruct(const std::vector<BirkhoffTerm>& terms, int n);

/// Max deviation of row/column sums from 1 and of entries below 0.
double doubly_stochastic_residual(const Eigen::MatrixXd& d);

}  // namespace eja
