#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eja/algebra.hpp"
#include "eja/linear_map.hpp"
#include "eja/lp.hpp"
#include "eja/majorization.hpp"

namespace eja {

/// Omega_p = {A >= 0 : Ah majorized by h for h in {e, p, p^2}} over the
/// row-major entries a_ij -> variable i*n + j.
///
/// Ae majorized by e forces Ae = e, so the description is: Ae = e, the totals
/// <Ah, e> = <h, e> for h = p, p^2, and for those two h every subset S of
/// size k < n gives sum_{i in S} (Ah)_i <= sum_{j<=k} h_j^down.
struct OmegaPolytope {
  int n = 0;
  Eigen::VectorXd p;
  Polyhedron region;
};

/// Throws P_NOT_POSITIVE, DEGENERATE_SPECTRUM.
OmegaPolytope omega_polytope(const Eigen::VectorXd& p);

/// {A >= 0 : Ah = h for h in {e, p, p^2}}, the feasibility set of the matrix
/// Korovkin theorem.
Polyhedron korovkin_polytope(const Eigen::VectorXd& p);

Eigen::VectorXd matrix_to_vars(const Eigen::MatrixXd& a);
Eigen::MatrixXd vars_to_matrix(const Eigen::VectorXd& x, int n);

/// Nonnegative with unit row and column sums, all within tol.
bool is_doubly_stochastic_matrix(const Eigen::MatrixXd& a, double tol);

struct OmegaMembership {
  bool member = false;
  double min_entry = 0.0;
  std::array<MajorizationReport, 3> reports;  // h = e, p, p^2
};

/// Throws P_NOT_POSITIVE, DEGENERATE_SPECTRUM, SIZE_MISMATCH.
OmegaMembership omega_membership(const Eigen::MatrixXd& a, const Eigen::VectorXd& p, double tol);

struct OmegaVertices {
  std::vector<Eigen::MatrixXd> vertices;
  int lp_trials = 0;
  /// max over random objectives of |LP optimum - best vertex value|
  double max_lp_gap = 0.0;
  /// max over random objectives of the distance from the LP argmax to the nearest vertex
  double max_argmax_distance = 0.0;
  bool complete = false;
  bool all_doubly_stochastic = false;
};

/// Vertex enumeration for n <= 3 (RANK_TOO_LARGE otherwise), checked for
/// completeness against `lp_trials` random objectives.
OmegaVertices omega_vertices(const Eigen::VectorXd& p, int lp_trials = 10000, std::uint64_t seed = 0);

/// Optimizes <objective, A> (entrywise) over Omega_p.
LpSolution omega_lp(const OmegaPolytope& omega, const Eigen::MatrixXd& objective, Sense sense);

struct ColumnSumWitness {
  int column = 0;
  double value = 0.0;
  Eigen::MatrixXd matrix;
  bool validated = false;  // member of Omega_p and not doubly stochastic
};

struct NonDsSample {
  Eigen::VectorXd p;
  Eigen::VectorXd column_min;  // LP minimum of each column sum
  Eigen::VectorXd column_max;
  std::vector<ColumnSumWitness> witnesses;
  /// every column sum is pinned to 1 within 1e-6
  bool certified_ds = false;
};

struct NonDsReport {
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<NonDsSample> samples;
  int witness_count = 0;  // validated witnesses only
};

/// For each of `p_samples` random positive distinct p, solves the 2n column-sum
/// LPs over Omega_p. Samples run on `threads` workers; results do not depend on it.
/// Needs 2 <= n <= 6 (SIZE_MISMATCH, RANK_TOO_LARGE).
NonDsReport non_ds_search(int n, int p_samples, std::uint64_t seed, int threads = 1);

struct BasisDsReport {
  bool all_majorized = false;
  int first_failing_power = -1;  // j with A p^j not majorized by p^j
  double column_sum_residual = 0.0;  // ||A^T e - e||_inf
  double bound = 0.0;  // allowed residual when all_majorized
  bool bound_holds = true;
  bool doubly_stochastic = false;
};

/// Checks A p^j majorized by p^j for j = 0..n-1. When all hold, the powers span
/// R^n, so A^T e = e up to ||V^-1||_inf times the totals' tolerance.
BasisDsReport basis_ds_criterion(const Eigen::MatrixXd& a, const Eigen::VectorXd& p, double tol);

struct KadisonCandidate {
  int trial = 0;
  double slack = 0.0;
  double reverified = 0.0;
};

struct KadisonReport {
  Algebra algebra;
  int trials = 0;
  std::uint64_t seed = 0;
  /// min over trials of the smallest eigenvalue of T(x^2) - T(x)^2, ||x|| = 1
  double min_slack = 0.0;
  int witness_trial = -1;
  std::string witness_family;
  std::optional<LinearMap> witness_map;
  std::optional<Element> witness_x;
  std::vector<KadisonCandidate> candidates;  // slack < -1e-7 and confirmed at 1e-12
};

/// Samples positive (sub)unital maps (Schur, completely positive, diagonal,
/// automorphisms, convex combinations) and unit-norm x.
KadisonReport kadison_probe(const Algebra& algebra, int trials, std::uint64_t seed, int threads = 1);

}  // namespace eja
