#pragma once

#include <Eigen/Dense>

#include <map>
#include <utility>

#include "eja/algebra.hpp"
#include "eja/linear_map.hpp"
#include "eja/random.hpp"

namespace eja {

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;  // nonincreasing
  JordanFrame frame;            // frame[i] carries eigenvalues[i]
  /// Set when a spin block had xbar == 0 and its frame was fixed by convention.
  bool spin_degenerate = false;
};

struct PeirceDecomposition {
  JordanFrame frame;
  Eigen::VectorXd diagonal;                   // x_i = <x, e_i>
  std::map<std::pair<int, int>, Element> off_blocks;  // (i, j), i < j

  const Element& block(int i, int j) const { return off_blocks.at({i, j}); }
  Element reconstruct() const;
};

/// Spectral decomposition x = sum_i lambda_i f_i with lambda nonincreasing.
/// SymN/HermN use the cyclic Jacobi solver; RN sorts; SpinN uses the closed
/// form x0 +- |xbar|. A spin block with xbar == 0 gets the frame
/// (1/2)(1, +-u1) and sets spin_degenerate.
SpectralDecomposition spectral(const Element& x);
Eigen::VectorXd eigenvalues(const Element& x);
double min_eigenvalue(const Element& x);
/// max_i |lambda_i(x)|
double inf_norm(const Element& x);

bool in_cone(const Element& x, double tol);
/// (x+, x-) with x = x+ - x-, both in the cone, <x+, x-> = 0.
std::pair<Element, Element> pos_neg_parts(const Element& x);

/// L_a(x) = a o x. Symmetric in the trace-orthonormal basis.
LinearMap l_op(const Element& a);
/// P_a = 2 L_a^2 - L_{a^2}. Marked as asserted-positive (P_a maps the cone
/// into itself).
LinearMap quad_rep(const Element& a);
/// ||L_a L_b - L_b L_a||_F <= tol
bool operator_commute(const Element& a, const Element& b, double tol);
double commutator_norm(const Element& a, const Element& b);

/// Residuals of the frame axioms; all zero for an exact frame.
struct FrameResiduals {
  double idempotency = 0.0;    // max ||c o c - c||
  double trace = 0.0;          // max |tr(c) - 1|
  double orthogonality = 0.0;  // max ||e_i o e_j||, i != j
  double unit = 0.0;           // ||sum e_i - e||
  double max() const;
};
FrameResiduals frame_residuals(const JordanFrame& frame);
/// Throws INVALID_FRAME unless the frame has rank() members and every residual is <= tol.
void validate_frame(const JordanFrame& frame, double tol = 1e-9);

/// Orthogonal projection onto V_ii (i == j) or V_ij (i < j).
Eigen::MatrixXd peirce_projection(const JordanFrame& frame, int i, int j);
/// Peirce decomposition via the projections P_{e_i} and 4 L_{e_i} L_{e_j}.
PeirceDecomposition peirce(const Element& x, const JordanFrame& frame);
/// || sum of Peirce projections - I ||_F
double peirce_identity_residual(const JordanFrame& frame);

/// x Delta y: diag x_i y_i, off-diagonal (1/2) <x_ij, y_ij>.
Eigen::MatrixXd delta_matrix(const Element& x, const Element& y, const JordanFrame& frame);

/// For x in the cone with x_i ~ 0, checks that every Peirce block touching
/// index i vanishes: ||x_il|| <= sqrt(tol) * (1 + ||x||).
bool check_zero_diagonal(const Element& x, const JordanFrame& frame, int i, double tol);

/// Smallest gap between consecutive sorted values.
double min_gap(const Eigen::VectorXd& values);
/// Distinctness gate: min gap > 1e-8 * (1 + spread).
double default_gap_threshold(const Eigen::VectorXd& values);
bool has_distinct_values(const Eigen::VectorXd& values);

// Random sampling used by tests, probes and the CLI.
Element random_element(const Algebra& algebra, Rng& rng);
/// z o z with z ~ N(0, I) in coordinates.
Element random_cone_element(const Algebra& algebra, Rng& rng);
JordanFrame random_frame(const Algebra& algebra, Rng& rng);

}  // namespace eja
