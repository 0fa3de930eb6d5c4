#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "eja/algebra.hpp"
#include "eja/linear_map.hpp"
#include "eja/random.hpp"

namespace eja {

/// X -> Diag(X) on SymN/HermN; the identity on RN.
LinearMap diag_map(const Algebra& algebra);

/// x -> A . x: scales the Peirce block V_ij (relative to `frame`) by a_ij.
/// A must be a real correlation matrix (symmetric, unit diagonal, PSD within tol).
LinearMap schur_map(const Eigen::MatrixXd& a, const JordanFrame& frame, double tol = 1e-10);

/// X -> sum_k A_k X A_k^* on HermN.
LinearMap cp_map(const std::vector<Eigen::MatrixXcd>& kraus, const Algebra& algebra);

struct CpCanonicalForm {
  Eigen::MatrixXcd u;  // unitary, column i spans the range of frame[i]
  Eigen::MatrixXcd c;  // PSD with unit diagonal
  /// max deviation of U (C . U^* X U) U^* from T over the coordinate basis
  double reconstruction_residual = 0.0;
};

/// Writes a frame-fixing CP map as X -> U (C . U^* X U) U^*.
/// Throws FRAME_NOT_FIXED unless T and T^* fix every frame member within tol.
CpCanonicalForm cp_canonical_form(const LinearMap& t, const JordanFrame& frame, double tol);

/// Automorphism X -> U X U^* (real orthogonal U on SymN, unitary on HermN).
LinearMap conjugation(const Algebra& algebra, const Eigen::MatrixXcd& u);
/// RN automorphism sending e_j to e_{perm[j]}.
LinearMap permutation_automorphism(const Algebra& algebra, const std::vector<int>& perm);
/// SpinN automorphism (x0, xbar) -> (x0, R xbar).
LinearMap spin_orthogonal(const Algebra& algebra, const Eigen::MatrixXd& r);

/// Automorphism phi with phi(src[i]) = dst[i]. Simple algebras (and RN) only.
LinearMap frame_automorphism(const JordanFrame& src, const JordanFrame& dst);

/// Inverse of an automorphism-provenance map.
LinearMap inverse_automorphism(const LinearMap& phi);

/// max ||phi(x o y) - phi(x) o phi(y)|| / (1 + ||x|| ||y||) over random pairs.
double multiplicativity_residual(const LinearMap& phi, int pairs, std::uint64_t seed);

enum class Positivity { kByConstruction, kFalsified, kUnknown };
std::string_view to_string(Positivity p);

struct Classification {
  bool unital = false;
  bool subunital = false;
  bool trace_preserving = false;
  bool doubly_stochastic = false;
  Positivity positivity = Positivity::kUnknown;
  bool asserted_positive = false;
  int positivity_trials = 0;  // random squares tried (0 when by construction)
  double unit_residual = 0.0;   // ||T(e) - e||
  double trace_residual = 0.0;  // ||T^*(e) - e||
  double worst_image_eigenvalue = 0.0;  // smallest normalized min eigenvalue seen
};

/// Doubly stochastic means positive (by construction or asserted and not
/// falsified), unital and trace preserving.
Classification classify(const LinearMap& t, double tol, int trials = 200, std::uint64_t seed = 0);

struct MajorizationProbe {
  int trials = 0;
  int failures = 0;
  /// Smallest min(partial-sum slack, -|total gap|) / (1 + ||x||) seen.
  double worst_slack = 0.0;
  Eigen::VectorXd worst_x;  // coordinates of the worst sample
  bool passed(double tol) const { return worst_slack >= -tol; }
};

/// Checks T(x) majorized by x on random x.
MajorizationProbe ds_majorization_probe(const LinearMap& t, int trials, double tol,
                                        std::uint64_t seed);

// Random sampling of structured matrices and maps.
Eigen::MatrixXd random_correlation(int n, Rng& rng);
Eigen::MatrixXd random_orthogonal(int n, Rng& rng);
Eigen::MatrixXcd random_unitary(int n, Rng& rng);
std::vector<int> random_permutation(int n, Rng& rng);
/// Random automorphism of a single-block algebra.
LinearMap random_automorphism(const Algebra& algebra, Rng& rng);
/// Random Kraus family normalized so that sum A_k A_k^* = I.
std::vector<Eigen::MatrixXcd> random_unital_kraus(int n, int count, Rng& rng);

}  // namespace eja
