#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eja/algebra.hpp"
#include "eja/linear_map.hpp"
#include "eja/positive_maps.hpp"

namespace eja {

enum class Conclusion {
  kIdentity,
  kPermutation,
  kFrameIdentity,
  kAutomorphismCoincidence,
  kFailed,
};
std::string_view to_string(Conclusion c);

struct Check {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool ok = false;
};

/// Outcome of one theorem verification.
///
/// A conclusion other than kFailed always comes with residual <= tol. When
/// the hypotheses hold but the conclusion residual lands between tol and the
/// stability bound, the report is kFailed with no violation.
struct KorovkinReport {
  bool hypotheses_ok = false;
  std::vector<Check> hypotheses;
  Conclusion conclusion = Conclusion::kFailed;
  double residual = 0.0;
  /// Largest conclusion residual the hypotheses allow (C * tol).
  double bound = 0.0;
  std::vector<Check> checks;  // conclusion-side evidence
  std::string note;

  std::optional<std::vector<int>> permutation;
  std::optional<JordanFrame> frame;
  std::optional<LinearMap> automorphism;
  std::optional<Eigen::MatrixXd> frame_matrix;  // a_ij = <T(e_j), e_i>
  std::optional<Classification> ds_certificate;
  std::optional<MajorizationProbe> probe;

  /// Statements (a)-(d) of the four-way equivalence, when evaluated.
  std::vector<Check> statements;
  bool statements_agree = true;

  double hypothesis_residual() const;  // max over hypotheses
  const Check* find_check(std::string_view name) const;
};

// Stability constants: conclusion residual <= constant * tol whenever all
// hypothesis residuals are <= tol.

/// 8 (1 + n) (1 + P)^2 / gap^2 + 2n + 1 with P = max |p_i|.
double matrix_korovkin_constant(const Eigen::VectorXd& p);
/// 4 n^2 (1 + P)^2 / (gap * min(gap, min p)) + 2n + 1.
double wm_korovkin_constant(const Eigen::VectorXd& p);
/// Frame-fixing deviation allowed by a Kronecker-delta residual eps in rank n:
/// 2 sqrt(n eps) + 2 n eps.
double lemma_bound(int n, double eps);

/// Nonnegative A with Ah = h for h in {e, p, p^2} must be the identity.
KorovkinReport verify_matrix_korovkin(const Eigen::MatrixXd& a, const Eigen::VectorXd& p,
                                      double tol);

/// Nonnegative A with Ae w< e, p w< Ap, Ap^2 w< p^2 (p positive, distinct)
/// must be a permutation; the identity when p and Ap are decreasing.
KorovkinReport verify_wm_korovkin(const Eigen::MatrixXd& a, const Eigen::VectorXd& p, double tol);

/// (Ah)^down = h^down for h in {e, p, p^2}, then the weak-majorization verifier.
KorovkinReport corollary_downarrow(const Eigen::MatrixXd& a, const Eigen::VectorXd& p,
                                   double tol);

/// a_ij = <T(e_j), e_i> over the frame.
Eigen::MatrixXd frame_matrix(const LinearMap& t, const JordanFrame& frame);

/// <T(e_j), e_i> = delta_ij implies T = T^* = I on the frame and T doubly stochastic.
KorovkinReport lemma_frame_fixing(const LinearMap& t, const JordanFrame& frame, double tol);

/// Four-way equivalence for positive T and p with distinct eigenvalues.
/// `probe_trials` random elements are checked for T(x) majorized by x.
KorovkinReport verify_eja_korovkin(const LinearMap& t, const Element& p, double tol,
                                   int probe_trials = 200, std::uint64_t seed = 0);

/// T = phi on the frame implies T doubly stochastic.
KorovkinReport verify_automorphism_coincidence(const LinearMap& t, const LinearMap& phi,
                                               const JordanFrame& frame, double tol);

struct InfNormReport {
  int trials = 0;
  int violations = 0;
  /// max of ||S(x)||_inf - 2 ||x||_inf ||S(e)||_inf
  double worst_margin = 0.0;
  double unit_image_norm = 0.0;  // ||S(e)||_inf
  /// max ||S(x)||_inf / (||x||_inf ||S(e)||_inf) over the samples
  double empirical_ratio = 0.0;
  /// ||S|| / ||S(e)|| in the trace norm; ||S|| by power iteration.
  double operator_ratio = 0.0;
};

/// ||S(x)||_inf <= 2 ||x||_inf ||S(e)||_inf + tol for positive S.
InfNormReport inf_norm_bound(const LinearMap& s, int trials, double tol, std::uint64_t seed);

/// Largest singular value of the coordinate matrix (power iteration on M^T M).
double operator_norm(const Eigen::MatrixXd& m);

struct SequenceStep {
  int k = 0;
  double tol = 0.0;
  double hypothesis_residual = 0.0;  // max_h ||T_k(h) - h|| / (1 + ||h||)
  double frame_residual = 0.0;       // max_i ||T_k(e_i) - e_i||
  double adjoint_residual = 0.0;     // max_i ||T_k^*(e_i) - e_i||
  double norm = 0.0;                 // ||T_k||
  double unit_image_norm = 0.0;      // ||T_k(e)||_inf
  bool hypotheses_ok = false;
};

struct SequenceReport {
  std::vector<SequenceStep> steps;
  JordanFrame frame;
  bool hypotheses_converge = false;  // last step meets its tolerance
  bool frame_converges = false;      // last frame and adjoint residuals meet it
  bool bounded = false;              // sup ||T_k|| <= C sup ||T_k(e)||_inf
  double bound_constant = 0.0;       // C = 2 sqrt(n)
  double sup_norm = 0.0;
  double sup_unit_image = 0.0;
  double fitted_c = 0.0;             // max_k k * frame_residual
  bool monotone = false;             // frame residuals nonincreasing in k
  double max_adjoint_gap = 0.0;      // max |frame_residual - adjoint_residual|
  Conclusion conclusion = Conclusion::kFailed;
};

/// Checks frame convergence along T_k given convergence on {e, p, p^2}.
/// Throws DIVERGENCE when the hypotheses hold with margin at some k but the
/// frame residual exceeds what the equality theorem allows there.
SequenceReport verify_sequential(const std::function<LinearMap(int)>& sequence, const Element& p,
                                 const std::vector<int>& ks,
                                 const std::function<double(int)>& tol_schedule);

/// About `per_decade` log-spaced integers from k_min to k_max inclusive.
std::vector<int> log_grid(int k_min, int k_max, int per_decade);

/// T(e) w< e, p w< T(p), T(p^2) w< p^2 and T(p), T(p^2) operator commuting
/// imply T equals an automorphism on the frame of p.
KorovkinReport verify_wm_eja(const LinearMap& t, const Element& p, double tol,
                             std::uint64_t seed = 0);

}  // namespace eja
