#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <vector>

#include "eja/algebra.hpp"

namespace eja {

enum class ProvenanceKind {
  kSchurProduct,
  kDiag,
  kCompletelyPositive,
  kAutomorphism,
  kConvexCombo,
  kCompose,
  kRaw,
};

std::string_view to_string(ProvenanceKind kind);
ProvenanceKind provenance_from_string(std::string_view name);

enum class AutomorphismForm {
  kIdentity,
  kConjugation,     // X -> U X U* (SymN: U real orthogonal, HermN: unitary)
  kPermutation,     // RN: x -> (x_{perm^-1(i)}), i.e. e_j -> e_{perm[j]}
  kSpinOrthogonal,  // SpinN: (x0, xbar) -> (x0, R xbar)
};

struct Provenance;

/// A linear transformation of the algebra as a d x d matrix over the
/// trace-orthonormal basis, together with how it was built.
///
/// The adjoint with respect to the trace inner product is the transpose.
/// Any provenance other than kRaw certifies positivity by construction.
class LinearMap {
 public:
  LinearMap(Algebra algebra, Eigen::MatrixXd matrix, std::shared_ptr<const Provenance> provenance);

  /// Unstructured map. `asserted_positive` records a caller's positivity claim.
  static LinearMap raw(Algebra algebra, Eigen::MatrixXd matrix, bool asserted_positive = false);
  /// Tabulates f on the coordinate basis.
  static Eigen::MatrixXd tabulate(const Algebra& algebra,
                                  const std::function<Element(const Element&)>& f);

  const Algebra& algebra() const { return algebra_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Provenance& provenance() const { return *provenance_; }
  std::shared_ptr<const Provenance> provenance_ptr() const { return provenance_; }
  ProvenanceKind provenance_kind() const;

  bool positive_by_construction() const;
  bool positivity_asserted() const;
  /// Positive by construction or by an explicit assertion.
  bool trusted_positive() const { return positive_by_construction() || positivity_asserted(); }

  Element operator()(const Element& x) const;

 private:
  Algebra algebra_;
  Eigen::MatrixXd matrix_;
  std::shared_ptr<const Provenance> provenance_;
};

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::kRaw;
  bool asserted_positive = false;
  // kSchurProduct
  Eigen::MatrixXd correlation;
  std::vector<Element> frame;
  // kCompletelyPositive
  std::vector<Eigen::MatrixXcd> kraus;
  // kAutomorphism
  AutomorphismForm form = AutomorphismForm::kIdentity;
  Eigen::MatrixXcd unitary;
  std::vector<int> permutation;
  Eigen::MatrixXd orthogonal;
  // kConvexCombo / kCompose (compose applies parts right to left)
  std::vector<double> weights;
  std::vector<LinearMap> parts;
};

Element apply(const LinearMap& t, const Element& x);

/// Identity map, recorded as the identity automorphism.
LinearMap identity_map(const Algebra& algebra);

/// Adjoint under the trace inner product. Provenance follows the adjoint:
/// Kraus operators are conjugated, automorphisms inverted, compositions reversed.
LinearMap adjoint(const LinearMap& t);

/// Nonnegative combination sum_k w_k T_k. Provenance kConvexCombo; weights
/// need not sum to one (positivity only needs w_k >= 0).
LinearMap combination(std::span<const double> weights, std::span<const LinearMap> maps);
/// maps[0] o maps[1] o ... (rightmost applied first).
LinearMap compose_maps(std::span<const LinearMap> maps);

}  // namespace eja
