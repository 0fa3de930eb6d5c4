#include "eja/linear_map.hpp"

#include <stdexcept>

#include "eja/error.hpp"

namespace eja {

std::string_view to_string(ProvenanceKind kind) {
  switch (kind) {
    case ProvenanceKind::kSchurProduct: return "SCHUR_PRODUCT";
    case ProvenanceKind::kDiag: return "DIAG";
    case ProvenanceKind::kCompletelyPositive: return "COMPLETELY_POSITIVE";
    case ProvenanceKind::kAutomorphism: return "AUTOMORPHISM";
    case ProvenanceKind::kConvexCombo: return "CONVEX_COMBO";
    case ProvenanceKind::kCompose: return "COMPOSE";
    case ProvenanceKind::kRaw: return "RAW";
  }
  return "?";
}

ProvenanceKind provenance_from_string(std::string_view name) {
  for (auto k : {ProvenanceKind::kSchurProduct, ProvenanceKind::kDiag,
                 ProvenanceKind::kCompletelyPositive, ProvenanceKind::kAutomorphism,
                 ProvenanceKind::kConvexCombo, ProvenanceKind::kCompose, ProvenanceKind::kRaw}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::kParseError, "unknown provenance '" + std::string(name) + "'");
}

LinearMap::LinearMap(Algebra algebra, Eigen::MatrixXd matrix,
                     std::shared_ptr<const Provenance> provenance)
    : algebra_(std::move(algebra)), matrix_(std::move(matrix)), provenance_(std::move(provenance)) {
  if (matrix_.rows() != algebra_.dim() || matrix_.cols() != algebra_.dim()) {
    throw Error(ErrorCode::kSizeMismatch, "map matrix must be " + std::to_string(algebra_.dim()) +
                                              "x" + std::to_string(algebra_.dim()));
  }
  if (!provenance_) provenance_ = std::make_shared<Provenance>();
}

LinearMap LinearMap::raw(Algebra algebra, Eigen::MatrixXd matrix, bool asserted_positive) {
  auto p = std::make_shared<Provenance>();
  p->asserted_positive = asserted_positive;
  return LinearMap(std::move(algebra), std::move(matrix), std::move(p));
}

Eigen::MatrixXd LinearMap::tabulate(const Algebra& algebra,
                                    const std::function<Element(const Element&)>& f) {
  const int d = algebra.dim();
  Eigen::MatrixXd m(d, d);
  Element basis = Element::zero(algebra);
  for (int k = 0; k < d; ++k) {
    basis.coords().setZero();
    basis.coords()(k) = 1.0;
    const Element image = f(basis);
    require_same_algebra(algebra, image.algebra());
    m.col(k) = image.coords();
  }
  return m;
}

ProvenanceKind LinearMap::provenance_kind() const { return provenance_->kind; }

bool LinearMap::positive_by_construction() const {
  const Provenance& p = *provenance_;
  switch (p.kind) {
    case ProvenanceKind::kRaw: return false;
    case ProvenanceKind::kConvexCombo:
    case ProvenanceKind::kCompose:
      for (const auto& part : p.parts)
        if (!part.trusted_positive()) return false;
      return true;
    default: return true;
  }
}

bool LinearMap::positivity_asserted() const { return provenance_->asserted_positive; }

Element LinearMap::operator()(const Element& x) const {
  require_same_algebra(algebra_, x.algebra());
  return Element(algebra_, matrix_ * x.coords());
}

Element apply(const LinearMap& t, const Element& x) { return t(x); }

LinearMap identity_map(const Algebra& algebra) {
  auto p = std::make_shared<Provenance>();
  p->kind = ProvenanceKind::kAutomorphism;
  p->form = AutomorphismForm::kIdentity;
  return LinearMap(algebra, Eigen::MatrixXd::Identity(algebra.dim(), algebra.dim()), std::move(p));
}

LinearMap adjoint(const LinearMap& t) {
  const Provenance& src = t.provenance();
  auto p = std::make_shared<Provenance>(src);
  switch (src.kind) {
    case ProvenanceKind::kSchurProduct:
    case ProvenanceKind::kDiag:
    case ProvenanceKind::kRaw:
      break;
    case ProvenanceKind::kCompletelyPositive:
      for (auto& a : p->kraus) a = a.adjoint().eval();
      break;
    case ProvenanceKind::kAutomorphism:
      switch (src.form) {
        case AutomorphismForm::kIdentity: break;
        case AutomorphismForm::kConjugation: p->unitary = src.unitary.adjoint(); break;
        case AutomorphismForm::kPermutation:
          for (std::size_t j = 0; j < src.permutation.size(); ++j)
            p->permutation[static_cast<std::size_t>(src.permutation[j])] = static_cast<int>(j);
          break;
        case AutomorphismForm::kSpinOrthogonal: p->orthogonal = src.orthogonal.transpose(); break;
      }
      break;
    case ProvenanceKind::kConvexCombo:
      for (auto& part : p->parts) part = adjoint(part);
      break;
    case ProvenanceKind::kCompose:
      p->parts.clear();
      for (auto it = src.parts.rbegin(); it != src.parts.rend(); ++it) p->parts.push_back(adjoint(*it));
      break;
  }
  return LinearMap(t.algebra(), t.matrix().transpose(), std::move(p));
}

LinearMap combination(std::span<const double> weights, std::span<const LinearMap> maps) {
  if (weights.size() != maps.size() || maps.empty()) {
    throw Error(ErrorCode::kSizeMismatch, "combination needs matching, nonempty weights and maps");
  }
  const Algebra& alg = maps.front().algebra();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(alg.dim(), alg.dim());
  for (std::size_t k = 0; k < maps.size(); ++k) {
    require_same_algebra(alg, maps[k].algebra());
    if (weights[k] < 0.0) {
      throw std::invalid_argument("combination weights must be nonnegative");
    }
    m += weights[k] * maps[k].matrix();
  }
  auto p = std::make_shared<Provenance>();
  p->kind = ProvenanceKind::kConvexCombo;
  p->weights.assign(weights.begin(), weights.end());
  p->parts.assign(maps.begin(), maps.end());
  return LinearMap(alg, std::move(m), std::move(p));
}

LinearMap compose_maps(std::span<const LinearMap> maps) {
  if (maps.empty()) throw Error(ErrorCode::kSizeMismatch, "compose needs at least one map");
  const Algebra& alg = maps.front().algebra();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(alg.dim(), alg.dim());
  for (const auto& t : maps) {
    require_same_algebra(alg, t.algebra());
    m = (m * t.matrix()).eval();
  }
  auto p = std::make_shared<Provenance>();
  p->kind = ProvenanceKind::kCompose;
  p->parts.assign(maps.begin(), maps.end());
  return LinearMap(alg, std::move(m), std::move(p));
}

}  // namespace eja
