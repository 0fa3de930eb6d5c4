#pragma once

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace eja {

/// Simple building blocks. RN is kept as a single block even though it is
/// the direct sum of n copies of R.
enum class Kind { kRN, kSymN, kHermN, kSpinN, kProduct };

std::string_view to_string(Kind kind);
Kind kind_from_string(std::string_view name);

struct Block {
  Kind kind;
  int n;       // RN/SymN/HermN: matrix size; SpinN: ambient dimension
  int rank;
  int dim;
  int offset;  // first coordinate of this block
  int rank_offset;

  friend bool operator==(const Block& a, const Block& b) {
    return a.kind == b.kind && a.n == b.n;
  }
};

/// Descriptor of a Euclidean Jordan algebra: one of RN, SymN, HermN, SpinN,
/// or a direct product of those. Cheap to copy.
class Algebra {
 public:
  static Algebra real_n(int n);
  static Algebra sym(int n);
  static Algebra herm(int n);
  /// Jordan spin algebra of ambient dimension `dim` (rank 2).
  static Algebra spin(int dim);
  static Algebra product(std::span<const Algebra> factors);

  Kind kind() const;
  int rank() const { return data_->rank; }
  int dim() const { return data_->dim; }
  /// Size parameter of a single-block algebra (n for matrices, dim for spin).
  int size() const;
  std::span<const Block> blocks() const { return data_->blocks; }
  bool is_simple() const;
  /// True when any Jordan frame can be carried to any other by an
  /// automorphism: simple algebras and RN.
  bool is_frame_transitive() const;
  std::string describe() const;

  friend bool operator==(const Algebra& a, const Algebra& b);

 private:
  struct Data {
    std::vector<Block> blocks;
    int rank = 0;
    int dim = 0;
  };
  explicit Algebra(std::vector<Block> blocks);
  std::shared_ptr<const Data> data_;
};

/// A point of the algebra in the trace-orthonormal coordinate basis.
///
/// SymN: diagonal entries, then sqrt(2) * x_ij for i < j (row-major).
/// HermN: diagonal entries, then sqrt(2) * (Re x_ij, Im x_ij) for i < j.
/// SpinN: sqrt(2) * (x0, xbar) where (x0, xbar) are the natural coordinates.
/// With these conventions the coordinate dot product equals tr(x o y).
class Element {
 public:
  Element(Algebra algebra, Eigen::VectorXd coords);

  static Element zero(const Algebra& algebra);

  const Algebra& algebra() const { return algebra_; }
  const Eigen::VectorXd& coords() const { return coords_; }
  Eigen::VectorXd& coords() { return coords_; }

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(double s);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(double s, Element a) { return a *= s; }
  friend Element operator-(Element a) { return a *= -1.0; }

 private:
  Algebra algebra_;
  Eigen::VectorXd coords_;
};

void require_same_algebra(const Algebra& a, const Algebra& b);

Element unit(const Algebra& algebra);
Element jordan_product(const Element& x, const Element& y);
Element square(const Element& x);
/// Trace inner product tr(x o y).
double inner(const Element& x, const Element& y);
/// Norm induced by the trace inner product.
double norm(const Element& x);
double trace(const Element& x);

// Coordinate conversions for the matrix and spin kinds (single-block algebras).
Eigen::MatrixXd to_sym_matrix(const Element& x);
Element from_sym_matrix(const Eigen::MatrixXd& m);
Eigen::MatrixXcd to_herm_matrix(const Element& x);
Element from_herm_matrix(const Eigen::MatrixXcd& m);
/// Natural spin coordinates (x0, xbar); unit is (1, 0, ..., 0).
Eigen::VectorXd spin_natural(const Element& x);
Element from_spin_natural(const Eigen::VectorXd& natural);
/// Block-local views for product algebras.
Element block_part(const Element& x, int block);
Element embed_block(const Algebra& algebra, int block, const Element& part);

/// n mutually orthogonal primitive idempotents summing to the unit.
/// Validity is checked by validate_frame(); construction does not check.
struct JordanFrame {
  Algebra algebra;
  std::vector<Element> idempotents;

  int size() const { return static_cast<int>(idempotents.size()); }
  const Element& operator[](int i) const { return idempotents[static_cast<std::size_t>(i)]; }
};

/// Canonical frame: standard basis of RN, diagonal matrix units of SymN/HermN,
/// (1/2)(1, +-u1) for SpinN; per block for products.
JordanFrame canonical_frame(const Algebra& algebra);
/// sum_i values[i] * frame[i]
Element compose(std::span<const double> values, const JordanFrame& frame);

// Block-kernel helpers shared by the product and the decompositions.
Eigen::MatrixXd sym_matrix_from(std::span<const double> coords, int n);
void sym_coords_from(const Eigen::MatrixXd& m, std::span<double> out);
Eigen::MatrixXcd herm_matrix_from(std::span<const double> coords, int n);
void herm_coords_from(const Eigen::MatrixXcd& m, std::span<double> out);

}  // namespace eja
