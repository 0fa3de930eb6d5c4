#include "eja/algebra.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "eja/error.hpp"

namespace eja {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

Block make_block(Kind kind, int n) {
  switch (kind) {
    case Kind::kRN: return {kind, n, n, n, 0, 0};
    case Kind::kSymN: return {kind, n, n, n * (n + 1) / 2, 0, 0};
    case Kind::kHermN: return {kind, n, n, n * n, 0, 0};
    case Kind::kSpinN: return {kind, n, 2, n, 0, 0};
    case Kind::kProduct: break;
  }
  throw Error(ErrorCode::kUnsupportedAlgebra, "not a block kind");
}

void check_size(Kind kind, int n) {
  const int min = kind == Kind::kSpinN ? 2 : 1;
  if (n < min) {
    throw Error(ErrorCode::kUnsupportedAlgebra,
                std::string(to_string(kind)) + " needs size >= " + std::to_string(min));
  }
}

void block_product(const Block& b, std::span<const double> x, std::span<const double> y,
                   std::span<double> out) {
  switch (b.kind) {
    case Kind::kRN:
      for (int i = 0; i < b.dim; ++i) out[i] = x[i] * y[i];
      return;
    case Kind::kSymN: {
      const Eigen::MatrixXd xm = sym_matrix_from(x, b.n);
      const Eigen::MatrixXd ym = sym_matrix_from(y, b.n);
      sym_coords_from(0.5 * (xm * ym + ym * xm), out);
      return;
    }
    case Kind::kHermN: {
      const Eigen::MatrixXcd xm = herm_matrix_from(x, b.n);
      const Eigen::MatrixXcd ym = herm_matrix_from(y, b.n);
      herm_coords_from(0.5 * (xm * ym + ym * xm), out);
      return;
    }
    case Kind::kSpinN: {
      // Stored coordinates are sqrt(2) times the natural ones.
      double dot = 0.0;
      for (int i = 0; i < b.dim; ++i) dot += x[i] * y[i];
      out[0] = dot / kSqrt2;
      for (int i = 1; i < b.dim; ++i) out[i] = (x[0] * y[i] + y[0] * x[i]) / kSqrt2;
      return;
    }
    case Kind::kProduct: break;
  }
}

}  // namespace

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::kRN: return "RN";
    case Kind::kSymN: return "SymN";
    case Kind::kHermN: return "HermN";
    case Kind::kSpinN: return "SpinN";
    case Kind::kProduct: return "Product";
  }
  return "?";
}

Kind kind_from_string(std::string_view name) {
  if (name == "RN") return Kind::kRN;
  if (name == "SymN") return Kind::kSymN;
  if (name == "HermN") return Kind::kHermN;
  if (name == "SpinN") return Kind::kSpinN;
  if (name == "Product") return Kind::kProduct;
  throw Error(ErrorCode::kParseError, "unknown algebra kind '" + std::string(name) + "'");
}

Algebra::Algebra(std::vector<Block> blocks) {
  auto data = std::make_shared<Data>();
  for (auto& b : blocks) {
    b.offset = data->dim;
    b.rank_offset = data->rank;
    data->dim += b.dim;
    data->rank += b.rank;
  }
  data->blocks = std::move(blocks);
  data_ = std::move(data);
}

Algebra Algebra::real_n(int n) {
  check_size(Kind::kRN, n);
  return Algebra({make_block(Kind::kRN, n)});
}

Algebra Algebra::sym(int n) {
  check_size(Kind::kSymN, n);
  return Algebra({make_block(Kind::kSymN, n)});
}

Algebra Algebra::herm(int n) {
  check_size(Kind::kHermN, n);
  return Algebra({make_block(Kind::kHermN, n)});
}

Algebra Algebra::spin(int dim) {
  check_size(Kind::kSpinN, dim);
  return Algebra({make_block(Kind::kSpinN, dim)});
}

Algebra Algebra::product(std::span<const Algebra> factors) {
  std::vector<Block> blocks;
  for (const auto& f : factors)
    for (const auto& b : f.blocks()) blocks.push_back(make_block(b.kind, b.n));
  if (blocks.empty()) throw Error(ErrorCode::kUnsupportedAlgebra, "empty product");
  return Algebra(std::move(blocks));
}

Kind Algebra::kind() const {
  return data_->blocks.size() == 1 ? data_->blocks.front().kind : Kind::kProduct;
}

int Algebra::size() const {
  return data_->blocks.size() == 1 ? data_->blocks.front().n : data_->rank;
}

bool Algebra::is_simple() const {
  if (data_->blocks.size() != 1) return false;
  const Block& b = data_->blocks.front();
  return b.kind != Kind::kRN || b.n == 1;
}

bool Algebra::is_frame_transitive() const { return data_->blocks.size() == 1; }

std::string Algebra::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < data_->blocks.size(); ++i) {
    if (i) os << " x ";
    os << to_string(data_->blocks[i].kind) << "(" << data_->blocks[i].n << ")";
  }
  return os.str();
}

bool operator==(const Algebra& a, const Algebra& b) {
  return a.data_ == b.data_ || a.data_->blocks == b.data_->blocks;
}

void require_same_algebra(const Algebra& a, const Algebra& b) {
  if (!(a == b)) {
    throw Error(ErrorCode::kAlgebraMismatch, a.describe() + " vs " + b.describe());
  }
}

Element::Element(Algebra algebra, Eigen::VectorXd coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (coords_.size() != algebra_.dim()) {
    throw Error(ErrorCode::kSizeMismatch, "expected " + std::to_string(algebra_.dim()) +
                                              " coordinates, got " +
                                              std::to_string(coords_.size()));
  }
}

Element Element::zero(const Algebra& algebra) {
  return Element(algebra, Eigen::VectorXd::Zero(algebra.dim()));
}

Element& Element::operator+=(const Element& other) {
  require_same_algebra(algebra_, other.algebra_);
  coords_ += other.coords_;
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same_algebra(algebra_, other.algebra_);
  coords_ -= other.coords_;
  return *this;
}

Element& Element::operator*=(double s) {
  coords_ *= s;
  return *this;
}

Element unit(const Algebra& algebra) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(algebra.dim());
  for (const Block& b : algebra.blocks()) {
    switch (b.kind) {
      case Kind::kRN: c.segment(b.offset, b.dim).setOnes(); break;
      case Kind::kSymN:
      case Kind::kHermN: c.segment(b.offset, b.n).setOnes(); break;
      case Kind::kSpinN: c(b.offset) = kSqrt2; break;
      case Kind::kProduct: break;
    }
  }
  return Element(algebra, std::move(c));
}

Element jordan_product(const Element& x, const Element& y) {
  require_same_algebra(x.algebra(), y.algebra());
  Eigen::VectorXd out(x.algebra().dim());
  for (const Block& b : x.algebra().blocks()) {
    block_product(b, std::span<const double>(x.coords().data() + b.offset, b.dim),
                  std::span<const double>(y.coords().data() + b.offset, b.dim),
                  std::span<double>(out.data() + b.offset, b.dim));
  }
  return Element(x.algebra(), std::move(out));
}

Element square(const Element& x) { return jordan_product(x, x); }

double inner(const Element& x, const Element& y) {
  require_same_algebra(x.algebra(), y.algebra());
  return x.coords().dot(y.coords());
}

double norm(const Element& x) { return x.coords().norm(); }

double trace(const Element& x) { return inner(x, unit(x.algebra())); }

Eigen::MatrixXd sym_matrix_from(std::span<const double> coords, int n) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = coords[i];
  int k = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) {
      m(i, j) = m(j, i) = coords[k] / kSqrt2;
    }
  }
  return m;
}

void sym_coords_from(const Eigen::MatrixXd& m, std::span<double> out) {
  const int n = static_cast<int>(m.rows());
  for (int i = 0; i < n; ++i) out[i] = m(i, i);
  int k = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) out[k] = 0.5 * (m(i, j) + m(j, i)) * kSqrt2;
  }
}

Eigen::MatrixXcd herm_matrix_from(std::span<const double> coords, int n) {
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = coords[i];
  int k = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, k += 2) {
      const std::complex<double> z(coords[k] / kSqrt2, coords[k + 1] / kSqrt2);
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

void herm_coords_from(const Eigen::MatrixXcd& m, std::span<double> out) {
  const int n = static_cast<int>(m.rows());
  for (int i = 0; i < n; ++i) out[i] = m(i, i).real();
  int k = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, k += 2) {
      const std::complex<double> z = 0.5 * (m(i, j) + std::conj(m(j, i)));
      out[k] = z.real() * kSqrt2;
      out[k + 1] = z.imag() * kSqrt2;
    }
  }
}

namespace {

const Block& single_block(const Element& x, Kind expected) {
  if (x.algebra().kind() != expected) {
    throw Error(ErrorCode::kUnsupportedAlgebra, "expected " + std::string(to_string(expected)) +
                                                    ", got " + x.algebra().describe());
  }
  return x.algebra().blocks().front();
}

}  // namespace

Eigen::MatrixXd to_sym_matrix(const Element& x) {
  const Block& b = single_block(x, Kind::kSymN);
  return sym_matrix_from(std::span<const double>(x.coords().data(), b.dim), b.n);
}

Element from_sym_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kSizeMismatch, "matrix not square");
  const Algebra alg = Algebra::sym(static_cast<int>(m.rows()));
  Eigen::VectorXd c(alg.dim());
  sym_coords_from(m, std::span<double>(c.data(), alg.dim()));
  return Element(alg, std::move(c));
}

Eigen::MatrixXcd to_herm_matrix(const Element& x) {
  const Block& b = single_block(x, Kind::kHermN);
  return herm_matrix_from(std::span<const double>(x.coords().data(), b.dim), b.n);
}

Element from_herm_matrix(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kSizeMismatch, "matrix not square");
  const Algebra alg = Algebra::herm(static_cast<int>(m.rows()));
  Eigen::VectorXd c(alg.dim());
  herm_coords_from(m, std::span<double>(c.data(), alg.dim()));
  return Element(alg, std::move(c));
}

Eigen::VectorXd spin_natural(const Element& x) {
  single_block(x, Kind::kSpinN);
  return x.coords() / kSqrt2;
}

Element from_spin_natural(const Eigen::VectorXd& natural) {
  return Element(Algebra::spin(static_cast<int>(natural.size())), natural * kSqrt2);
}

Element block_part(const Element& x, int block) {
  const Block& b = x.algebra().blocks()[static_cast<std::size_t>(block)];
  const Algebra alg = [&] {
    switch (b.kind) {
      case Kind::kRN: return Algebra::real_n(b.n);
      case Kind::kSymN: return Algebra::sym(b.n);
      case Kind::kHermN: return Algebra::herm(b.n);
      default: return Algebra::spin(b.n);
    }
  }();
  return Element(alg, x.coords().segment(b.offset, b.dim));
}

Element embed_block(const Algebra& algebra, int block, const Element& part) {
  const Block& b = algebra.blocks()[static_cast<std::size_t>(block)];
  if (part.algebra().dim() != b.dim || part.algebra().kind() != b.kind) {
    throw Error(ErrorCode::kAlgebraMismatch, "block mismatch");
  }
  Element out = Element::zero(algebra);
  out.coords().segment(b.offset, b.dim) = part.coords();
  return out;
}

JordanFrame canonical_frame(const Algebra& algebra) {
  JordanFrame f{algebra, {}};
  for (const Block& b : algebra.blocks()) {
    for (int i = 0; i < b.rank; ++i) {
      Element c = Element::zero(algebra);
      switch (b.kind) {
        case Kind::kRN:
        case Kind::kSymN:
        case Kind::kHermN: c.coords()(b.offset + i) = 1.0; break;
        case Kind::kSpinN:
          c.coords()(b.offset) = 0.5 * kSqrt2;
          c.coords()(b.offset + 1) = (i == 0 ? 0.5 : -0.5) * kSqrt2;
          break;
        case Kind::kProduct: break;
      }
      f.idempotents.push_back(std::move(c));
    }
  }
  return f;
}

Element compose(std::span<const double> values, const JordanFrame& frame) {
  if (static_cast<int>(values.size()) != frame.size()) {
    throw Error(ErrorCode::kLengthMismatch, "values/frame size mismatch");
  }
  Element out = Element::zero(frame.algebra);
  for (int i = 0; i < frame.size(); ++i) out.coords() += values[static_cast<std::size_t>(i)] * frame[i].coords();
  return out;
}

}  // namespace eja
