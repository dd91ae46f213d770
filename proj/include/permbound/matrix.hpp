#ifndef PERMBOUND_MATRIX_HPP
#define PERMBOUND_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "permbound/error.hpp"
#include "permbound/scalar.hpp"

namespace permbound {

/// Dense row-major matrix. Element access through operator() is 0-based;
/// every index that crosses the public algorithm API (IndexSet members,
/// steps, pivots positions) is 1-based.
///
/// Rectangular shapes are allowed so the same carrier can hold the X and Y
/// blocks of a split; permanents and determinants reject them.
template <Scalar T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<T>> init) : rows_(init.size()) {
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) fail(ErrorCode::DimensionMismatch, "ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix square(std::size_t n) { return Matrix(n, n); }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix ones(std::size_t n) { return Matrix(n, n, T(1)); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  /// Dimension of a square matrix.
  std::size_t n() const noexcept { return rows_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const T> data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using FloatMatrix = Matrix<double>;

template <Scalar T>
using Vector = std::vector<T>;

/// Strictly increasing set of 1-based indices.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::size_t> members) : IndexSet(std::vector<std::size_t>(members)) {}
  explicit IndexSet(std::vector<std::size_t> members);

  /// {first, ..., last}; empty when last < first.
  static IndexSet range(std::size_t first, std::size_t last);
  /// [n] = {1, ..., n}.
  static IndexSet all(std::size_t n) { return range(1, n); }
  /// The subset of [n] encoded by bit i-1 of `mask`.
  static IndexSet from_mask(std::uint64_t mask, std::size_t n);

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(std::size_t i) const;
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  IndexSet with(std::size_t i) const;
  IndexSet without(std::size_t i) const;
  /// [n] minus this set.
  IndexSet complement(std::size_t n) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> members_;
};

std::string to_string(const IndexSet& s);

namespace detail {

inline void check_indices(const IndexSet& s, std::size_t bound, const char* what) {
  if (!s.empty() && (s.members().front() < 1 || s.members().back() > bound)) {
    fail(ErrorCode::IndexOutOfRange, std::string(what) + " index set " + to_string(s) + " outside [1, " +
                                         std::to_string(bound) + "]");
  }
}

}  // namespace detail

/// m(rows, cols). Empty sets give the 0x0 matrix, whose permanent and
/// determinant are 1.
template <Scalar T>
Matrix<T> select(const Matrix<T>& m, const IndexSet& rows, const IndexSet& cols) {
  detail::check_indices(rows, m.rows(), "row");
  detail::check_indices(cols, m.cols(), "column");
  Matrix<T> out(rows.size(), cols.size());
  std::size_t r = 0;
  for (std::size_t i : rows) {
    std::size_t c = 0;
    for (std::size_t j : cols) out(r, c++) = m(i - 1, j - 1);
    ++r;
  }
  return out;
}

/// m(-rows, -cols): the matrix left after deleting the listed rows and columns.
template <Scalar T>
Matrix<T> drop(const Matrix<T>& m, const IndexSet& rows, const IndexSet& cols) {
  detail::check_indices(rows, m.rows(), "row");
  detail::check_indices(cols, m.cols(), "column");
  return select(m, rows.complement(m.rows()), cols.complement(m.cols()));
}

/// The minor matrix with row i and column j removed (1-based).
template <Scalar T>
Matrix<T> minor_matrix(const Matrix<T>& m, std::size_t i, std::size_t j) {
  return drop(m, IndexSet{i}, IndexSet{j});
}

template <Scalar T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

template <Scalar T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

template <Scalar T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  Matrix<T> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

template <Scalar T>
Matrix<T> scaled(const Matrix<T>& a, const T& factor) {
  Matrix<T> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= factor;
  return out;
}

/// x yᵀ.
template <Scalar T>
Matrix<T> outer(const Vector<T>& x, const Vector<T>& y) {
  Matrix<T> out(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out(i, j) = x[i] * y[j];
  return out;
}

/// Column vector view of a span as a k x 1 matrix.
template <Scalar T>
Matrix<T> column(const Vector<T>& v) {
  Matrix<T> out(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) out(i, 0) = v[i];
  return out;
}

/// Simultaneous row/column permutation: out(i, j) = m(p_i, p_j), p 1-based.
template <Scalar T>
Matrix<T> permuted(const Matrix<T>& m, std::span<const std::size_t> order) {
  const std::size_t n = m.rows();
  if (!m.is_square() || order.size() != n) fail(ErrorCode::DimensionMismatch, "ordering length must equal n");
  std::vector<bool> seen(n, false);
  for (std::size_t p : order) {
    if (p < 1 || p > n || seen[p - 1]) fail(ErrorCode::PreconditionViolated, "ordering is not a permutation of [n]");
    seen[p - 1] = true;
  }
  Matrix<T> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m(order[i] - 1, order[j] - 1);
  return out;
}

/// Block matrix [[tl, tr], [bl, br]].
template <Scalar T>
Matrix<T> block(const Matrix<T>& tl, const Matrix<T>& tr, const Matrix<T>& bl, const Matrix<T>& br) {
  if (tl.rows() != tr.rows() || bl.rows() != br.rows() || tl.cols() != bl.cols() || tr.cols() != br.cols())
    fail(ErrorCode::DimensionMismatch, "blocks do not tile");
  Matrix<T> out(tl.rows() + bl.rows(), tl.cols() + tr.cols());
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      const bool top = i < tl.rows();
      const bool left = j < tl.cols();
      const std::size_t r = top ? i : i - tl.rows();
      const std::size_t c = left ? j : j - tl.cols();
      out(i, j) = top ? (left ? tl(r, c) : tr(r, c)) : (left ? bl(r, c) : br(r, c));
    }
  }
  return out;
}

template <Scalar T>
bool is_nonnegative(const Matrix<T>& m) {
  return std::all_of(m.data().begin(), m.data().end(), [](const T& v) { return sgn_of(v) >= 0; });
}

template <Scalar T>
bool is_symmetric(const Matrix<T>& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (!approx_equal(m(i, j), m(j, i))) return false;
  return true;
}

template <Scalar T>
void require_square(const Matrix<T>& m, const char* what) {
  if (!m.is_square())
    fail(ErrorCode::NotSquare, std::string(what) + " needs a square matrix, got " + std::to_string(m.rows()) + "x" +
                                   std::to_string(m.cols()));
}

template <Scalar T>
void require_nonnegative(const Matrix<T>& m, const char* what) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn_of(m(i, j)) < 0)
        fail(ErrorCode::NegativeInput, std::string(what) + " needs a non-negative matrix; entry (" +
                                           std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is " +
                                           to_string(m(i, j)),
             {.row = i + 1, .col = j + 1});
}

template <Scalar T>
void require_nonnegative(const Vector<T>& v, const char* what) {
  for (const T& x : v)
    if (sgn_of(x) < 0) fail(ErrorCode::NegativeInput, std::string(what) + " needs non-negative entries");
}

inline FloatMatrix to_float(const RationalMatrix& m) {
  FloatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

}  // namespace permbound

#endif
