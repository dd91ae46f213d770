#ifndef PERMBOUND_PERMSCHUR_HPP
#define PERMBOUND_PERMSCHUR_HPP

#include <cstddef>

#include "permbound/matrix.hpp"
#include "permbound/permanent.hpp"
#include "permbound/perminv.hpp"

namespace permbound {

/// A = [[B, Y], [Xᵀ, W]] with B of size d x d and W of size k x k.
/// X is stored d x k so that its columns are the x_i vectors.
///
/// d = 0 is allowed (B empty, per(B) = 1); the row-uncrossing base case
/// uses it.
template <Scalar T>
class BlockSplit {
 public:
  BlockSplit(Matrix<T> source, std::size_t d) : source_(std::move(source)), d_(d) {
    require_square(source_, "BlockSplit");
    if (d_ >= source_.n()) fail(ErrorCode::DimensionMismatch, "BlockSplit needs d < n");
  }

  static BlockSplit from_blocks(const Matrix<T>& b, const Matrix<T>& x, const Matrix<T>& y, const Matrix<T>& w) {
    if (!b.is_square() || !w.is_square() || x.rows() != b.n() || y.rows() != b.n() || x.cols() != w.n() ||
        y.cols() != w.n())
      fail(ErrorCode::DimensionMismatch, "blocks do not tile a square matrix");
    return BlockSplit(block(b, y, transpose(x), w), b.n());
  }

  std::size_t d() const noexcept { return d_; }
  std::size_t k() const noexcept { return source_.n() - d_; }
  const Matrix<T>& source() const noexcept { return source_; }

  Matrix<T> b() const { return select(source_, top(), top()); }
  Matrix<T> y() const { return select(source_, top(), bottom()); }
  /// d x k; the bottom-left block is its transpose.
  Matrix<T> x() const { return transpose(select(source_, bottom(), top())); }
  Matrix<T> w() const { return select(source_, bottom(), bottom()); }

  IndexSet top() const { return IndexSet::range(1, d_); }
  IndexSet bottom() const { return IndexSet::range(d_ + 1, source_.n()); }

 private:
  Matrix<T> source_;
  std::size_t d_;
};

/// [[B, y], [xᵀ, w]].
template <Scalar T>
Matrix<T> bordered(const Matrix<T>& b, const Vector<T>& x, const Vector<T>& y, const T& w) {
  if (x.size() != b.n() || y.size() != b.n()) fail(ErrorCode::DimensionMismatch, "border vectors must have length d");
  return block(b, column(y), transpose(column(x)), Matrix<T>(1, 1, w));
}

template <Scalar T>
struct PermanentSides {
  T lhs;
  T rhs;
};

/// per([[B, y], [xᵀ, w]]) against per(B) (w + xᵀ B* y); equal in exact arithmetic.
template <Scalar T>
PermanentSides<T> rank1_update_permanent(const Matrix<T>& b, const Vector<T>& x, const Vector<T>& y, const T& w) {
  require_nonnegative(x, "rank1_update_permanent");
  require_nonnegative(y, "rank1_update_permanent");
  if (sgn_of(w) < 0) fail(ErrorCode::NegativeInput, "rank1_update_permanent needs w >= 0");
  const Matrix<T> full = bordered(b, x, y, w);
  const PermanentalInverse<T> inv = permanental_inverse(b);
  const Matrix<T> xbstar_y = transpose(column(x)) * inv.entries * column(y);
  T rhs = inv.source_perm * (w + xbstar_y(0, 0));
  return {permanent(full), std::move(rhs)};
}

template <Scalar T>
struct SchurBound {
  T exact;
  T bound;
};

/// per(A) against per(B) per(W + Xᵀ B* Y).
template <Scalar T>
SchurBound<T> schur_permanent_bound(const BlockSplit<T>& split) {
  require_nonnegative(split.source(), "schur_permanent_bound");
  const PermanentalInverse<T> inv = permanental_inverse(split.b());
  const Matrix<T> schur = split.w() + transpose(split.x()) * inv.entries * split.y();
  T bound = inv.source_perm * permanent(schur);
  return {permanent(split.source()), std::move(bound)};
}

/// Both sides of the row-uncrossing inequality
///   per(M) per(B) <= sum_j per(M(-{d+i*}, -{d+j})) per(M([d]+{d+i*}, [d]+{d+j})),
/// where the first factor is [[B, Y_{.,-j}], [Xᵀ_{-i*,.}, W_{i*,j}]] and the
/// second is [[B, y_j], [x_{i*}ᵀ, w_{i*,j}]]. i_star is 1-based within W.
template <Scalar T>
PermanentSides<T> row_uncrossing_sides(const BlockSplit<T>& split, std::size_t i_star) {
  const std::size_t d = split.d();
  const std::size_t k = split.k();
  if (i_star < 1 || i_star > k) fail(ErrorCode::DimensionMismatch, "i_star must lie in [1, k]");
  require_nonnegative(split.source(), "row_uncrossing_sides");
  const Matrix<T>& m = split.source();
  const IndexSet top = split.top();
  T lhs = permanent(m) * permanent(split.b());
  T rhs(0);
  for (std::size_t j = 1; j <= k; ++j) {
    const T crossed = permanent(drop(m, IndexSet{d + i_star}, IndexSet{d + j}));
    const T bordered_perm = permanent(select(m, top.with(d + i_star), top.with(d + j)));
    rhs += crossed * bordered_perm;
  }
  return {std::move(lhs), std::move(rhs)};
}

/// Two-row case:
///   per([[B,y1,y2],[x1ᵀ,w11,w12],[x2ᵀ,w21,w22]]) per(B)
///     <= per[[B,y1],[x1ᵀ,w11]] per[[B,y2],[x2ᵀ,w22]] + per[[B,y2],[x1ᵀ,w12]] per[[B,y1],[x2ᵀ,w21]].
template <Scalar T>
PermanentSides<T> two_row_inequality_sides(const Matrix<T>& b, const Vector<T>& x1, const Vector<T>& x2,
                                           const Vector<T>& y1, const Vector<T>& y2, const Matrix<T>& w) {
  require_square(b, "two_row_inequality_sides");
  if (w.rows() != 2 || w.cols() != 2) fail(ErrorCode::DimensionMismatch, "w must be 2x2");
  for (const auto* v : {&x1, &x2, &y1, &y2}) {
    if (v->size() != b.n()) fail(ErrorCode::DimensionMismatch, "vectors must have length d");
    require_nonnegative(*v, "two_row_inequality_sides");
  }
  require_nonnegative(b, "two_row_inequality_sides");
  require_nonnegative(w, "two_row_inequality_sides");

  const std::size_t d = b.n();
  Matrix<T> x(d, 2), y(d, 2);
  for (std::size_t i = 0; i < d; ++i) {
    x(i, 0) = x1[i];
    x(i, 1) = x2[i];
    y(i, 0) = y1[i];
    y(i, 1) = y2[i];
  }
  const Matrix<T> full = block(b, y, transpose(x), w);
  auto p = [&](const Vector<T>& xi, const Vector<T>& yj, const T& wij) { return permanent(bordered(b, xi, yj, wij)); };

  T lhs = permanent(full) * permanent(b);
  T rhs = p(x1, y1, w(0, 0)) * p(x2, y2, w(1, 1)) + p(x1, y2, w(0, 1)) * p(x2, y1, w(1, 0));
  return {std::move(lhs), std::move(rhs)};
}

/// C with c_ij = w_ij + x_i y_j / b.
template <Scalar T>
Matrix<T> condense(const T& b, const Vector<T>& x, const Vector<T>& y, const Matrix<T>& w) {
  const std::size_t k = w.rows();
  require_square(w, "condense");
  if (x.size() != k || y.size() != k) fail(ErrorCode::DimensionMismatch, "condense: x, y must have length k");
  if (is_zero(b)) fail(ErrorCode::ZeroPivot, "condense: b = 0");
  if (sgn_of(b) < 0) fail(ErrorCode::NegativeInput, "condense needs b > 0");
  require_nonnegative(x, "condense");
  require_nonnegative(y, "condense");
  require_nonnegative(w, "condense");
  Matrix<T> c = w;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) c(i, j) += x[i] * y[j] / b;
  return c;
}

/// per([[b, yᵀ], [x, W]]) / b against per(condense(b, x, y, W)).
template <Scalar T>
InequalitySides<T> condense_inequality(const T& b, const Vector<T>& x, const Vector<T>& y, const Matrix<T>& w) {
  const Matrix<T> c = condense(b, x, y, w);
  const Matrix<T> full = block(Matrix<T>(1, 1, b), transpose(column(y)), column(x), w);
  T lhs = permanent(full) / b;
  T rhs = permanent(c);
  const bool holds = leq(lhs, rhs);
  return {std::move(lhs), std::move(rhs), holds};
}

}  // namespace permbound

#endif
