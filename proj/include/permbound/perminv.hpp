#ifndef PERMBOUND_PERMINV_HPP
#define PERMBOUND_PERMINV_HPP

#include "permbound/matrix.hpp"
#include "permbound/permanent.hpp"

namespace permbound {

/// B* for a non-negative B with per(B) > 0: entry (i, j) is
/// per(B with row j and column i removed) / per(B).
template <Scalar T>
struct PermanentalInverse {
  T source_perm;
  Matrix<T> entries;
};

template <Scalar T>
T require_positive_permanent(const Matrix<T>& b, const char* what) {
  require_square(b, what);
  require_nonnegative(b, what);
  T per = permanent(b);
  if (is_zero(per)) fail(ErrorCode::ZeroPermanent, std::string(what) + ": per(B) = 0");
  return per;
}

template <Scalar T>
PermanentalInverse<T> permanental_inverse(const Matrix<T>& b) {
  T per = require_positive_permanent(b, "permanental_inverse");
  const std::size_t n = b.n();
  Matrix<T> c(n, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) c(i - 1, j - 1) = permanent(minor_matrix(b, j, i)) / per;
  return {std::move(per), std::move(c)};
}

template <Scalar T>
struct IdentityDominance {
  Matrix<T> left;   // B* B
  Matrix<T> right;  // B B*
  bool holds = false;
};

/// True when m has unit diagonal and non-negative off-diagonal entries.
template <Scalar T>
bool dominates_identity(const Matrix<T>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i == j ? !approx_equal(m(i, j), T(1)) : !leq(T(0), m(i, j))) return false;
    }
  }
  return true;
}

template <Scalar T>
IdentityDominance<T> check_identity_dominance(const Matrix<T>& b) {
  const PermanentalInverse<T> inv = permanental_inverse(b);
  IdentityDominance<T> out{inv.entries * b, b * inv.entries, false};
  out.holds = dominates_identity(out.left) && dominates_identity(out.right);
  return out;
}

template <Scalar T>
struct InequalitySides {
  T lhs;
  T rhs;
  bool holds = false;
};

/// per(B(-S,-T)) / per(B) <= per(B*(T,S)).
template <Scalar T>
InequalitySides<T> minor_ratio_inequality(const Matrix<T>& b, const IndexSet& s, const IndexSet& t) {
  if (s.size() != t.size()) fail(ErrorCode::DimensionMismatch, "minor_ratio_inequality needs |S| = |T|");
  const PermanentalInverse<T> inv = permanental_inverse(b);
  T lhs = permanent(drop(b, s, t)) / inv.source_perm;
  T rhs = permanent(select(inv.entries, t, s));
  const bool holds = leq(lhs, rhs);
  return {std::move(lhs), std::move(rhs), holds};
}

}  // namespace permbound

#endif
