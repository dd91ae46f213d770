#ifndef PERMBOUND_PERMANENT_HPP
#define PERMBOUND_PERMANENT_HPP

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "permbound/matrix.hpp"

namespace permbound {

/// Largest n accepted by the n!-term oracle.
inline constexpr std::size_t kNaiveMaxN = 10;
/// Largest n accepted by Ryser's formula for each backend.
inline constexpr std::size_t kRyserMaxNFloat = 30;
inline constexpr std::size_t kRyserMaxNRational = 24;

namespace detail {

template <Scalar T>
void naive_expand(const Matrix<T>& m, std::size_t row, std::vector<bool>& used, const T& prefix, T& total) {
  const std::size_t n = m.rows();
  if (row == n) {
    total += prefix;
    return;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (used[j] || is_zero(m(row, j))) continue;
    used[j] = true;
    naive_expand(m, row + 1, used, T(prefix * m(row, j)), total);
    used[j] = false;
  }
}

Rational ryser(const RationalMatrix& m);
double ryser(const FloatMatrix& m);

}  // namespace detail

/// Direct sum over all n! permutations. Permutations through a zero entry
/// contribute nothing and are pruned.
template <Scalar T>
T permanent_naive(const Matrix<T>& m) {
  require_square(m, "permanent_naive");
  if (m.n() > kNaiveMaxN)
    fail(ErrorCode::DimensionTooLarge, "permanent_naive supports n <= " + std::to_string(kNaiveMaxN));
  T total(0);
  std::vector<bool> used(m.n(), false);
  detail::naive_expand(m, 0, used, T(1), total);
  return total;
}

/// Ryser's inclusion-exclusion formula with Gray-code subset order,
/// O(2^n n). The rational backend clears row denominators and runs on
/// big integers.
template <Scalar T>
T permanent_ryser(const Matrix<T>& m) {
  require_square(m, "permanent_ryser");
  const std::size_t guard = is_exact_v<T> ? kRyserMaxNRational : kRyserMaxNFloat;
  if (m.n() > guard) fail(ErrorCode::DimensionTooLarge, "permanent_ryser supports n <= " + std::to_string(guard));
  if (m.n() == 0) return T(1);
  return detail::ryser(m);
}

/// The permanent used by every bound computation.
template <Scalar T>
T permanent(const Matrix<T>& m) {
  return permanent_ryser(m);
}

/// Determinant by elimination: fraction-free (Bareiss) for rationals,
/// partial pivoting for doubles.
template <Scalar T>
T determinant(const Matrix<T>& m) {
  require_square(m, "determinant");
  const std::size_t n = m.n();
  if (n == 0) return T(1);
  Matrix<T> a = m;
  int sign = 1;
  if constexpr (is_exact_v<T>) {
    T previous(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (is_zero(a(k, k))) {
        std::size_t p = k + 1;
        while (p < n && is_zero(a(p, k))) ++p;
        if (p == n) return T(0);
        for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) a(i, j) = T((a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous);
      }
      previous = a(k, k);
    }
    return sign < 0 ? T(-a(n - 1, n - 1)) : a(n - 1, n - 1);
  } else {
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::fabs(a(i, k)) > std::fabs(a(p, k))) p = i;
      if (a(p, k) == 0.0) return 0.0;
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        sign = -sign;
      }
      det *= a(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        const double f = a(i, k) / a(k, k);
        for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      }
    }
    return sign * det;
  }
}

}  // namespace permbound

#endif
