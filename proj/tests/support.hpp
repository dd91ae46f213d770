// Independent oracles and random generators shared by the test binaries.
// Nothing here calls into the permanent or elimination code under test.
#ifndef PERMBOUND_TESTS_SUPPORT_HPP
#define PERMBOUND_TESTS_SUPPORT_HPP

#include <cstddef>
#include <random>
#include <vector>

#include "permbound/matrix.hpp"

namespace permbound::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

template <Scalar T>
using Grid = std::vector<std::vector<T>>;

template <Scalar T>
Grid<T> to_grid(const Matrix<T>& m) {
  Grid<T> g(m.rows(), std::vector<T>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
  return g;
}

template <Scalar T>
Grid<T> strike(const Grid<T>& g, std::size_t row, std::size_t col) {
  Grid<T> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i == row) continue;
    std::vector<T> r;
    for (std::size_t j = 0; j < g[i].size(); ++j)
      if (j != col) r.push_back(g[i][j]);
    out.push_back(std::move(r));
  }
  return out;
}

/// Laplace expansion along the first row.
template <Scalar T>
T laplace_permanent(const Grid<T>& g) {
  if (g.empty()) return T(1);
  T sum(0);
  for (std::size_t j = 0; j < g.size(); ++j)
    if (!is_zero(g[0][j])) sum += g[0][j] * laplace_permanent(strike(g, 0, j));
  return sum;
}

/// Cofactor expansion along the first row.
template <Scalar T>
T cofactor_determinant(const Grid<T>& g) {
  if (g.empty()) return T(1);
  T sum(0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (is_zero(g[0][j])) continue;
    const T term = g[0][j] * cofactor_determinant(strike(g, 0, j));
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

template <Scalar T>
T laplace_permanent(const Matrix<T>& m) {
  return laplace_permanent(to_grid(m));
}

template <Scalar T>
T cofactor_determinant(const Matrix<T>& m) {
  return cofactor_determinant(to_grid(m));
}

/// Rows and columns picked by 1-based lists; repeats allowed.
template <Scalar T>
Matrix<T> pick(const Matrix<T>& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Matrix<T> out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i] - 1, cols[j] - 1);
  return out;
}

/// p/q with q in {1, 2, 3} and value in [0, hi].
inline Rational random_fraction(Rng& rng, long hi) {
  const long q = uniform(rng, 1, 3);
  Rational r(uniform(rng, 0, hi * q), q);
  r.canonicalize();
  return r;
}

inline Rational random_signed_fraction(Rng& rng, long hi) {
  const long q = uniform(rng, 1, 3);
  Rational r(uniform(rng, -hi * q, hi * q), q);
  r.canonicalize();
  return r;
}

template <Scalar T>
T random_entry(Rng& rng, long hi) {
  const Rational r = random_fraction(rng, hi);
  if constexpr (is_exact_v<T>) {
    return r;
  } else {
    return r.get_d();
  }
}

/// Non-negative entries in [0, hi]; with positive_diagonal a zero diagonal
/// entry is redrawn, so every process pivot is nonzero.
template <Scalar T>
Matrix<T> random_nonneg(std::size_t n, Rng& rng, long hi = 5, bool positive_diagonal = true) {
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_entry<T>(rng, hi);
  if (positive_diagonal)
    for (std::size_t i = 0; i < n; ++i)
      while (is_zero(m(i, i))) m(i, i) = random_entry<T>(rng, hi);
  return m;
}

template <Scalar T>
std::vector<T> random_vector(std::size_t n, Rng& rng, long hi = 5) {
  std::vector<T> v(n);
  for (auto& e : v) e = random_entry<T>(rng, hi);
  return v;
}

inline RationalMatrix random_signed(std::size_t rows, std::size_t cols, Rng& rng, long hi = 3) {
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_signed_fraction(rng, hi);
  return m;
}

/// Unit diagonal, off-diagonal entries on the grid {0, 1/4, ..., M}.
inline RationalMatrix random_unit_diagonal(std::size_t n, long big_m, Rng& rng) {
  RationalMatrix m = RationalMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) {
        Rational r(uniform(rng, 0, 4 * big_m), 4);
        r.canonicalize();
        m(i, j) = r;
      }
  return m;
}

}  // namespace permbound::testing

#endif
