#include "permbound/permanent.hpp"

#include <bit>
#include <cstdint>

namespace permbound::detail {

namespace {

// Gray-code Ryser over any ring with +, -, *. Returns the signed sum
// (-1)^n * sum_S (-1)^|S| prod_i rowsum_i(S).
template <class R>
R ryser_gray(const std::vector<std::vector<R>>& a) {
  const std::size_t n = a.size();
  std::vector<R> rowsum(n, R(0));
  R total(0);
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < limit; ++k) {
    const std::uint64_t next = k ^ (k >> 1);
    const std::uint64_t flipped = next ^ gray;
    const auto col = static_cast<std::size_t>(std::countr_zero(flipped));
    const bool added = (next & flipped) != 0;
    gray = next;
    for (std::size_t i = 0; i < n; ++i) {
      if (added) {
        rowsum[i] += a[i][col];
      } else {
        rowsum[i] -= a[i][col];
      }
    }
    R prod = rowsum[0];
    for (std::size_t i = 1; i < n; ++i) prod *= rowsum[i];
    // Sign (-1)^(n - |S|).
    if (((n - static_cast<std::size_t>(std::popcount(gray))) & 1U) == 0) {
      total += prod;
    } else {
      total -= prod;
    }
  }
  return total;
}

}  // namespace

Rational ryser(const RationalMatrix& m) {
  const std::size_t n = m.n();
  // Scale row i by the lcm of its denominators; per is multilinear in rows.
  std::vector<std::vector<mpz_class>> ints(n, std::vector<mpz_class>(n));
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) ints[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    scale *= l;
  }
  Rational result(ryser_gray(ints), scale);
  result.canonicalize();
  return result;
}

double ryser(const FloatMatrix& m) {
  const std::size_t n = m.n();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
  return ryser_gray(rows);
}

}  // namespace permbound::detail
