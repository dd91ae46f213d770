#ifndef PERMBOUND_BOUNDS_HPP
#define PERMBOUND_BOUNDS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "permbound/matrix.hpp"
#include "permbound/permanent.hpp"
#include "permbound/process.hpp"

namespace permbound {

/// Product of row sums.
template <Scalar T>
T rowsum_bound(const Matrix<T>& a) {
  require_square(a, "rowsum_bound");
  require_nonnegative(a, "rowsum_bound");
  T product(1);
  for (std::size_t i = 0; i < a.n(); ++i) {
    T sum(0);
    for (const T& v : a.row(i)) sum += v;
    product *= sum;
  }
  return product;
}

// ---------------------------------------------------------------------------
// Recursive majorants
// ---------------------------------------------------------------------------

enum class MajorantMode { Inequality, Equality };

/// A candidate majorant B for A: when verified, every entry satisfies
///   a_ij + sum_{s < min(i,j)} b_is b_sj / a_ss <= b_ij   (== in Equality mode)
/// and therefore u <= B entrywise and per(A) <= prod_i b_ii.
template <Scalar T>
struct MajorantCertificate {
  Matrix<T> a;
  Matrix<T> b;
  MajorantMode mode = MajorantMode::Inequality;
  bool verified = false;
};

namespace detail {

/// a_ij + sum_{s < min(i,j)} b_is b_sj / a_ss (0-based i, j).
template <Scalar T>
T majorant_condition_lhs(const Matrix<T>& a, const Matrix<T>& b, std::size_t i, std::size_t j) {
  T value = a(i, j);
  for (std::size_t s = 0; s < std::min(i, j); ++s) {
    if (is_zero(a(s, s))) fail(ErrorCode::ZeroPivot, "a_ss = 0 at s = " + std::to_string(s + 1), {.step = s + 1});
    value += b(i, s) * b(s, j) / a(s, s);
  }
  return value;
}

}  // namespace detail

/// Checks the majorant condition at every entry, then cross-checks u <= B
/// against recursive_u. Throws ConditionViolated at the first failing entry.
template <Scalar T>
MajorantCertificate<T> verify_majorant(MajorantCertificate<T> cert) {
  const Matrix<T>& a = cert.a;
  const Matrix<T>& b = cert.b;
  require_square(a, "verify_majorant");
  require_square(b, "verify_majorant");
  if (a.n() != b.n()) fail(ErrorCode::DimensionMismatch, "verify_majorant: A and B differ in size");
  require_nonnegative(a, "verify_majorant");
  require_nonnegative(b, "verify_majorant");
  const std::size_t n = a.n();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const T lhs = detail::majorant_condition_lhs(a, b, i, j);
      const bool ok = cert.mode == MajorantMode::Equality ? approx_equal(lhs, b(i, j)) : leq(lhs, b(i, j));
      if (!ok)
        fail(ErrorCode::ConditionViolated,
             "majorant condition fails at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                 "): required >= " + to_string(lhs) + ", got " + to_string(b(i, j)),
             {.row = i + 1, .col = j + 1});
    }
  }
  const Matrix<T> u = recursive_u(a);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!leq(u(i, j), b(i, j)))
        fail(ErrorCode::ConditionViolated,
             "u exceeds the certified majorant at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
             {.row = i + 1, .col = j + 1});
  cert.verified = true;
  return cert;
}

/// The equality-case majorant: b_ij = a_ij + sum_{s < min(i,j)} b_is b_sj / a_ss.
template <Scalar T>
Matrix<T> solve_majorant(const Matrix<T>& a) {
  require_square(a, "solve_majorant");
  require_nonnegative(a, "solve_majorant");
  const std::size_t n = a.n();
  Matrix<T> b(n, n);
  for (std::size_t m = 0; m < n; ++m) {
    b(m, m) = detail::majorant_condition_lhs(a, b, m, m);
    for (std::size_t k = m + 1; k < n; ++k) {
      b(k, m) = detail::majorant_condition_lhs(a, b, k, m);
      b(m, k) = detail::majorant_condition_lhs(a, b, m, k);
    }
  }
  return b;
}

template <Scalar T>
T diagonal_product(const Matrix<T>& m) {
  T p(1);
  for (std::size_t i = 0; i < m.n(); ++i) p *= m(i, i);
  return p;
}

// ---------------------------------------------------------------------------
// Diagonal dominance
// ---------------------------------------------------------------------------

template <Scalar T>
struct DiagDominance {
  bool certified = false;
  /// (1+eps)^n prod a_ii; meaningful only when certified.
  T bound;
  /// First (i, j) in row-major order where the condition fails, 1-based.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};

/// Checks (1+eps)^2/eps * sum_{s < min(i,j)} a_is a_sj / a_ss <= a_ij
/// everywhere; when it holds, per(A) <= (1+eps)^n prod a_ii.
template <Scalar T>
DiagDominance<T> diag_dominance_certify(const Matrix<T>& a, const T& eps) {
  require_square(a, "diag_dominance_certify");
  require_nonnegative(a, "diag_dominance_certify");
  if (sgn_of(eps) <= 0) fail(ErrorCode::ParameterOutOfRange, "eps must be positive");
  const std::size_t n = a.n();
  for (std::size_t s = 0; s < n; ++s)
    if (is_zero(a(s, s))) fail(ErrorCode::ZeroPivot, "diag_dominance_certify needs a positive diagonal", {.step = s + 1});
  const T one_plus = T(1) + eps;
  const T weight = one_plus * one_plus / eps;
  DiagDominance<T> out{true, T(pow_int(one_plus, static_cast<long>(n)) * diagonal_product(a)), std::nullopt};
  for (std::size_t i = 0; i < n && out.certified; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      T sum(0);
      for (std::size_t s = 0; s < std::min(i, j); ++s) sum += a(i, s) * a(s, j) / a(s, s);
      if (!leq(T(weight * sum), a(i, j))) {
        out.certified = false;
        out.violation = {i + 1, j + 1};
        break;
      }
    }
  }
  return out;
}

/// Unit-diagonal instance with off-diagonal entries drawn from the grid
/// {delta * k / 8 : k = 1..8}, redrawn until diag_dominance_certify accepts
/// it. Deterministic for a given engine state.
template <Scalar T>
Matrix<T> random_dd_instance(std::size_t n, const T& eps, const T& delta, std::mt19937_64& rng,
                             int max_attempts = 1000) {
  if (n < 1 || sgn_of(eps) <= 0 || sgn_of(delta) <= 0)
    fail(ErrorCode::ParameterOutOfRange, "random-dd needs n >= 1, eps > 0, delta > 0");
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Matrix<T> a = Matrix<T>::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) a(i, j) = delta * ratio<T>(static_cast<long>(1 + rng() % 8), 8);
    if (diag_dominance_certify(a, eps).certified) return a;
  }
  fail(ErrorCode::ParameterOutOfRange, "random-dd: no certified instance found; delta too large for eps and n");
}

// ---------------------------------------------------------------------------
// Boundedness of the process entries
// ---------------------------------------------------------------------------

inline std::uint64_t factorial(std::size_t m) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= m; ++k) f *= k;
  return f;
}

/// gamma_m = m! M^m.
template <Scalar T>
T gamma_value(std::size_t m, const T& big_m) {
  return T(T(static_cast<unsigned long>(factorial(m))) * pow_int(big_m, static_cast<long>(m)));
}

/// B(n, k, t) = n! M^{n+k} (M+1)^{t-1} = gamma_n * M^k (M+1)^{t-1}.
template <Scalar T>
T bound_function(std::size_t n, const T& big_m, std::size_t k, std::size_t t) {
  if (n < 1 || k < 1 || t < 1 || !leq(T(1), big_m) || n > 20)
    fail(ErrorCode::ParameterOutOfRange, "bound_function needs 1 <= n <= 20, M >= 1, k >= 1, t >= 1");
  return T(gamma_value(n, big_m) * pow_int(big_m, static_cast<long>(k)) *
           pow_int(T(big_m + T(1)), static_cast<long>(t - 1)));
}

/// Unit diagonal, entries in [0, M], M >= 1.
template <Scalar T>
void require_bounded_unit_diagonal(const Matrix<T>& a, const T& big_m, const char* what) {
  require_square(a, what);
  if (!leq(T(1), big_m)) fail(ErrorCode::PreconditionViolated, std::string(what) + ": M must be >= 1");
  for (std::size_t i = 0; i < a.n(); ++i) {
    if (!(a(i, i) == T(1))) fail(ErrorCode::PreconditionViolated, std::string(what) + ": diagonal must be all ones");
    for (std::size_t j = 0; j < a.n(); ++j)
      if (sgn_of(a(i, j)) < 0 || a(i, j) > big_m)
        fail(ErrorCode::PreconditionViolated, std::string(what) + ": entries must lie in [0, M]");
  }
}

struct EntryViolation {
  std::size_t i;
  std::size_t j;
  std::size_t t;
};

/// a^{(t)}_ij <= B(n, 1, t) for all t <= min(i, j); returns the first
/// violation found, scanning t, then i, then j.
template <Scalar T>
std::optional<EntryViolation> entry_bound_check(const ProcessTrace<T>& trace, const T& big_m) {
  const std::size_t n = trace.n;
  for (std::size_t t = 1; t <= n; ++t) {
    const T cap = bound_function(n, big_m, 1, t);
    const Matrix<T>& s = trace.snapshot(t);
    for (std::size_t i = t; i <= n; ++i)
      for (std::size_t j = t; j <= n; ++j)
        if (!leq(s(i - 1, j - 1), cap)) return EntryViolation{i, j, t};
  }
  return std::nullopt;
}

template <Scalar T>
std::optional<EntryViolation> entry_bound_check(const Matrix<T>& a, const T& big_m) {
  require_bounded_unit_diagonal(a, big_m, "entry_bound_check");
  return entry_bound_check(run_process(a, true), big_m);
}

template <Scalar T>
struct RatioCheck {
  T ratio;
  T bound;
  bool holds = false;
};

/// Visits every cyclic permutation of `members` (a single cycle through all
/// of them) as a successor map `next[k]` into the same vector.
template <class Visit>
void for_each_cyclic_permutation(std::size_t count, Visit&& visit) {
  if (count < 2) return;
  std::vector<std::size_t> rest(count - 1);
  std::iota(rest.begin(), rest.end(), std::size_t{1});
  std::vector<std::size_t> next(count);
  do {
    std::size_t current = 0;
    for (std::size_t r : rest) {
      next[current] = r;
      current = r;
    }
    next[current] = 0;
    visit(next);
  } while (std::next_permutation(rest.begin(), rest.end()));
}

/// sum over cyclic permutations sigma of S of prod_{i in S} a^{(t)}_{i,sigma(i)},
/// divided by per(A^{(t)}(S - i0, S - i0)), against B(n, |S|, t).
template <Scalar T>
RatioCheck<T> cycle_sum_ratio(const ProcessTrace<T>& trace, std::size_t t, const IndexSet& s, std::size_t i0,
                              const T& big_m) {
  const std::size_t n = trace.n;
  if (t < 1 || t > n) fail(ErrorCode::PreconditionViolated, "cycle_sum_ratio: t outside [1, n]");
  if (s.size() < 2 || !s.contains(i0) || s.members().front() <= t || s.members().back() > n)
    fail(ErrorCode::PreconditionViolated, "cycle_sum_ratio needs |S| >= 2, S within {t+1..n}, i0 in S");
  const Matrix<T>& at = trace.snapshot(t);
  const auto& members = s.members();
  T cycles(0);
  for_each_cyclic_permutation(members.size(), [&](const std::vector<std::size_t>& next) {
    T prod(1);
    for (std::size_t k = 0; k < members.size(); ++k) prod *= at(members[k] - 1, members[next[k]] - 1);
    cycles += prod;
  });
  const IndexSet rest = s.without(i0);
  const T denominator = permanent(select(at, rest, rest));
  if (is_zero(denominator)) fail(ErrorCode::ZeroPermanent, "cycle_sum_ratio: per(A^(t)(S-i0, S-i0)) = 0");
  T r = cycles / denominator;
  T bound = bound_function(n, big_m, s.size(), t);
  const bool holds = leq(r, bound);
  return {std::move(r), std::move(bound), holds};
}

template <Scalar T>
RatioCheck<T> cycle_sum_ratio(const Matrix<T>& a, std::size_t t, const IndexSet& s, std::size_t i0, const T& big_m) {
  require_bounded_unit_diagonal(a, big_m, "cycle_sum_ratio");
  return cycle_sum_ratio(run_process(a, true), t, s, i0, big_m);
}

/// per(A(S+i, S+j)) / per(A(S, S)) against gamma_{|S|+1}.
template <Scalar T>
RatioCheck<T> perm_ratio_check(const Matrix<T>& a, const IndexSet& s, std::size_t i, std::size_t j, const T& big_m) {
  require_bounded_unit_diagonal(a, big_m, "perm_ratio_check");
  if (i < 1 || j < 1 || i > a.n() || j > a.n() || s.contains(i) || s.contains(j))
    fail(ErrorCode::PreconditionViolated, "perm_ratio_check needs i, j in [n] outside S");
  const T denominator = permanent(select(a, s, s));
  if (is_zero(denominator)) fail(ErrorCode::ZeroPermanent, "perm_ratio_check: per(A(S,S)) = 0");
  T r = permanent(select(a, s.with(i), s.with(j))) / denominator;
  T bound = gamma_value(s.size() + 1, big_m);
  const bool holds = leq(r, bound);
  return {std::move(r), std::move(bound), holds};
}

// ---------------------------------------------------------------------------
// Exponential family
// ---------------------------------------------------------------------------

/// (A_n)_ij = c^{-|i-j|}.
template <Scalar T>
Matrix<T> exp_family(std::size_t n, const T& c) {
  if (n < 1 || sgn_of(c) <= 0) fail(ErrorCode::ParameterOutOfRange, "exp_family needs n >= 1 and c > 0");
  Matrix<T> a(n, n);
  std::vector<T> powers(n);
  for (std::size_t k = 0; k < n; ++k) powers[k] = pow_int(c, -static_cast<long>(k));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = powers[i > j ? i - j : j - i];
  return a;
}

/// Final process matrix of exp_family(n, c) in closed form:
///   c^{-|i-j|} (1 + sum_{k=1}^{min(i,j)-1} 2^{k-1} c^{-2k}).
template <Scalar T>
Matrix<T> exp_family_closed_form(std::size_t n, const T& c) {
  Matrix<T> out = exp_family(n, c);
  const T inv_c2 = T(1) / (c * c);
  // factor[m] for min(i,j) = m + 1.
  std::vector<T> factor(n, T(1));
  T term = inv_c2;  // 2^{k-1} c^{-2k} at k = 1
  for (std::size_t m = 1; m < n; ++m) {
    factor[m] = factor[m - 1] + term;
    term *= T(2) * inv_c2;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) *= factor[std::min(i, j)];
  return out;
}

/// (1 + 1/(c^2 - 2))^n; requires c^2 > 2.
template <Scalar T>
T exp_family_cap(std::size_t n, const T& c) {
  const T c2 = c * c;
  if (!(c2 > T(2))) fail(ErrorCode::ParameterOutOfRange, "exp_family_cap needs c^2 > 2");
  return pow_int(T(T(1) + T(1) / (c2 - T(2))), static_cast<long>(n));
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

template <Scalar T>
struct BoundReport {
  std::string matrix_id;
  std::size_t n = 0;
  T process_bound;
  /// Absent when the input has negative entries (Gram inputs).
  std::optional<T> rowsum_bound;
  std::optional<T> exact_perm;
  std::optional<T> process_ratio;
  std::optional<T> rowsum_ratio;
};

/// Fills ratios against the exact permanent when it is present and nonzero.
template <Scalar T>
void fill_ratios(BoundReport<T>& report) {
  if (!report.exact_perm || is_zero(*report.exact_perm)) return;
  report.process_ratio = T(report.process_bound / *report.exact_perm);
  if (report.rowsum_bound) report.rowsum_ratio = T(*report.rowsum_bound / *report.exact_perm);
}

template <Scalar T>
BoundReport<T> make_bound_report(std::string id, const Matrix<T>& a, std::size_t exact_max) {
  BoundReport<T> r;
  r.matrix_id = std::move(id);
  r.n = a.n();
  r.process_bound = process_bound(a);
  r.rowsum_bound = rowsum_bound(a);
  if (a.n() <= exact_max) r.exact_perm = permanent(a);
  fill_ratios(r);
  return r;
}

}  // namespace permbound

#endif
