#ifndef PERMBOUND_PROCESS_HPP
#define PERMBOUND_PROCESS_HPP

#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permbound/matrix.hpp"
#include "permbound/permanent.hpp"

namespace permbound {

/// Pivots a^{(t)}_{t,t} of one run, and optionally the states A^{(1)}..A^{(n)}
/// where snapshots[t-1] is the matrix at the beginning of step t.
template <Scalar T>
struct ProcessTrace {
  std::size_t n = 0;
  Vector<T> pivots;
  std::vector<Matrix<T>> snapshots;
  /// 1-based permutation applied to rows and columns before the run.
  std::vector<std::size_t> ordering;
  Arithmetic arithmetic = arithmetic_of<T>();

  bool has_snapshots() const noexcept { return !snapshots.empty(); }
  /// A^{(t)}, 1-based.
  const Matrix<T>& snapshot(std::size_t t) const { return snapshots.at(t - 1); }
  const Matrix<T>& final_matrix() const { return snapshots.back(); }
};

enum class UpdateSign { Plus, Minus };

/// What to do when a pivot is zero.
enum class ZeroPivotPolicy {
  Fail,
  /// PSD inputs: skip the step when the pivot's trailing row and column are
  /// zero, report InvalidGram otherwise.
  SkipIfStructurallyZero,
};

namespace detail {

inline std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{1});
  return order;
}

template <Scalar T>
bool trailing_cross_is_zero(const Matrix<T>& a, std::size_t t) {
  for (std::size_t i = t + 1; i < a.n(); ++i) {
    if constexpr (is_exact_v<T>) {
      if (!is_zero(a(i, t)) || !is_zero(a(t, i))) return false;
    } else {
      if (!approx_equal(a(i, t), 0.0) || !approx_equal(a(t, i), 0.0)) return false;
    }
  }
  return true;
}

/// Shared elimination loop; t is 0-based here.
template <Scalar T>
ProcessTrace<T> eliminate(Matrix<T> a, UpdateSign sign, bool keep_snapshots, ZeroPivotPolicy policy,
                          std::vector<std::size_t> ordering) {
  const std::size_t n = a.n();
  ProcessTrace<T> trace;
  trace.n = n;
  trace.ordering = std::move(ordering);
  trace.pivots.reserve(n);
  if (keep_snapshots) {
    trace.snapshots.reserve(n);
    trace.snapshots.push_back(a);
  }
  for (std::size_t t = 0; t < n; ++t) {
    const T pivot = a(t, t);
    trace.pivots.push_back(pivot);
    if (is_zero(pivot) && policy == ZeroPivotPolicy::Fail)
      fail(ErrorCode::ZeroPivot, "zero pivot at step " + std::to_string(t + 1), {.step = t + 1});
    if (t + 1 == n) break;
    if (is_zero(pivot)) {
      if (!trailing_cross_is_zero(a, t))
        fail(ErrorCode::InvalidGram, "zero pivot with nonzero row/column at step " + std::to_string(t + 1),
             {.step = t + 1});
    } else {
      for (std::size_t i = t + 1; i < n; ++i) {
        if (is_zero(a(i, t))) continue;
        const T factor = a(i, t) / pivot;
        for (std::size_t j = t + 1; j < n; ++j) {
          if (sign == UpdateSign::Plus) {
            a(i, j) += factor * a(t, j);
          } else {
            a(i, j) -= factor * a(t, j);
          }
        }
      }
      if (sign == UpdateSign::Minus) {
        for (std::size_t j = t + 1; j < n; ++j) a(t, j) = T(0);
      }
    }
    if (keep_snapshots) trace.snapshots.push_back(a);
  }
  return trace;
}

}  // namespace detail

/// Runs the permanent process on a non-negative matrix:
///   a^{(t+1)}_{ij} = a^{(t)}_{ij} + a^{(t)}_{it} a^{(t)}_{tj} / a^{(t)}_{tt}   for i, j > t.
/// PSD inputs go through the GramMatrix overload in psd.hpp.
template <Scalar T>
ProcessTrace<T> run_process(const Matrix<T>& a, bool keep_snapshots = false,
                            std::optional<std::span<const std::size_t>> ordering = std::nullopt) {
  require_square(a, "run_process");
  if (!is_nonnegative(a))
    fail(ErrorCode::NegativeInput, "run_process needs a non-negative matrix or a certified Gram matrix");
  if (ordering) {
    return detail::eliminate(permuted(a, *ordering), UpdateSign::Plus, keep_snapshots, ZeroPivotPolicy::Fail,
                             std::vector<std::size_t>(ordering->begin(), ordering->end()));
  }
  return detail::eliminate(a, UpdateSign::Plus, keep_snapshots, ZeroPivotPolicy::Fail,
                           detail::identity_order(a.n()));
}

template <Scalar T>
T product_of(const Vector<T>& values) {
  T p(1);
  for (const T& v : values) p *= v;
  return p;
}

/// Product of the process pivots; an upper bound on per(A).
template <Scalar T>
T process_bound(const Matrix<T>& a) {
  return product_of(run_process(a).pivots);
}

/// The same loop with the update subtracted and row t cleared to the right
/// of the pivot, giving a lower-triangular A^{(n)} whose diagonal product is
/// det(A). No pivoting.
template <Scalar T>
ProcessTrace<T> run_gaussian_variant(const Matrix<T>& a, bool keep_snapshots = false) {
  require_square(a, "run_gaussian_variant");
  return detail::eliminate(a, UpdateSign::Minus, keep_snapshots, ZeroPivotPolicy::Fail,
                           detail::identity_order(a.n()));
}

/// u_{ij} = a_{ij} + sum_{s < min(i,j)} u_{is} u_{sj} / u_{ss}; equals the
/// final process value a^{(min(i,j))}_{ij}.
template <Scalar T>
Matrix<T> recursive_u(const Matrix<T>& a) {
  require_square(a, "recursive_u");
  require_nonnegative(a, "recursive_u");
  const std::size_t n = a.n();
  Matrix<T> u(n, n);
  // Entries with min(i,j) = m depend only on entries with smaller min.
  for (std::size_t m = 0; m < n; ++m) {
    auto fill = [&](std::size_t i, std::size_t j) {
      T value = a(i, j);
      for (std::size_t s = 0; s < m; ++s) {
        if (is_zero(u(s, s))) fail(ErrorCode::ZeroPivot, "u_ss = 0 at s = " + std::to_string(s + 1), {.step = s + 1});
        value += u(i, s) * u(s, j) / u(s, s);
      }
      u(i, j) = std::move(value);
    };
    fill(m, m);
    for (std::size_t k = m + 1; k < n; ++k) {
      fill(k, m);
      fill(m, k);
    }
  }
  return u;
}

template <Scalar T>
struct PivotCheck {
  std::size_t t;
  T pivot;
  T ratio;
  bool holds;
};

/// pivot_t >= per(A^{(t)}(-[t-1], -[t-1])) / per(A^{(t+1)}(-[t], -[t])) for
/// every step, read off a trace with snapshots. For t = n the denominator
/// is the empty permanent 1.
template <Scalar T>
std::vector<PivotCheck<T>> pivot_lower_bound_check(const ProcessTrace<T>& trace) {
  if (!trace.has_snapshots()) fail(ErrorCode::PreconditionViolated, "pivot_lower_bound_check needs snapshots");
  const std::size_t n = trace.n;
  std::vector<PivotCheck<T>> out;
  out.reserve(n);
  // The trailing block of A^{(t+1)} at step t is the numerator at step t+1.
  std::vector<T> trailing(n + 1, T(1));
  for (std::size_t t = 1; t <= n; ++t) {
    const IndexSet head = IndexSet::range(1, t - 1);
    trailing[t - 1] = permanent(drop(trace.snapshot(t), head, head));
  }
  for (std::size_t t = 1; t <= n; ++t) {
    const T& numerator = trailing[t - 1];
    const T& denominator = trailing[t];
    if (is_zero(denominator))
      fail(ErrorCode::ZeroPermanent, "trailing permanent is zero after step " + std::to_string(t), {.step = t});
    T ratio = numerator / denominator;
    const T& pivot = trace.pivots[t - 1];
    const bool holds = leq(ratio, pivot);
    out.push_back({t, pivot, std::move(ratio), holds});
  }
  return out;
}

template <Scalar T>
std::vector<PivotCheck<T>> pivot_lower_bound_check(const Matrix<T>& a) {
  return pivot_lower_bound_check(run_process(a, true));
}

/// Every entry (i, j) keeps its value from step min(i,j) onward.
template <Scalar T>
bool entries_frozen_after_their_step(const ProcessTrace<T>& trace) {
  const std::size_t n = trace.n;
  for (std::size_t t = 2; t <= n; ++t) {
    const Matrix<T>& before = trace.snapshot(t - 1);
    const Matrix<T>& after = trace.snapshot(t);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j)
        if (t >= std::min(i, j) + 1 && !(after(i - 1, j - 1) == before(i - 1, j - 1))) return false;
  }
  return true;
}

/// u read off the snapshots: u_{ij} = A^{(min(i,j))}_{ij}.
template <Scalar T>
Matrix<T> u_from_snapshots(const ProcessTrace<T>& trace) {
  const std::size_t n = trace.n;
  Matrix<T> u(n, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) u(i - 1, j - 1) = trace.snapshot(std::min(i, j))(i - 1, j - 1);
  return u;
}

/// Largest numerator/denominator bit length over every snapshot entry.
inline std::size_t max_entry_bits(const ProcessTrace<Rational>& trace) {
  std::size_t bits = 0;
  for (const auto& s : trace.snapshots)
    for (const Rational& v : s.data()) bits = std::max(bits, bit_length(v));
  return bits;
}

inline std::size_t max_entry_bits(const RationalMatrix& m) {
  std::size_t bits = 0;
  for (const Rational& v : m.data()) bits = std::max(bits, bit_length(v));
  return bits;
}

/// Encoding size: numerator plus denominator bits summed over all entries.
inline std::size_t total_bits(const RationalMatrix& m) {
  std::size_t bits = 0;
  for (const Rational& v : m.data())
    bits += mpz_sizeinbase(v.get_num_mpz_t(), 2) + mpz_sizeinbase(v.get_den_mpz_t(), 2);
  return bits;
}

}  // namespace permbound

#endif
