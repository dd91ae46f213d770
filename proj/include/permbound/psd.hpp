#ifndef PERMBOUND_PSD_HPP
#define PERMBOUND_PSD_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permbound/matrix.hpp"
#include "permbound/permanent.hpp"
#include "permbound/process.hpp"

namespace permbound {

/// A PSD matrix carried with a factor V (d x n) such that gram = Vᵀ V.
/// Only gram_from_factor builds one, which makes the PSD property a
/// construction invariant rather than a claim.
template <Scalar T>
class GramMatrix {
 public:
  std::size_t n() const noexcept { return gram_.n(); }
  std::size_t d() const noexcept { return factor_.rows(); }
  const Matrix<T>& factor() const noexcept { return factor_; }
  const Matrix<T>& gram() const noexcept { return gram_; }

  /// Columns of the factor reordered by a 1-based permutation.
  GramMatrix reordered(std::span<const std::size_t> order) const {
    Matrix<T> v(d(), n());
    for (std::size_t c = 0; c < n(); ++c)
      for (std::size_t r = 0; r < d(); ++r) v(r, c) = factor_(r, order[c] - 1);
    return GramMatrix(std::move(v), permuted(gram_, order));
  }

  template <Scalar U>
  friend GramMatrix<U> gram_from_factor(const Matrix<U>& v);

 private:
  GramMatrix(Matrix<T> factor, Matrix<T> gram) : factor_(std::move(factor)), gram_(std::move(gram)) {}

  Matrix<T> factor_;
  Matrix<T> gram_;
};

template <Scalar T>
GramMatrix<T> gram_from_factor(const Matrix<T>& v) {
  if (v.rows() < 1 || v.cols() < 1) fail(ErrorCode::DimensionMismatch, "gram factor must be at least 1x1");
  return GramMatrix<T>(v, transpose(v) * v);
}

/// Runs the permanent process on a certified PSD matrix. A zero pivot is
/// skipped when its trailing row and column vanish and reported as
/// InvalidGram otherwise.
template <Scalar T>
ProcessTrace<T> run_process(const GramMatrix<T>& g, bool keep_snapshots = false,
                            std::optional<std::span<const std::size_t>> ordering = std::nullopt) {
  if (ordering) {
    const GramMatrix<T> r = g.reordered(*ordering);
    return detail::eliminate(r.gram(), UpdateSign::Plus, keep_snapshots, ZeroPivotPolicy::SkipIfStructurallyZero,
                             std::vector<std::size_t>(ordering->begin(), ordering->end()));
  }
  return detail::eliminate(g.gram(), UpdateSign::Plus, keep_snapshots, ZeroPivotPolicy::SkipIfStructurallyZero,
                           detail::identity_order(g.n()));
}

template <Scalar T>
T process_bound(const GramMatrix<T>& g) {
  return product_of(run_process(g).pivots);
}

/// Exact PSD test by symmetric elimination (LDLᵀ without square roots):
/// every pivot must be >= 0, and a zero pivot must have a zero column.
template <Scalar T>
bool is_psd(const Matrix<T>& m) {
  if (!m.is_square() || !is_symmetric(m)) return false;
  Matrix<T> a = m;
  const std::size_t n = a.n();
  for (std::size_t k = 0; k < n; ++k) {
    const T pivot = a(k, k);
    if (!leq(T(0), pivot)) return false;
    const bool zero_pivot = is_exact_v<T> ? is_zero(pivot) : approx_equal(pivot, T(0));
    if (zero_pivot) {
      for (std::size_t i = k + 1; i < n; ++i)
        if (is_exact_v<T> ? !is_zero(a(i, k)) : !approx_equal(a(i, k), T(0))) return false;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(a(i, k))) continue;
      const T factor = a(i, k) / pivot;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return true;
}

template <Scalar T>
struct TrailingCertification {
  bool certified = true;
  /// First step whose trailing block failed, 1-based.
  std::optional<std::size_t> failed_step;
};

/// Re-derives a weighted Gram factor for every trailing block
/// A^{(t)}(-[t-1], -[t-1]) of a PSD run and checks it against the snapshot.
///
/// The factor starts as V with unit row weights. Eliminating a pivot with
/// column f_0 appends the row xᵀ with weight 1/a, where a = f_0ᵀ W f_0 and
/// x = Fᵀ W f_0, since B + x xᵀ / a = Fᵀ W F + (1/a) x xᵀ. Weights stay
/// non-negative, so every trailing block is PSD by construction; each one is
/// additionally confirmed by is_psd.
template <Scalar T>
TrailingCertification<T> certify_trailing_blocks(const GramMatrix<T>& g, const ProcessTrace<T>& trace) {
  if (!trace.has_snapshots()) fail(ErrorCode::PreconditionViolated, "certify_trailing_blocks needs snapshots");
  const std::size_t n = g.n();
  // factor rows over the remaining columns, with weights.
  std::vector<Vector<T>> rows;
  Vector<T> weights;
  const GramMatrix<T> ordered = g.reordered(trace.ordering);
  for (std::size_t r = 0; r < ordered.d(); ++r) {
    rows.emplace_back(ordered.factor().row(r).begin(), ordered.factor().row(r).end());
    weights.push_back(T(1));
  }
  for (std::size_t t = 1; t <= n; ++t) {
    const std::size_t m = n - t + 1;
    Matrix<T> rebuilt(m, m);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t i = 0; i < m; ++i) {
        if (is_zero(rows[r][i])) continue;
        for (std::size_t j = 0; j < m; ++j) rebuilt(i, j) += weights[r] * rows[r][i] * rows[r][j];
      }
    const IndexSet head = IndexSet::range(1, t - 1);
    const Matrix<T> block = drop(trace.snapshot(t), head, head);
    bool same = true;
    for (std::size_t i = 0; i < m && same; ++i)
      for (std::size_t j = 0; j < m && same; ++j) same = approx_equal(rebuilt(i, j), block(i, j));
    if (!same || !is_psd(block)) return {false, t};

    // Eliminate the leading column of the factor.
    T a(0);
    for (std::size_t r = 0; r < rows.size(); ++r) a += weights[r] * rows[r][0] * rows[r][0];
    Vector<T> x(m - 1, T(0));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t i = 1; i < m; ++i) x[i - 1] += weights[r] * rows[r][0] * rows[r][i];
    for (auto& row : rows) row.erase(row.begin());
    if (!is_zero(a)) {
      rows.push_back(std::move(x));
      weights.push_back(T(1) / a);
    }
  }
  return {};
}

/// per(Vᵀ V) = (1/n!) || sum_sigma v_sigma(1) ⊗ ... ⊗ v_sigma(n) ||^2.
///
/// The symmetrised tensor is accumulated over subsets: the sum over all
/// orderings of S equals sum_{j in S} (sum over orderings of S - j) ⊗ v_j.
template <Scalar T>
T permanent_tensor(const GramMatrix<T>& g) {
  constexpr std::size_t kMaxN = 6;
  constexpr std::size_t kMaxEntries = std::size_t{1} << 22;
  const std::size_t n = g.n();
  const std::size_t d = g.d();
  if (n > kMaxN) fail(ErrorCode::DimensionTooLarge, "permanent_tensor supports n <= 6");
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    total *= d + 1;
    if (total > kMaxEntries) fail(ErrorCode::DimensionTooLarge, "permanent_tensor: tensor space too large");
  }
  const Matrix<T>& v = g.factor();
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<Vector<T>> tensor(subsets);
  tensor[0] = Vector<T>{T(1)};
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    const std::size_t prev_size = tensor[mask & (mask - 1)].size();
    Vector<T> acc(prev_size * d, T(0));
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      const Vector<T>& prev = tensor[mask ^ (std::size_t{1} << j)];
      for (std::size_t p = 0; p < prev.size(); ++p) {
        if (is_zero(prev[p])) continue;
        for (std::size_t r = 0; r < d; ++r) acc[p * d + r] += prev[p] * v(r, j);
      }
    }
    tensor[mask] = std::move(acc);
  }
  T norm2(0);
  for (const T& e : tensor[subsets - 1]) norm2 += e * e;
  T fact(1);
  for (std::size_t k = 2; k <= n; ++k) fact *= T(static_cast<unsigned long>(k));
  return T(norm2 / fact);
}

/// Coefficients of per(a B + x xᵀ) = sum_k alpha_k a^{m-k}, m = dim B.
template <Scalar T>
struct AlphaCoefficients {
  std::size_t m = 0;
  Vector<T> coeffs;  // alpha_0 .. alpha_m
};

/// Recovers the polynomial in a by evaluating at a = 1..m+1 and
/// interpolating exactly (Newton form, then expanded to monomials).
template <Scalar T>
AlphaCoefficients<T> alpha_coefficients(const Matrix<T>& b, const Vector<T>& x) {
  require_square(b, "alpha_coefficients");
  const std::size_t m = b.n();
  if (x.size() != m) fail(ErrorCode::DimensionMismatch, "alpha_coefficients: x must have length dim(B)");
  if (m + 1 > kRyserMaxNRational) fail(ErrorCode::DimensionTooLarge, "alpha_coefficients: B too large");
  const Matrix<T> xxt = outer(x, x);
  const std::size_t points = m + 1;
  Vector<T> nodes(points), dd(points);
  for (std::size_t k = 0; k < points; ++k) {
    nodes[k] = T(static_cast<long>(k + 1));
    dd[k] = permanent(scaled(b, nodes[k]) + xxt);
  }
  for (std::size_t level = 1; level < points; ++level)
    for (std::size_t k = points - 1; k >= level; --k) dd[k] = (dd[k] - dd[k - 1]) / (nodes[k] - nodes[k - level]);
  // Horner on the Newton form: poly = dd[m]; poly = poly * (a - node[k]) + dd[k].
  Vector<T> poly{dd[points - 1]};
  for (std::size_t k = points - 1; k-- > 0;) {
    Vector<T> next(poly.size() + 1, T(0));
    for (std::size_t p = 0; p < poly.size(); ++p) {
      next[p + 1] += poly[p];
      next[p] -= poly[p] * nodes[k];
    }
    next[0] += dd[k];
    poly = std::move(next);
  }
  poly.resize(points, T(0));
  AlphaCoefficients<T> out{m, Vector<T>(points)};
  for (std::size_t k = 0; k <= m; ++k) out.coeffs[k] = poly[m - k];
  return out;
}

template <Scalar T>
struct PsdSchurCheck {
  T exact;
  T rhs;
  bool holds = false;
  AlphaCoefficients<T> alpha;
  /// per(A) = a alpha_0 + alpha_1.
  bool identity_holds = false;
  bool alphas_nonnegative = false;
};

/// Splits gram = [[B, x], [xᵀ, a]] at the last index and compares per(A)
/// with a per(B + x xᵀ / a).
template <Scalar T>
PsdSchurCheck<T> psd_schur_check(const GramMatrix<T>& g) {
  const Matrix<T>& full = g.gram();
  const std::size_t n = full.n();
  if (n < 2) fail(ErrorCode::DimensionMismatch, "psd_schur_check needs n >= 2");
  const T a = full(n - 1, n - 1);
  if (is_zero(a)) fail(ErrorCode::ZeroPivot, "psd_schur_check: a = 0", {.step = n});
  const IndexSet head = IndexSet::range(1, n - 1);
  const Matrix<T> b = select(full, head, head);
  Vector<T> x(n - 1);
  for (std::size_t i = 0; i < n - 1; ++i) x[i] = full(i, n - 1);

  PsdSchurCheck<T> out;
  out.exact = permanent(full);
  out.rhs = a * permanent(b + scaled(outer(x, x), T(T(1) / a)));
  out.holds = leq(out.exact, out.rhs);
  out.alpha = alpha_coefficients(b, x);
  const T alpha1 = out.alpha.coeffs.size() > 1 ? out.alpha.coeffs[1] : T(0);
  out.identity_holds = approx_equal(out.exact, T(a * out.alpha.coeffs[0] + alpha1));
  out.alphas_nonnegative = true;
  for (const T& c : out.alpha.coeffs) out.alphas_nonnegative = out.alphas_nonnegative && leq(T(0), c);
  return out;
}

}  // namespace permbound

#endif
