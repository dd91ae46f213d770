#ifndef PERMBOUND_IO_HPP
#define PERMBOUND_IO_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "permbound/matrix.hpp"

namespace permbound {

enum class MatrixFormat { Csv, Json };
enum class MatrixKind { Nonneg, Gram };

/// A matrix as read from disk. Entries are kept as literals so that each
/// arithmetic backend parses them on its own terms; decimal literals become
/// exact fractions in rational mode.
struct MatrixFile {
  MatrixFormat format = MatrixFormat::Csv;
  MatrixKind kind = MatrixKind::Nonneg;
  std::size_t n = 0;
  std::vector<std::string> entries;  // row-major, n * n
  /// Gram factor V (d x n), row-major.
  std::optional<std::vector<std::string>> factor;
  std::size_t factor_rows = 0;

  template <Scalar T>
  Matrix<T> matrix() const {
    Matrix<T> m(n, n);
    for (std::size_t k = 0; k < entries.size(); ++k) m(k / n, k % n) = parse_scalar<T>(entries[k]);
    return m;
  }

  template <Scalar T>
  std::optional<Matrix<T>> factor_matrix() const {
    if (!factor) return std::nullopt;
    Matrix<T> v(factor_rows, n);
    for (std::size_t k = 0; k < factor->size(); ++k) v(k / n, k % n) = parse_scalar<T>((*factor)[k]);
    return v;
  }
};

MatrixFile parse_csv(std::string_view text);
MatrixFile parse_json(std::string_view text);
/// Dispatches on the first non-blank character ('{' means JSON).
MatrixFile parse_matrix_text(std::string_view text);
MatrixFile read_matrix_file(const std::filesystem::path& path);

/// Entries are written in canonical rational form.
std::string to_csv(const RationalMatrix& m);
std::string to_json(const MatrixFile& file);
std::string serialize(const MatrixFile& file);

MatrixFile matrix_file_from(const RationalMatrix& m, MatrixFormat format = MatrixFormat::Csv);

/// Parses "p1,p2,..." into a 1-based permutation of [n].
std::vector<std::size_t> parse_ordering(std::string_view text, std::size_t n);

}  // namespace permbound

#endif
