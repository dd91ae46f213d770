#include "permbound/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace permbound {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Every literal must parse exactly; decimals are checked through the
// rational grammar, which is the stricter of the two.
void validate_literals(const std::vector<std::string>& values) {
  for (const auto& v : values) (void)parse_rational(v);
}

std::string literal_of(const json& v, const char* what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return v.dump();
  fail(ErrorCode::ParseError, std::string(what) + ": entries must be numbers or strings");
}

// Accepts a flat row-major array or an array of rows.
std::vector<std::string> flatten(const json& v, std::size_t cols, std::size_t& rows, const char* what) {
  if (!v.is_array()) fail(ErrorCode::ParseError, std::string(what) + " must be an array");
  std::vector<std::string> out;
  if (!v.empty() && v.front().is_array()) {
    rows = v.size();
    for (const auto& row : v) {
      if (!row.is_array() || row.size() != cols)
        fail(ErrorCode::ParseError, std::string(what) + ": every row must have " + std::to_string(cols) + " entries");
      for (const auto& e : row) out.push_back(literal_of(e, what));
    }
  } else {
    if (cols == 0 || v.size() % cols != 0)
      fail(ErrorCode::ParseError, std::string(what) + ": length is not a multiple of n");
    rows = v.size() / cols;
    for (const auto& e : v) out.push_back(literal_of(e, what));
  }
  validate_literals(out);
  return out;
}

}  // namespace

MatrixFile parse_csv(std::string_view text) {
  MatrixFile file;
  file.format = MatrixFormat::Csv;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string> cells = split(t, ',');
    if (rows == 0) cols = cells.size();
    if (cells.size() != cols)
      fail(ErrorCode::ParseError, "csv line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                                      " entries, found " + std::to_string(cells.size()));
    for (auto& c : cells) file.entries.push_back(std::move(c));
    ++rows;
  }
  if (rows == 0) fail(ErrorCode::ParseError, "csv input is empty");
  if (rows != cols) fail(ErrorCode::ParseError, "csv matrix is " + std::to_string(rows) + "x" + std::to_string(cols));
  validate_literals(file.entries);
  file.n = rows;
  return file;
}

MatrixFile parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::ParseError, "matrix JSON must be an object");
  MatrixFile file;
  file.format = MatrixFormat::Json;
  const std::string kind = doc.value("kind", std::string("nonneg"));
  if (kind == "nonneg") {
    file.kind = MatrixKind::Nonneg;
  } else if (kind == "gram") {
    file.kind = MatrixKind::Gram;
  } else {
    fail(ErrorCode::ParseError, "unknown kind '" + kind + "'");
  }
  if (!doc.contains("n") || !doc["n"].is_number_unsigned() || doc["n"].get<std::size_t>() == 0)
    fail(ErrorCode::ParseError, "\"n\" must be a positive integer");
  file.n = doc["n"].get<std::size_t>();

  if (doc.contains("factor") && !doc["factor"].is_null()) {
    std::size_t d = 0;
    file.factor = flatten(doc["factor"], file.n, d, "factor");
    if (d == 0) fail(ErrorCode::ParseError, "factor must have at least one row");
    file.factor_rows = d;
  }
  if (file.kind == MatrixKind::Gram && !file.factor) fail(ErrorCode::ParseError, "kind \"gram\" requires a factor");

  if (doc.contains("entries")) {
    std::size_t rows = 0;
    file.entries = flatten(doc["entries"], file.n, rows, "entries");
    if (rows != file.n)
      fail(ErrorCode::ParseError, "entries describe " + std::to_string(rows) + " rows, n = " + std::to_string(file.n));
    if (file.factor) {
      const RationalMatrix v = *file.factor_matrix<Rational>();
      if (!(transpose(v) * v == file.matrix<Rational>()))
        fail(ErrorCode::InvalidGram, "entries differ from factorᵀ factor");
    }
  } else if (file.factor) {
    const RationalMatrix v = *file.factor_matrix<Rational>();
    const RationalMatrix g = transpose(v) * v;
    for (const Rational& e : g.data()) file.entries.push_back(to_string(e));
  } else {
    fail(ErrorCode::ParseError, "matrix JSON needs \"entries\" or a factor");
  }
  return file;
}

MatrixFile parse_matrix_text(std::string_view text) {
  const std::string_view t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_json(t);
  return parse_csv(t);
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_text(buf.str());
}

std::string to_csv(const RationalMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += to_string(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const MatrixFile& file) {
  const auto rows_of = [&](const RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  nlohmann::ordered_json doc;
  doc["n"] = file.n;
  doc["kind"] = file.kind == MatrixKind::Gram ? "gram" : "nonneg";
  doc["entries"] = rows_of(file.matrix<Rational>());
  if (file.factor) doc["factor"] = rows_of(*file.factor_matrix<Rational>());
  return doc.dump(2) + "\n";
}

std::string serialize(const MatrixFile& file) {
  return file.format == MatrixFormat::Json ? to_json(file) : to_csv(file.matrix<Rational>());
}

MatrixFile matrix_file_from(const RationalMatrix& m, MatrixFormat format) {
  require_square(m, "matrix_file_from");
  MatrixFile file;
  file.format = format;
  file.n = m.n();
  for (const Rational& e : m.data()) file.entries.push_back(to_string(e));
  return file;
}

std::vector<std::size_t> parse_ordering(std::string_view text, std::size_t n) {
  std::vector<std::size_t> order;
  for (const std::string& cell : split(text, ',')) {
    if (cell.empty() || cell.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorCode::ParseError, "ordering entries must be positive integers");
    order.push_back(std::stoul(cell));
  }
  if (order.size() != n)
    fail(ErrorCode::DimensionMismatch, "ordering has " + std::to_string(order.size()) + " entries, n = " + std::to_string(n));
  std::vector<bool> seen(n + 1, false);
  for (std::size_t p : order) {
    if (p < 1 || p > n) fail(ErrorCode::IndexOutOfRange, "ordering entry " + std::to_string(p) + " outside [1, n]");
    if (seen[p]) fail(ErrorCode::ParseError, "ordering repeats " + std::to_string(p));
    seen[p] = true;
  }
  return order;
}

}  // namespace permbound
