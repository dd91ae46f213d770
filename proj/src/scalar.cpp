#include "permbound/scalar.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>

#include "permbound/error.hpp"

namespace permbound {

std::string_view to_string(Arithmetic arithmetic) {
  return arithmetic == Arithmetic::Rational ? "rational" : "float";
}

std::string to_string(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_string(const Rational& v) { return v.get_str(); }

std::size_t bit_length(const Rational& v) {
  const std::size_t num = sgn(v.get_num()) == 0 ? 1 : mpz_sizeinbase(v.get_num_mpz_t(), 2);
  const std::size_t den = mpz_sizeinbase(v.get_den_mpz_t(), 2);
  return std::max(num, den);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_literal(std::string_view text) {
  fail(ErrorCode::ParseError, "invalid numeric literal '" + std::string(text) + "'");
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) bad_literal(whole);
  std::size_t start = (s.front() == '+' || s.front() == '-') ? 1 : 0;
  if (start == s.size()) bad_literal(whole);
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) bad_literal(whole);
  }
  std::string digits(s.front() == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    mpz_class ez = parse_integer(exp_part, whole);
    if (!ez.fits_slong_p() || abs(ez) > 10000) bad_literal(whole);
    exponent = ez.get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  bool seen_point = false;
  bool any_digit = false;
  for (char ch : s) {
    if (ch == '.') {
      if (seen_point) bad_literal(whole);
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      any_digit = true;
      if (seen_point) --exponent;
    } else {
      bad_literal(whole);
    }
  }
  if (!any_digit) bad_literal(whole);
  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) bad_literal(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(trim(s.substr(0, slash)), text);
    mpz_class den = parse_integer(trim(s.substr(slash + 1)), text);
    if (sgn(den) == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  return parse_decimal(s, text);
}

double parse_double(std::string_view text) {
  std::string_view s = trim(text);
  if (s.find('/') != std::string_view::npos) {
    Rational r = parse_rational(s);
    return mpz_class(r.get_num()).get_d() / mpz_class(r.get_den()).get_d();
  }
  // Validate the grammar first so both modes accept the same literals.
  (void)parse_rational(s);
  std::string buf(s);
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || errno == ERANGE) bad_literal(text);
  return v;
}

}  // namespace permbound
