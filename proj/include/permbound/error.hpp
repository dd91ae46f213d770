#ifndef PERMBOUND_ERROR_HPP
#define PERMBOUND_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace permbound {

enum class ErrorCode {
  DimensionTooLarge,
  NotSquare,
  IndexOutOfRange,
  DimensionMismatch,
  ZeroPermanent,
  NegativeInput,
  ZeroPivot,
  ConditionViolated,
  ParameterOutOfRange,
  PreconditionViolated,
  InvalidGram,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Location attached to an error, 1-based like the rest of the public API.
/// `step` is the elimination step for ZeroPivot; `row`/`col` identify the
/// offending entry for ConditionViolated.
struct ErrorSite {
  std::optional<std::size_t> step;
  std::optional<std::size_t> row;
  std::optional<std::size_t> col;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg, ErrorSite site = {});

  ErrorCode code() const noexcept { return code_; }
  const ErrorSite& site() const noexcept { return site_; }

 private:
  ErrorCode code_;
  ErrorSite site_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& msg, ErrorSite site = {});

}  // namespace permbound

#endif
