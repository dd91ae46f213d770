#ifndef PERMBOUND_CLI_HPP
#define PERMBOUND_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

#include "permbound/error.hpp"

namespace permbound {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericError = 3;

int exit_code_for(ErrorCode code);

/// {"error": ..., "message": ..., "step"/"row"/"col" when known}.
std::string error_json(const Error& e);

/// Entry point for `permbound`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace permbound

#endif
