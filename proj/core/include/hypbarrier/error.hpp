#pragma once

#include <stdexcept>
#include <string>

namespace hypbarrier {

enum class ErrorCode {
  kInvalidArgument,
  kNumericalDrift,
  kOutsideDisk,
  kGeodesicMissesDomain,
  kInvalidGroup,
  kUnboundedDomain,
  kParse,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; `code()` lets front-ends map
// failures onto exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hypbarrier
