#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace centroidcut {

enum class ErrorCode {
  kParse,
  kDegenerateInput,
  kDimensionTooLarge,
  kDimensionMismatch,
  kRefNotInterior,
  kBadDelta,
  kBadSpec,
  kInfeasible,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` distinguishes the
/// failure classes callers need to branch on (the CLI maps them to exit codes).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace centroidcut
