#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbitframe {

enum class ErrorKind {
  kInvalidInput,
  kSingularOperator,
  kDegenerateFamily,
  kNotADual,
  kNotAFrameOperator,
  kLengthMismatch,
  kModulusOutOfRange,
  kInvalidAlpha,
  kTailBoundUnreachable,
  kIndexOutOfRange,
  kNoStabilization,
  kInsufficientTruncation,
  kSpanConditionFailed,
  kInvalidContraction,
  kNotInSubspace,
  kInvalidParams,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI and the tests can tell e.g. a rejected dual from a malformed input.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace orbitframe
