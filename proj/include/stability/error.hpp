#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stab {

enum class Errc {
  kNegativeImaginary,
  kLengthMismatch,
  kDegreeExceeded,
  kNonContiguousOnes,
  kBackendMismatch,
  kParentMismatch,
  kNotSurjective,
  kDimensionBoundExceeded,
  kZeroObject,
  kPreconditionViolated,
  kLevelOutOfRange,
  kUnvalidatedPreset,
  kParseError,
  kInvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

/// Domain error carrying a stable code. Violations reported as data (audits,
/// verdicts) never throw; only contract breaches do.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace stab
