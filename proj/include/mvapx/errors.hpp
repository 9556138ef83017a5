#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvapx {

enum class ErrorKind {
  kInfeasible,
  kUnbounded,
  kNotParamodular,
  kGroundSetTooLarge,
  kElementNotInPolyhedron,
  kEmptyIntersection,
  kNonTermination,
  kOddDegree,
  kDisconnected,
  kNotEulerian,
  kDeficitVisit,
  kUnbalanced,
  kOddCardinality,
  kSubsetTooLarge,
  kBudgetExceeded,
  kInvalidInput,
  kInternal,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above, so
/// callers (tests, the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Budget and enumeration caps; the CLI maps these to exit code 4.
  bool is_cap() const noexcept {
    return kind_ == ErrorKind::kGroundSetTooLarge ||
           kind_ == ErrorKind::kSubsetTooLarge ||
           kind_ == ErrorKind::kBudgetExceeded;
  }

 private:
  ErrorKind kind_;
};

}  // namespace mvapx
