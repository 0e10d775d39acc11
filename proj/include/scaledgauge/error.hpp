#pragma once

#include <stdexcept>
#include <string>

namespace scaledgauge {

enum class ErrorKind {
  kInvalidArgument,
  kArithmeticOverflow,
  kDivisionByZero,
  kOutOfRange,
  kSeriesDivergence,
  kNonFinite,
  kNotIntegrable,
  kInvalidCoupling,
  kDimensionMismatch,
  kScaleMismatch,
  kUnknownKind,
  kConfig,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kArithmeticOverflow: return "arithmetic-overflow";
    case ErrorKind::kDivisionByZero: return "division-by-zero";
    case ErrorKind::kOutOfRange: return "out-of-range";
    case ErrorKind::kSeriesDivergence: return "series-divergence";
    case ErrorKind::kNonFinite: return "non-finite";
    case ErrorKind::kNotIntegrable: return "not-integrable";
    case ErrorKind::kInvalidCoupling: return "invalid-coupling";
    case ErrorKind::kDimensionMismatch: return "dimension-mismatch";
    case ErrorKind::kScaleMismatch: return "scale-mismatch";
    case ErrorKind::kUnknownKind: return "unknown-kind";
    case ErrorKind::kConfig: return "config";
  }
  return "unknown";
}

/// Every failure raised by the library carries a kind so callers (and the
/// CLI exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace scaledgauge
