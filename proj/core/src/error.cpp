#include "tvs/error.hpp"

namespace tvs {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidParameter: return "invalid parameter";
    case ErrorKind::kInvalidInput: return "invalid input";
    case ErrorKind::kShiftOutOfRange: return "shift out of range";
    case ErrorKind::kDegenerateInput: return "degenerate input";
    case ErrorKind::kConfig: return "configuration error";
    case ErrorKind::kBudgetExceeded: return "budget exceeded";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "unknown error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace tvs
