#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tvs {

enum class ErrorKind {
  kInvalidParameter,
  kInvalidInput,
  kShiftOutOfRange,
  kDegenerateInput,
  kConfig,
  kBudgetExceeded,
  kParse,
  kIo,
};

std::string_view to_string(ErrorKind kind) noexcept;

// All library failures are reported through this one exception type; callers
// that care dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tvs
