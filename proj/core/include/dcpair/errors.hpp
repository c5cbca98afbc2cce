#pragma once

#include <stdexcept>
#include <string>

namespace dcpair {

// Error taxonomy shared by every module.  The CLI maps kinds to exit codes:
// validation failures exit 3, budget/resource failures exit 2.
enum class ErrorKind {
  Validation,   // bad input: shapes, preconditions, malformed files
  Budget,       // table/state/time budget exceeded, checked-overflow trips
  Numeric,      // quadrature non-convergence and friends
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(what), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

private:
  ErrorKind kind_;
  std::string code_;
};

inline Error validation_error(const std::string& code, const std::string& msg) {
  return Error(ErrorKind::Validation, code, msg);
}
inline Error budget_error(const std::string& code, const std::string& msg) {
  return Error(ErrorKind::Budget, code, msg);
}
inline Error numeric_error(const std::string& code, const std::string& msg) {
  return Error(ErrorKind::Numeric, code, msg);
}

}  // namespace dcpair
