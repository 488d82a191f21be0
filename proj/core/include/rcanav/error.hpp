#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rcanav {

enum class ErrorCode {
  unknown_object,
  unknown_attribute,
  unknown_relation,
  unknown_context,
  invalid_strategy,
  not_closed,
  empty_member,
  syntax,
  dangling_endpoint,
  duplicate_name,
  unknown_field,
  unknown_rcf,
  unknown_session,
  stale_target,
  invalid_request,
};

/// Stable machine-readable token for an error code ("unknown_attribute", ...).
std::string_view to_string(ErrorCode code);

/// Input errors raised by the engine, the parsers and the service layer.
/// Internal invariant violations are reported with std::logic_error instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse error carrying a 1-based line/column (0 when not applicable) or a
/// JSON pointer locating the offending element.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, std::size_t line,
             std::size_t column, std::string pointer = {})
      : Error(code, message),
        line_(line),
        column_(column),
        pointer_(std::move(pointer)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string pointer_;
};

}  // namespace rcanav
