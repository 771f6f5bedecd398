#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gop {

// Failure categories. The service layer maps each one to an HTTP status and a
// machine-readable code; the CLI maps all of them to exit code 2.
enum class ErrorKind {
  kParse,
  kInvalidArgument,
  kUnknownMeasure,
  kUnknownLevel,
  kUnknownAxis,
  kUnknownCollection,
  kUnknownTopic,
  kEmptyAxis,
  kLevelHidden,
  kNotAdjacent,
  kInsufficientData,
  kIo,
};

std::string_view error_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string field = {})
      : std::runtime_error(std::move(message)),
        kind_(kind),
        field_(std::move(field)) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Name of the offending input field, when there is one.
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

}  // namespace gop
