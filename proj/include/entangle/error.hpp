#pragma once

#include <stdexcept>
#include <string>

namespace entangle {

enum class ErrorKind {
  kInvalidArgument,
  kNotFound,
  kConstruction,
  kDegenerate,
  kIo,
  kInternal,
};

// Every failure raised by the library is an Error; the kind is what the C API
// maps onto its status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace entangle
