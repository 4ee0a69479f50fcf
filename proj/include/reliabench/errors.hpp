#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reliabench {

enum class ErrorKind {
  Domain,        // argument outside its mathematical domain
  Validation,    // malformed input object (distribution, document, program)
  Shape,         // sample spaces or domains do not line up
  Context,       // problem context cannot support the request
  Degenerate,    // instance is well formed but trivial in a forbidden way
  Precondition,  // a mathematical precondition (e.g. MLR) does not hold
  Budget,        // enumeration or sample-space limit exceeded
  Unsupported,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace reliabench
