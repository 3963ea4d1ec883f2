#pragma once

#include <stdexcept>
#include <string>

namespace geomix {

enum class ErrorKind {
  argument,
  domain,
  singularity,
  integrability,
  consistency,
  bracket,
  range,
  overflow,
  precision,
  degenerate,
  parse,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace geomix
