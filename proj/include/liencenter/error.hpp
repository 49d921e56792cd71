#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lc {

enum class ErrorCode {
  Parse,
  InvalidArgument,
  Domain,
  NonConvergence,
  StepUnderflow,
  MaxSteps,
  Escape,
  NoReturn,
  Inconclusive,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::Parse, what + " at byte " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace lc
