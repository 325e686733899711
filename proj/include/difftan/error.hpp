#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace difftan {

enum class ErrorCode {
  DivisionByZero,
  MixedDiscriminants,
  ShapeMismatch,
  NonzeroConstantTerm,
  SubNotContained,
  InvalidParameter,
  UndecidableWithoutCertificate,
  PointNotInSpace,
  NotAMember,
  UnsupportedMap,
  OutsideGeneratingFamily,
  StabilizationFailure,
  MalformedCandidate,
  NotMembers,
  UnsupportedGroup,
  UnsupportedFamily,
  ParseError,
  Internal,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// line and column are 1-based
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::size_t line, std::size_t column,
             std::vector<std::string> expected, const std::string& found);

  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::size_t offset_, line_, column_;
  std::vector<std::string> expected_;
  std::string found_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace difftan
