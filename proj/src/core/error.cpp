#include "difftan/error.hpp"

#include <sstream>

namespace difftan {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::MixedDiscriminants: return "MixedDiscriminants";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::SubNotContained: return "SubNotContained";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::UndecidableWithoutCertificate: return "UndecidableWithoutCertificate";
    case ErrorCode::PointNotInSpace: return "PointNotInSpace";
    case ErrorCode::NotAMember: return "NotAMember";
    case ErrorCode::UnsupportedMap: return "UnsupportedMap";
    case ErrorCode::OutsideGeneratingFamily: return "OutsideGeneratingFamily";
    case ErrorCode::StabilizationFailure: return "StabilizationFailure";
    case ErrorCode::MalformedCandidate: return "MalformedCandidate";
    case ErrorCode::NotMembers: return "NotMembers";
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

std::string parse_message(std::size_t line, std::size_t column,
                          const std::vector<std::string>& expected,
                          const std::string& found) {
  std::ostringstream os;
  os << line << ':' << column << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) os << (i + 1 == expected.size() ? " or " : ", ");
    os << expected[i];
  }
  os << ", found " << (found.empty() ? "end of input" : "'" + found + "'");
  return os.str();
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::size_t line, std::size_t column,
                       std::vector<std::string> expected, const std::string& found)
    : Error(ErrorCode::ParseError, parse_message(line, column, expected, found)),
      offset_(offset),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(found) {}

}  // namespace difftan
