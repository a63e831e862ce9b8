#include "slantlab/error.hpp"

namespace slantlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::structural: return "structural";
    case ErrorCode::not_spacelike: return "not-spacelike";
    case ErrorCode::degenerate_frame: return "degenerate-frame";
    case ErrorCode::degenerate_metric: return "degenerate-metric";
    case ErrorCode::degenerate_immersion: return "degenerate-immersion";
    case ErrorCode::xi_not_tangent: return "xi-not-tangent";
    case ErrorCode::xi_direction: return "xi-direction";
    case ErrorCode::null_vector: return "null-vector";
    case ErrorCode::contract: return "contract";
    case ErrorCode::evaluation: return "evaluation";
    case ErrorCode::domain: return "domain";
    case ErrorCode::parse: return "parse";
    case ErrorCode::usage: return "usage";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

namespace {

std::string located(const std::string& message, int line, int column, const std::string& token) {
  std::string out = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
  if (!token.empty()) out += " (at '" + token + "')";
  return out;
}

}  // namespace

ParseError::ParseError(ParseIssue issue, const std::string& message, int line, int column, std::string token)
    : Error(ErrorCode::parse, located(message, line, column, token)),
      issue_(issue),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

}  // namespace slantlab
