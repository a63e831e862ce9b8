#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace slantlab {

enum class ErrorCode {
  structural,          // dimension mismatch, malformed input data
  not_spacelike,
  degenerate_frame,
  degenerate_metric,
  degenerate_immersion,
  xi_not_tangent,
  xi_direction,
  null_vector,
  contract,            // precondition of an operation violated
  evaluation,          // a function could not be evaluated (non-finite, outside its domain)
  domain,              // finite-difference stencil leaves the parameter domain
  parse,
  usage,
  io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class ParseIssue { syntax, unknown_identifier, arity, invalid_value };

// Errors from the expression and scenario parsers. Line and column are
// 1-based.
class ParseError : public Error {
 public:
  ParseError(ParseIssue issue, const std::string& message, int line, int column, std::string token);

  ParseIssue issue() const noexcept { return issue_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& token() const noexcept { return token_; }

 private:
  ParseIssue issue_;
  int line_;
  int column_;
  std::string token_;
};

// Raised when a finite-difference evaluation or an explicit sample point sits
// too close to the boundary of the parameter domain.
class DomainError : public Error {
 public:
  DomainError(const std::string& message, std::vector<double> point)
      : Error(ErrorCode::domain, message), point_(std::move(point)) {}

  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

}  // namespace slantlab
