#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace slantlab {

// Immutable expression tree over real literals, parameters u1..um, pi, the
// binary operators + - * / ^, unary minus and the functions sin, cos, tan,
// exp, log, sinh, cosh, sqrt. Copies share the tree.
class Expr {
 public:
  enum class Kind { number, param, pi, neg, add, sub, mul, div, pow, call };
  enum class Func { sin, cos, tan, exp, log, sinh, cosh, sqrt };

  static Expr number(double value);
  static Expr param(int index);  // 0-based: index 0 is u1
  static Expr pi();
  static Expr neg(Expr operand);
  static Expr binary(Kind op, Expr lhs, Expr rhs);
  static Expr call(Func f, Expr arg);

  Kind kind() const;
  double number_value() const;
  int param_index() const;
  Func func() const;
  const Expr& lhs() const;  // also the operand of neg and call
  const Expr& rhs() const;

  // One more than the largest referenced parameter index (0 if none).
  int param_count() const;

  // Structural equality.
  bool operator==(const Expr& other) const;

  // Minimal-parenthesis rendering; literals use 17 significant digits so
  // print/parse round trips are exact.
  std::string to_string() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

const char* func_name(Expr::Func f);
std::optional<Expr::Func> func_from_name(std::string_view name);

struct ParseOptions {
  // When set, u_k with k > param_count is an unknown identifier.
  std::optional<int> param_count;
  // Position of the first character of src inside an enclosing document.
  int line = 1;
  int column = 1;
};

Expr parse_expr(std::string_view src, const ParseOptions& opts = {});

// Throws ErrorCode::usage when fewer parameters are supplied than referenced,
// and ErrorCode::evaluation naming the first non-finite subexpression.
double eval_expr(const Expr& e, std::span<const double> params);

}  // namespace slantlab
