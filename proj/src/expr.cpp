#include "slantlab/expr.hpp"

#include "slantlab/error.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <vector>

namespace slantlab {

struct Expr::Node {
  Kind kind;
  double value = 0.0;
  int index = 0;
  Func func = Func::sin;
  std::optional<Expr> a;
  std::optional<Expr> b;
};

Expr Expr::number(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::number;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::param(int index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::param;
  n->index = index;
  return Expr(std::move(n));
}

Expr Expr::pi() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::pi;
  return Expr(std::move(n));
}

Expr Expr::neg(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::neg;
  n->a = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::binary(Kind op, Expr lhs, Expr rhs) {
  if (op != Kind::add && op != Kind::sub && op != Kind::mul && op != Kind::div && op != Kind::pow)
    throw Error(ErrorCode::structural, "Expr::binary: not a binary operator");
  auto n = std::make_shared<Node>();
  n->kind = op;
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::call(Func f, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::call;
  n->func = f;
  n->a = std::move(arg);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::number_value() const { return node_->value; }
int Expr::param_index() const { return node_->index; }
Expr::Func Expr::func() const { return node_->func; }
const Expr& Expr::lhs() const { return *node_->a; }
const Expr& Expr::rhs() const { return *node_->b; }

int Expr::param_count() const {
  switch (kind()) {
    case Kind::number:
    case Kind::pi: return 0;
    case Kind::param: return param_index() + 1;
    case Kind::neg:
    case Kind::call: return lhs().param_count();
    default: return std::max(lhs().param_count(), rhs().param_count());
  }
}

bool Expr::operator==(const Expr& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::number: return number_value() == o.number_value();
    case Kind::param: return param_index() == o.param_index();
    case Kind::pi: return true;
    case Kind::neg: return lhs() == o.lhs();
    case Kind::call: return func() == o.func() && lhs() == o.lhs();
    default: return lhs() == o.lhs() && rhs() == o.rhs();
  }
}

const char* func_name(Expr::Func f) {
  switch (f) {
    case Expr::Func::sin: return "sin";
    case Expr::Func::cos: return "cos";
    case Expr::Func::tan: return "tan";
    case Expr::Func::exp: return "exp";
    case Expr::Func::log: return "log";
    case Expr::Func::sinh: return "sinh";
    case Expr::Func::cosh: return "cosh";
    case Expr::Func::sqrt: return "sqrt";
  }
  return "?";
}

std::optional<Expr::Func> func_from_name(std::string_view name) {
  using F = Expr::Func;
  for (F f : {F::sin, F::cos, F::tan, F::exp, F::log, F::sinh, F::cosh, F::sqrt})
    if (name == func_name(f)) return f;
  return std::nullopt;
}

namespace {

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::add:
    case Expr::Kind::sub: return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div: return 2;
    case Expr::Kind::neg: return 3;
    case Expr::Kind::pow: return 4;
    default: return 5;
  }
}

char op_char(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::add: return '+';
    case Expr::Kind::sub: return '-';
    case Expr::Kind::mul: return '*';
    case Expr::Kind::div: return '/';
    default: return '^';
  }
}

void print(const Expr& e, std::string& out) {
  auto wrapped = [&out](const Expr& child, bool parens) {
    if (parens) out += '(';
    print(child, out);
    if (parens) out += ')';
  };
  switch (e.kind()) {
    case Expr::Kind::number: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", e.number_value());
      out += buf;
      return;
    }
    case Expr::Kind::param: out += "u" + std::to_string(e.param_index() + 1); return;
    case Expr::Kind::pi: out += "pi"; return;
    case Expr::Kind::call:
      out += func_name(e.func());
      wrapped(e.lhs(), true);
      return;
    case Expr::Kind::neg:
      out += '-';
      wrapped(e.lhs(), precedence(e.lhs().kind()) < 3);
      return;
    case Expr::Kind::pow:
      // Right-associative; the exponent is parsed as a unary expression.
      wrapped(e.lhs(), precedence(e.lhs().kind()) <= 4);
      out += '^';
      wrapped(e.rhs(), precedence(e.rhs().kind()) < 3);
      return;
    default: {
      const int p = precedence(e.kind());
      wrapped(e.lhs(), precedence(e.lhs().kind()) < p);
      out += op_char(e.kind());
      wrapped(e.rhs(), precedence(e.rhs().kind()) <= p);
      return;
    }
  }
}

// --- lexer / recursive-descent parser ---

enum class Tok { number, ident, op, lparen, rparen, comma, end };

struct Token {
  Tok type;
  std::string text;
  double value = 0.0;
  int line;
  int column;
};

std::vector<Token> lex(std::string_view src, int line, int column) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int tl = line, tc = column;
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      std::string text(src.substr(i, j - i));
      const double v = std::strtod(text.c_str(), nullptr);
      if (!std::isfinite(v)) throw ParseError(ParseIssue::invalid_value, "numeric literal out of range", tl, tc, text);
      out.push_back({Tok::number, text, v, tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), 0.0, tl, tc});
      advance(j - i);
      continue;
    }
    Tok type;
    switch (c) {
      case '+':
      case '-':
      case '*':
      case '/':
      case '^': type = Tok::op; break;
      case '(': type = Tok::lparen; break;
      case ')': type = Tok::rparen; break;
      case ',': type = Tok::comma; break;
      default: throw ParseError(ParseIssue::syntax, "unexpected character", tl, tc, std::string(1, c));
    }
    out.push_back({type, std::string(1, c), 0.0, tl, tc});
    advance(1);
  }
  out.push_back({Tok::end, "", 0.0, line, column});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::optional<int> param_count)
      : toks_(std::move(toks)), param_count_(param_count) {}

  Expr parse() {
    Expr e = expression();
    if (peek().type != Tok::end) fail_unexpected(peek());
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool at_op(char c) const { return peek().type == Tok::op && peek().text[0] == c; }

  [[noreturn]] void fail_unexpected(const Token& t) const {
    if (t.type == Tok::end) throw ParseError(ParseIssue::syntax, "unexpected end of expression", t.line, t.column, "");
    throw ParseError(ParseIssue::syntax, "unexpected token", t.line, t.column, t.text);
  }

  Expr expression() {
    Expr e = term();
    while (at_op('+') || at_op('-')) {
      const char op = take().text[0];
      e = Expr::binary(op == '+' ? Expr::Kind::add : Expr::Kind::sub, e, term());
    }
    return e;
  }

  Expr term() {
    Expr e = unary();
    while (at_op('*') || at_op('/')) {
      const char op = take().text[0];
      e = Expr::binary(op == '*' ? Expr::Kind::mul : Expr::Kind::div, e, unary());
    }
    return e;
  }

  Expr unary() {
    if (at_op('-')) {
      take();
      return Expr::neg(unary());
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (at_op('^')) {
      take();
      return Expr::binary(Expr::Kind::pow, base, unary());
    }
    return base;
  }

  Expr primary() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::number: take(); return Expr::number(t.value);
      case Tok::lparen: {
        take();
        Expr e = expression();
        if (peek().type != Tok::rparen) fail_unexpected(peek());
        take();
        return e;
      }
      case Tok::ident: return identifier();
      default: fail_unexpected(t);
    }
  }

  Expr identifier() {
    const Token t = take();
    if (auto f = func_from_name(t.text)) {
      if (peek().type != Tok::lparen)
        throw ParseError(ParseIssue::arity, "function '" + t.text + "' takes 1 argument", t.line, t.column, t.text);
      take();
      if (peek().type == Tok::rparen)
        throw ParseError(ParseIssue::arity, "function '" + t.text + "' takes 1 argument", t.line, t.column, t.text);
      Expr arg = expression();
      if (peek().type == Tok::comma)
        throw ParseError(ParseIssue::arity, "function '" + t.text + "' takes 1 argument", peek().line, peek().column,
                         peek().text);
      if (peek().type != Tok::rparen) fail_unexpected(peek());
      take();
      return Expr::call(*f, arg);
    }
    Expr leaf = Expr::pi();
    if (t.text == "pi") {
      leaf = Expr::pi();
    } else if (auto idx = param_number(t.text)) {
      if (param_count_ && *idx > *param_count_)
        throw ParseError(ParseIssue::unknown_identifier, "undeclared parameter", t.line, t.column, t.text);
      leaf = Expr::param(*idx - 1);
    } else {
      throw ParseError(ParseIssue::unknown_identifier, "unknown identifier", t.line, t.column, t.text);
    }
    if (peek().type == Tok::lparen)
      throw ParseError(ParseIssue::arity, "'" + t.text + "' is not a function", peek().line, peek().column, "(");
    return leaf;
  }

  static std::optional<int> param_number(const std::string& s) {
    if (s.size() < 2 || s[0] != 'u' || s[1] == '0') return std::nullopt;
    int v = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
      v = v * 10 + (s[i] - '0');
      if (v > 1000000) return std::nullopt;
    }
    return v;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::optional<int> param_count_;
};

double eval_node(const Expr& e, std::span<const double> p) {
  double v = 0.0;
  switch (e.kind()) {
    case Expr::Kind::number: return e.number_value();
    case Expr::Kind::param: return p[std::size_t(e.param_index())];
    case Expr::Kind::pi: return std::numbers::pi;
    case Expr::Kind::neg: return -eval_node(e.lhs(), p);
    case Expr::Kind::add: v = eval_node(e.lhs(), p) + eval_node(e.rhs(), p); break;
    case Expr::Kind::sub: v = eval_node(e.lhs(), p) - eval_node(e.rhs(), p); break;
    case Expr::Kind::mul: v = eval_node(e.lhs(), p) * eval_node(e.rhs(), p); break;
    case Expr::Kind::div: {
      const double num = eval_node(e.lhs(), p);
      const double den = eval_node(e.rhs(), p);
      if (den == 0.0) throw Error(ErrorCode::evaluation, "division by zero in '" + e.to_string() + "'");
      v = num / den;
      break;
    }
    case Expr::Kind::pow: v = std::pow(eval_node(e.lhs(), p), eval_node(e.rhs(), p)); break;
    case Expr::Kind::call: {
      const double x = eval_node(e.lhs(), p);
      switch (e.func()) {
        case Expr::Func::sin: v = std::sin(x); break;
        case Expr::Func::cos: v = std::cos(x); break;
        case Expr::Func::tan: v = std::tan(x); break;
        case Expr::Func::exp: v = std::exp(x); break;
        case Expr::Func::log:
          if (!(x > 0.0)) throw Error(ErrorCode::evaluation, "log of a non-positive value in '" + e.to_string() + "'");
          v = std::log(x);
          break;
        case Expr::Func::sinh: v = std::sinh(x); break;
        case Expr::Func::cosh: v = std::cosh(x); break;
        case Expr::Func::sqrt:
          if (x < 0.0) throw Error(ErrorCode::evaluation, "sqrt of a negative value in '" + e.to_string() + "'");
          v = std::sqrt(x);
          break;
      }
      break;
    }
  }
  if (!std::isfinite(v)) throw Error(ErrorCode::evaluation, "non-finite value in '" + e.to_string() + "'");
  return v;
}

}  // namespace

std::string Expr::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

Expr parse_expr(std::string_view src, const ParseOptions& opts) {
  return Parser(lex(src, opts.line, opts.column), opts.param_count).parse();
}

double eval_expr(const Expr& e, std::span<const double> params) {
  if (std::size_t(e.param_count()) > params.size())
    throw Error(ErrorCode::usage, "expression references u" + std::to_string(e.param_count()) + " but only " +
                                      std::to_string(params.size()) + " parameters were supplied");
  return eval_node(e, params);
}

}  // namespace slantlab
