#pragma once

// Arithmetic expressions for right-hand sides and exact solutions given as text.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
//   number  := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
//
// '^' binds tighter than unary minus, so -2^2 == -4. There is no implicit
// multiplication. Functions: exp, ln, sin, cos, pow(x, y), gamma(x),
// ml(alpha, beta, z).

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tfode/specfun.hpp"

namespace tfode::expr {

class ParseError : public std::runtime_error {
public:
  enum class Kind { Syntax, UnknownIdentifier };

  ParseError(Kind kind, std::size_t offset, const std::string& message)
      : std::runtime_error("at offset " + std::to_string(offset) + ": " + message),
        kind_(kind), offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

private:
  Kind kind_;
  std::size_t offset_;
};

class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Op { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Function { Exp, Ln, Sin, Cos, Pow, Gamma, Ml };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::Number;
  double value = 0.0;         // Number
  std::string name;           // Variable
  std::ptrdiff_t slot = -1;   // Variable index into the declared names, if resolved
  Function fn = Function::Exp; // Call
  std::vector<NodePtr> args;
};

inline const std::vector<std::string>& default_variables() {
  static const std::vector<std::string> names{"t", "u", "alpha", "lambda"};
  return names;
}

namespace detail {

struct FunctionInfo {
  std::string_view name;
  Function fn;
  std::size_t arity;
};

inline constexpr FunctionInfo functions[] = {
    {"exp", Function::Exp, 1}, {"ln", Function::Ln, 1},       {"sin", Function::Sin, 1},
    {"cos", Function::Cos, 1}, {"pow", Function::Pow, 2},     {"gamma", Function::Gamma, 1},
    {"ml", Function::Ml, 3},
};

inline std::string_view function_name(Function fn) {
  for (const auto& f : functions)
    if (f.fn == fn)
      return f.name;
  return "?";
}

inline NodePtr make(Op op, std::vector<NodePtr> args) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args = std::move(args);
  return n;
}

template <class Lookup>
double evaluate(const Node& n, const Lookup& lookup) {
  switch (n.op) {
  case Op::Number:
    return n.value;
  case Op::Variable:
    return lookup(n);
  case Op::Neg:
    return -evaluate(*n.args[0], lookup);
  case Op::Add:
    return evaluate(*n.args[0], lookup) + evaluate(*n.args[1], lookup);
  case Op::Sub:
    return evaluate(*n.args[0], lookup) - evaluate(*n.args[1], lookup);
  case Op::Mul:
    return evaluate(*n.args[0], lookup) * evaluate(*n.args[1], lookup);
  case Op::Div:
    return evaluate(*n.args[0], lookup) / evaluate(*n.args[1], lookup);
  case Op::Pow:
    return std::pow(evaluate(*n.args[0], lookup), evaluate(*n.args[1], lookup));
  case Op::Call: {
    const double x = evaluate(*n.args[0], lookup);
    switch (n.fn) {
    case Function::Exp:
      return std::exp(x);
    case Function::Ln:
      return std::log(x);
    case Function::Sin:
      return std::sin(x);
    case Function::Cos:
      return std::cos(x);
    case Function::Pow:
      return std::pow(x, evaluate(*n.args[1], lookup));
    case Function::Gamma:
      return tfode::gamma(x);
    case Function::Ml:
      return tfode::mittag_leffler({x, evaluate(*n.args[1], lookup)}, evaluate(*n.args[2], lookup));
    }
  }
  }
  throw EvalError("corrupt expression tree");
}

inline void format(const Node& n, std::string& out) {
  static constexpr std::string_view op_names[] = {"", "", "Neg", "Add", "Sub", "Mul", "Div", "Pow", ""};
  switch (n.op) {
  case Op::Number: {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, n.value);
    out.append(buf, end);
    return;
  }
  case Op::Variable:
    out += n.name;
    return;
  case Op::Call:
    out += function_name(n.fn);
    break;
  default:
    out += op_names[static_cast<int>(n.op)];
  }
  out += '(';
  for (std::size_t i = 0; i < n.args.size(); ++i) {
    if (i)
      out += ',';
    format(*n.args[i], out);
  }
  out += ')';
}

class Parser {
public:
  Parser(std::string_view src, const std::vector<std::string>& names) : src_(src), names_(names) {}

  NodePtr parse() {
    skip_space();
    if (pos_ == src_.size())
      fail("empty expression");
    NodePtr e = parse_expr();
    skip_space();
    if (pos_ != src_.size())
      fail("expected operator or end of input");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseError::Kind::Syntax, pos_, msg);
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+'))
        lhs = make(Op::Add, {lhs, parse_term()});
      else if (accept('-'))
        lhs = make(Op::Sub, {lhs, parse_term()});
      else
        return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = make(Op::Mul, {lhs, parse_unary()});
      else if (accept('/'))
        lhs = make(Op::Div, {lhs, parse_unary()});
      else
        return lhs;
    }
  }

  NodePtr parse_unary() {
    if (accept('-'))
      return make(Op::Neg, {parse_unary()});
    if (accept('+'))
      return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^'))
      return make(Op::Pow, {base, parse_unary()});
    return base;
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ == src_.size())
      fail("expected a number, name or '('");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_name();
    if (accept('(')) {
      NodePtr e = parse_expr();
      if (!accept(')'))
        fail("expected ')'");
      return e;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
      return pos_ > from;
    };
    bool any = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      any = digits() || any;
    }
    if (!any) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
        ++pos_;
      if (!digits())
        fail("malformed exponent");
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc() || ptr != src_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    auto n = std::make_shared<Node>();
    n->op = Op::Number;
    n->value = v;
    return n;
  }

  NodePtr parse_name() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string name(src_.substr(start, pos_ - start));

    skip_space();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      const FunctionInfo* info = nullptr;
      for (const auto& f : functions)
        if (f.name == name)
          info = &f;
      if (!info)
        throw ParseError(ParseError::Kind::UnknownIdentifier, start, "unknown function '" + name + "'");
      ++pos_;
      std::vector<NodePtr> args{parse_expr()};
      while (accept(','))
        args.push_back(parse_expr());
      if (!accept(')'))
        fail("expected ',' or ')'");
      if (args.size() != info->arity)
        throw ParseError(ParseError::Kind::Syntax, start,
                         "function '" + name + "' takes " + std::to_string(info->arity) +
                             " argument(s), got " + std::to_string(args.size()));
      auto n = make(Op::Call, std::move(args));
      std::const_pointer_cast<Node>(n)->fn = info->fn;
      return n;
    }

    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
      throw ParseError(ParseError::Kind::UnknownIdentifier, start, "unknown identifier '" + name + "'");
    auto n = std::make_shared<Node>();
    n->op = Op::Variable;
    n->name = name;
    n->slot = it - names_.begin();
    return n;
  }

  std::string_view src_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Immutable expression tree. Cheap to copy; safe to evaluate concurrently.
class Expr {
public:
  Expr() = default;
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  const Node& root() const { return *root_; }
  explicit operator bool() const noexcept { return static_cast<bool>(root_); }

  /// Evaluate with variables looked up by name.
  double eval(const std::map<std::string, double>& bindings) const {
    return detail::evaluate(*root_, [&](const Node& v) {
      const auto it = bindings.find(v.name);
      if (it == bindings.end())
        throw EvalError("unbound variable '" + v.name + "'");
      return it->second;
    });
  }

  /// Evaluate with variables taken by position in the names the expression was
  /// parsed against.
  double eval(std::span<const double> slots) const {
    return detail::evaluate(*root_, [&](const Node& v) {
      if (v.slot < 0 || static_cast<std::size_t>(v.slot) >= slots.size())
        throw EvalError("unbound variable '" + v.name + "'");
      return slots[static_cast<std::size_t>(v.slot)];
    });
  }

  /// Prefix form such as Add(Pow(t,2),u).
  std::string to_string() const {
    std::string out;
    detail::format(*root_, out);
    return out;
  }

private:
  NodePtr root_;
};

inline Expr parse(std::string_view src, const std::vector<std::string>& names = default_variables()) {
  return Expr(detail::Parser(src, names).parse());
}

// Hand construction of trees.

inline Expr number(double v) {
  auto n = std::make_shared<Node>();
  n->value = v;
  return Expr(n);
}

inline Expr variable(std::string name, std::ptrdiff_t slot = -1) {
  auto n = std::make_shared<Node>();
  n->op = Op::Variable;
  n->name = std::move(name);
  n->slot = slot;
  return Expr(n);
}

inline Expr call(Function fn, std::vector<Expr> args) {
  std::vector<NodePtr> nodes;
  for (const auto& a : args)
    nodes.push_back(std::make_shared<Node>(a.root()));
  auto n = std::make_shared<Node>();
  n->op = Op::Call;
  n->fn = fn;
  n->args = std::move(nodes);
  return Expr(n);
}

namespace detail {
inline Expr binary(Op op, const Expr& l, const Expr& r) {
  return Expr(make(op, {std::make_shared<Node>(l.root()), std::make_shared<Node>(r.root())}));
}
} // namespace detail

inline Expr operator+(const Expr& l, const Expr& r) { return detail::binary(Op::Add, l, r); }
inline Expr operator-(const Expr& l, const Expr& r) { return detail::binary(Op::Sub, l, r); }
inline Expr operator*(const Expr& l, const Expr& r) { return detail::binary(Op::Mul, l, r); }
inline Expr operator/(const Expr& l, const Expr& r) { return detail::binary(Op::Div, l, r); }
inline Expr operator-(const Expr& e) { return Expr(detail::make(Op::Neg, {std::make_shared<Node>(e.root())})); }
inline Expr pow(const Expr& l, const Expr& r) { return detail::binary(Op::Pow, l, r); }

} // namespace tfode::expr
