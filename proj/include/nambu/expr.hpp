#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nambu/error.hpp"
#include "nambu/models.hpp"
#include "nambu/phase_expr.hpp"

namespace nambu {

struct AstNode {
  enum class Kind { Number, Imag, Hbar, Name, Add, Sub, Neg, Mul, Div, Pow, Call };

  Kind kind = Kind::Number;
  Span span;
  Rational number;           // Number
  std::string name;          // Name base or Call function
  std::vector<int> indices;  // Name indices
  int exponent = 0;          // Pow
  std::vector<AstNode> children;
};

/// Parses the bracket expression language:
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := "-" factor | power
///   power  := atom ("^" INT)?
///   atom   := NUMBER | "i" | "hbar" | name | call | "(" expr ")"
///   name   := IDENT ("[" INT ("," INT)* "]")?
///   call   := IDENT "(" expr ("," expr)* ")"
/// Throws SyntaxError carrying the span of the first offending token.
AstNode parse(std::string_view text);

/// S-expression view of an AST, e.g. call(pb, [name(L,[1,2]), name(P,[1])]).
std::string describe(const AstNode& node);

/// Names an expression may refer to: model charges, user extras and the
/// phase-space variables of dimension n.
struct Binding {
  const Model* model = nullptr;
  int n = 0;
  std::map<std::string, PhaseExpr> extra;

  explicit Binding(int dim) : n(dim) {}
  explicit Binding(const Model& m) : model(&m), n(m.n) {}

  /// Adds a user name; throws UsageError when it shadows a function or a
  /// reserved literal.
  void define(const std::string& name, PhaseExpr value);
};

/// Function names understood by evaluate_ast.
const std::vector<std::string>& function_names();

PhaseExpr evaluate_ast(const AstNode& ast, const Binding& binding);
PhaseExpr evaluate_text(std::string_view text, const Binding& binding);

/// Canonical text; parse + evaluate of the result gives back `e`.
std::string print_canonical(const PhaseExpr& e);

}  // namespace nambu
