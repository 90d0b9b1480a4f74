#include "nambu/expr.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "nambu/algebra.hpp"
#include "nambu/brackets.hpp"

namespace nambu {
namespace {

enum class Tok { Int, Ident, LParen, RParen, LBracket, RBracket, Comma, Plus, Minus, Star, Slash, Caret, End };

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

std::string token_label(const Token& t) {
  switch (t.kind) {
    case Tok::End:
      return "end of input";
    case Tok::Int:
      return "number " + t.text;
    case Tok::Ident:
      return "name " + t.text;
    default:
      return "\"" + t.text + "\"";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Span sp{pos_, pos_, line_, col_};
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", sp});
        return out;
      }
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        out.push_back(finish(Tok::Int, start, sp));
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) advance();
        out.push_back(finish(Tok::Ident, start, sp));
      } else {
        Tok kind;
        switch (c) {
          case '(': kind = Tok::LParen; break;
          case ')': kind = Tok::RParen; break;
          case '[': kind = Tok::LBracket; break;
          case ']': kind = Tok::RBracket; break;
          case ',': kind = Tok::Comma; break;
          case '+': kind = Tok::Plus; break;
          case '-': kind = Tok::Minus; break;
          case '*': kind = Tok::Star; break;
          case '/': kind = Tok::Slash; break;
          case '^': kind = Tok::Caret; break;
          default: {
            sp.end = sp.begin + 1;
            std::string shown = static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f
                                    ? "byte " + std::to_string(static_cast<unsigned char>(c))
                                    : std::string("\"") + c + "\"";
            throw SyntaxError(sp, {"an expression"}, shown);
          }
        }
        std::size_t start = pos_;
        advance();
        out.push_back(finish(kind, start, sp));
      }
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  Token finish(Tok kind, std::size_t start, Span sp) {
    sp.end = pos_;
    return {kind, std::string(text_.substr(start, pos_ - start)), sp};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const std::vector<std::string> kAtomStart{"a number", "i", "hbar", "a name", "\"(\"", "\"-\""};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  AstNode parse_all() {
    AstNode e = expr();
    if (peek().kind != Tok::End) {
      throw SyntaxError(peek().span, {"an operator", "end of input"}, token_label(peek()));
    }
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  Token expect(Tok kind, std::vector<std::string> expected) {
    if (peek().kind != kind) throw SyntaxError(peek().span, std::move(expected), token_label(peek()));
    return take();
  }

  static AstNode binary(AstNode::Kind kind, AstNode lhs, AstNode rhs) {
    AstNode n;
    n.kind = kind;
    n.span = {lhs.span.begin, rhs.span.end, lhs.span.line, lhs.span.column};
    n.children.push_back(std::move(lhs));
    n.children.push_back(std::move(rhs));
    return n;
  }

  // Guards the recursion so hostile input cannot exhaust the stack.
  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxDepth) throw SyntaxError(p.peek().span, {"less deeply nested input"}, token_label(p.peek()));
    }
    ~DepthGuard() { --p.depth_; }
  };
  static constexpr int kMaxDepth = 256;

  AstNode expr() {
    DepthGuard guard(*this);
    AstNode lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      auto kind = take().kind == Tok::Plus ? AstNode::Kind::Add : AstNode::Kind::Sub;
      lhs = binary(kind, std::move(lhs), term());
    }
    return lhs;
  }

  AstNode term() {
    AstNode lhs = factor();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      auto kind = take().kind == Tok::Star ? AstNode::Kind::Mul : AstNode::Kind::Div;
      lhs = binary(kind, std::move(lhs), factor());
    }
    return lhs;
  }

  AstNode factor() {
    if (peek().kind == Tok::Minus) {
      DepthGuard guard(*this);
      Token minus = take();
      AstNode inner = factor();
      AstNode n;
      n.kind = AstNode::Kind::Neg;
      n.span = {minus.span.begin, inner.span.end, minus.span.line, minus.span.column};
      n.children.push_back(std::move(inner));
      return n;
    }
    return power();
  }

  AstNode power() {
    AstNode base = atom();
    if (peek().kind != Tok::Caret) return base;
    take();
    Token e = expect(Tok::Int, {"an integer exponent"});
    if (e.text.size() > 4) throw SyntaxError(e.span, {"an exponent below 10000"}, token_label(e));
    AstNode n;
    n.kind = AstNode::Kind::Pow;
    n.exponent = std::stoi(e.text);
    n.span = {base.span.begin, e.span.end, base.span.line, base.span.column};
    n.children.push_back(std::move(base));
    return n;
  }

  int small_int(const Token& t) {
    if (t.text.size() > 6) throw SyntaxError(t.span, {"a small index"}, token_label(t));
    return std::stoi(t.text);
  }

  AstNode atom() {
    const Token& t = peek();
    AstNode n;
    n.span = t.span;
    switch (t.kind) {
      case Tok::Int: {
        take();
        n.kind = AstNode::Kind::Number;
        n.number = Rational::parse(t.text);
        return n;
      }
      case Tok::LParen: {
        Token open = take();
        AstNode inner = expr();
        Token close = expect(Tok::RParen, {"\")\"", "an operator"});
        inner.span = {open.span.begin, close.span.end, open.span.line, open.span.column};
        return inner;
      }
      case Tok::Ident:
        break;
      default:
        throw SyntaxError(t.span, kAtomStart, token_label(t));
    }
    Token id = take();
    if (id.text == "i") {
      n.kind = AstNode::Kind::Imag;
      return n;
    }
    if (id.text == "hbar") {
      n.kind = AstNode::Kind::Hbar;
      return n;
    }
    n.name = id.text;
    if (peek().kind == Tok::LParen) {
      take();
      n.kind = AstNode::Kind::Call;
      n.children.push_back(expr());
      while (peek().kind == Tok::Comma) {
        take();
        n.children.push_back(expr());
      }
      Token close = expect(Tok::RParen, {"\")\"", "\",\""});
      n.span.end = close.span.end;
      return n;
    }
    n.kind = AstNode::Kind::Name;
    if (peek().kind == Tok::LBracket) {
      take();
      n.indices.push_back(small_int(expect(Tok::Int, {"an index"})));
      while (peek().kind == Tok::Comma) {
        take();
        n.indices.push_back(small_int(expect(Tok::Int, {"an index"})));
      }
      Token close = expect(Tok::RBracket, {"\"]\"", "\",\""});
      for (int idx : n.indices) {
        if (idx < 1) throw SyntaxError(close.span, {"positive indices"}, "index 0");
      }
      n.span.end = close.span.end;
    }
    return n;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

// x, y, z, px, py, pz for small dimensions, plus x<k> and p<k>.
std::optional<Var> variable_name(const std::string& name, const std::vector<int>& indices, int n) {
  auto in_range = [&](int k) { return k >= 1 && k <= n; };
  if (!indices.empty()) {
    if (indices.size() != 1 || !in_range(indices[0])) return std::nullopt;
    if (name == "x") return Var::x(indices[0] - 1);
    if (name == "p") return Var::p(indices[0] - 1);
    return std::nullopt;
  }
  static const std::string axes = "xyz";
  if (name.size() == 1 && axes.find(name[0]) != std::string::npos) {
    int k = static_cast<int>(axes.find(name[0])) + 1;
    if (in_range(k)) return Var::x(k - 1);
  }
  if (name.size() == 2 && name[0] == 'p' && axes.find(name[1]) != std::string::npos) {
    int k = static_cast<int>(axes.find(name[1])) + 1;
    if (in_range(k)) return Var::p(k - 1);
  }
  if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'p') &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
      name.size() <= 4) {
    int k = std::stoi(name.substr(1));
    if (in_range(k)) return name[0] == 'x' ? Var::x(k - 1) : Var::p(k - 1);
  }
  return std::nullopt;
}

PhaseExpr resolve_name(const AstNode& node, const Binding& b) {
  const std::string key = charge_key(node.name, node.indices);
  if (auto it = b.extra.find(key); it != b.extra.end()) return it->second;
  if (b.model != nullptr) {
    const Model& m = *b.model;
    if (m.has(key)) return m.charge(key);
    if (key == "Hother" && m.kind == ModelKind::Sphere) return h_other(m);
    if ((node.name == "fab" || node.name == "fabC") && node.indices.size() == 2 && m.kind == ModelKind::ChiralS3) {
      return fab(m, node.indices[0], node.indices[1], node.name == "fab" ? FabVariant::Chiral : FabVariant::Cartesian);
    }
  }
  if (auto v = variable_name(node.name, node.indices, b.n)) return PhaseExpr::variable(b.n, *v);
  if (key == "s") return PhaseExpr::radical_s(b.n);
  throw UnknownName("unknown name " + key + " at " + std::to_string(node.span.line) + ":" +
                    std::to_string(node.span.column));
}

void need_args(const AstNode& node, std::size_t lo, std::size_t hi) {
  std::size_t k = node.children.size();
  if (k < lo || k > hi) {
    std::string want = lo == hi ? std::to_string(lo) : (hi == SIZE_MAX ? "at least " + std::to_string(lo)
                                                                        : std::to_string(lo) + ".." + std::to_string(hi));
    throw ArityError(node.name + " takes " + want + " argument(s), got " + std::to_string(k));
  }
}

int integer_literal(const AstNode& node, const std::string& what) {
  if (node.kind != AstNode::Kind::Number || !node.number.is_integer() || node.number < Rational(0) ||
      node.number > Rational(64)) {
    throw ArityError(what + " must be an integer literal between 0 and 64");
  }
  return std::stoi(node.number.to_string());
}

PhaseExpr eval(const AstNode& node, const Binding& b);

std::vector<PhaseExpr> eval_args(const AstNode& node, const Binding& b) {
  std::vector<PhaseExpr> out;
  for (const auto& c : node.children) out.push_back(eval(c, b));
  return out;
}

PhaseExpr eval_call(const AstNode& node, const Binding& b) {
  const std::string& fn = node.name;
  const PhaseAlgebra alg{b.n};
  if (fn == "diff") {
    need_args(node, 2, 2);
    const AstNode& v = node.children[1];
    std::optional<Var> var;
    if (v.kind == AstNode::Kind::Name) var = variable_name(v.name, v.indices, b.n);
    if (!var) throw ArityError("diff needs a coordinate or momentum as its second argument");
    return eval(node.children[0], b).differentiate(*var);
  }
  if (fn == "divh") {
    need_args(node, 2, 2);
    return eval(node.children[0], b).divide_exact_hbar(integer_literal(node.children[1], "divh power"));
  }
  if (fn == "h0") {
    need_args(node, 1, 1);
    return eval(node.children[0], b).substitute_hbar_zero();
  }
  if (fn == "star") {
    need_args(node, 2, SIZE_MAX);
    auto args = eval_args(node, b);
    PhaseExpr acc = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) acc = star(acc, args[i]);
    return acc;
  }
  if (fn == "pb" || fn == "mb") {
    need_args(node, 2, 2);
    auto args = eval_args(node, b);
    return fn == "pb" ? poisson(args[0], args[1]) : moyal(args[0], args[1]);
  }
  if (fn == "nb") {
    need_args(node, 1, SIZE_MAX);
    auto args = eval_args(node, b);
    return nambu_jacobian(args);
  }
  if (fn == "qnb" || fn == "jordan") {
    need_args(node, 1, 20);
    auto args = eval_args(node, b);
    return fn == "qnb" ? qnb<PhaseAlgebra>(args, alg).value : jordan<PhaseAlgebra>(args, alg).value;
  }
  if (fn == "res4") {
    need_args(node, 4, 4);
    auto a = eval_args(node, b);
    return resolve_qnb4(a[0], a[1], a[2], a[3], alg);
  }
  throw UnknownName("unknown function " + fn + " at " + std::to_string(node.span.line) + ":" +
                    std::to_string(node.span.column));
}

PhaseExpr eval(const AstNode& node, const Binding& b) {
  using K = AstNode::Kind;
  switch (node.kind) {
    case K::Number:
      return PhaseExpr::constant(b.n, GaussScalar(node.number));
    case K::Imag:
      return PhaseExpr::imag(b.n);
    case K::Hbar:
      return PhaseExpr::hbar(b.n);
    case K::Name:
      return resolve_name(node, b);
    case K::Add:
      return eval(node.children[0], b) + eval(node.children[1], b);
    case K::Sub:
      return eval(node.children[0], b) - eval(node.children[1], b);
    case K::Neg:
      return -eval(node.children[0], b);
    case K::Mul:
      return eval(node.children[0], b) * eval(node.children[1], b);
    case K::Div: {
      PhaseExpr den = eval(node.children[1], b);
      if (den.is_zero()) throw DivisionByZero("division by zero");
      return eval(node.children[0], b) * den.inverse();
    }
    case K::Pow:
      return eval(node.children[0], b).pow(node.exponent);
    case K::Call:
      return eval_call(node, b);
  }
  throw Error("unhandled AST node");
}

}  // namespace

AstNode parse(std::string_view text) { return Parser(Lexer(text).run()).parse_all(); }

std::string describe(const AstNode& node) {
  using K = AstNode::Kind;
  auto list = [&](std::size_t from) {
    std::string s = "[";
    for (std::size_t i = from; i < node.children.size(); ++i) {
      if (i > from) s += ", ";
      s += describe(node.children[i]);
    }
    return s + "]";
  };
  switch (node.kind) {
    case K::Number:
      return node.number.to_string();
    case K::Imag:
      return "i";
    case K::Hbar:
      return "hbar";
    case K::Name: {
      if (node.indices.empty()) return "name(" + node.name + ")";
      std::string s = "name(" + node.name + ",[";
      for (std::size_t i = 0; i < node.indices.size(); ++i) s += (i ? "," : "") + std::to_string(node.indices[i]);
      return s + "])";
    }
    case K::Add:
      return "add(" + describe(node.children[0]) + ", " + describe(node.children[1]) + ")";
    case K::Sub:
      return "sub(" + describe(node.children[0]) + ", " + describe(node.children[1]) + ")";
    case K::Mul:
      return "mul(" + describe(node.children[0]) + ", " + describe(node.children[1]) + ")";
    case K::Div:
      return "div(" + describe(node.children[0]) + ", " + describe(node.children[1]) + ")";
    case K::Neg:
      return "neg(" + describe(node.children[0]) + ")";
    case K::Pow:
      return "pow(" + describe(node.children[0]) + ", " + std::to_string(node.exponent) + ")";
    case K::Call:
      return "call(" + node.name + ", " + list(0) + ")";
  }
  return "?";
}

const std::vector<std::string>& function_names() {
  static const std::vector<std::string> names{"star", "pb", "mb", "nb", "qnb", "jordan", "res4", "diff", "divh", "h0"};
  return names;
}

void Binding::define(const std::string& name, PhaseExpr value) {
  const auto& fns = function_names();
  if (std::find(fns.begin(), fns.end(), name) != fns.end() || name == "i" || name == "hbar") {
    throw UsageError("cannot redefine reserved name " + name);
  }
  if (value.dim() != n) throw DimensionError("binding " + name + " has the wrong dimension");
  extra[name] = std::move(value);
}

PhaseExpr evaluate_ast(const AstNode& ast, const Binding& binding) { return eval(ast, binding); }

PhaseExpr evaluate_text(std::string_view text, const Binding& binding) { return eval(parse(text), binding); }

std::string print_canonical(const PhaseExpr& e) { return e.to_string(); }

}  // namespace nambu
