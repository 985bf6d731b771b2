#include "mathgen/expression.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "mathgen/errors.hpp"

namespace mathgen {

struct Expression::Node {
  ExprKind kind = ExprKind::Number;
  Rational value;
  bool decimal = false;
  char name = 0;
  Expression a;
  Expression b;
};

Expression Expression::node(ExprKind kind, Expression a, Expression b) {
  if (a.empty()) throw InvalidInput("missing operand");
  bool unary = kind == ExprKind::Neg || kind == ExprKind::Sqrt;
  if (!unary && b.empty()) throw InvalidInput("missing operand");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return Expression(std::move(n));
}

Expression Expression::number(Rational value, bool decimal) {
  if (!decimal && !value.is_integer()) throw InvalidInput("non-integer literal must be decimal: " + value.to_string());
  if (decimal && !value.is_terminating()) throw InvalidInput("decimal literal must terminate: " + value.to_string());
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Number;
  n->decimal = decimal && !value.is_integer();
  n->value = std::move(value);
  return Expression(std::move(n));
}

Expression Expression::rational(const Rational& r) {
  if (r.is_integer()) return number(r);
  return div(number(Rational(r.num())), number(Rational(r.den())));
}

Expression Expression::decimal(const ExactDecimal& d) { return number(d.to_rational(), true); }

Expression Expression::variable(char name) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Variable;
  n->name = name;
  return Expression(std::move(n));
}

Expression Expression::call(char function, Expression argument) {
  if (argument.empty()) throw InvalidInput("missing call argument");
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Call;
  n->name = function;
  n->a = std::move(argument);
  return Expression(std::move(n));
}

Expression Expression::neg(Expression e) { return node(ExprKind::Neg, std::move(e), {}); }
Expression Expression::add(Expression a, Expression b) { return node(ExprKind::Add, std::move(a), std::move(b)); }
Expression Expression::sub(Expression a, Expression b) { return node(ExprKind::Sub, std::move(a), std::move(b)); }
Expression Expression::mul(Expression a, Expression b) { return node(ExprKind::Mul, std::move(a), std::move(b)); }
Expression Expression::div(Expression a, Expression b) { return node(ExprKind::Div, std::move(a), std::move(b)); }
Expression Expression::pow(Expression a, Expression b) { return node(ExprKind::Pow, std::move(a), std::move(b)); }
Expression Expression::sqrt(Expression e) { return node(ExprKind::Sqrt, std::move(e), {}); }

ExprKind Expression::kind() const { return node_->kind; }
const Rational& Expression::value() const { return node_->value; }
bool Expression::is_decimal_literal() const { return node_->kind == ExprKind::Number && node_->decimal; }
char Expression::name() const { return node_->name; }
const Expression& Expression::lhs() const { return node_->a; }
const Expression& Expression::rhs() const { return node_->b; }

bool Expression::contains_decimal() const {
  if (empty()) return false;
  if (kind() == ExprKind::Number) return node_->decimal;
  return node_->a.contains_decimal() || node_->b.contains_decimal();
}

namespace {

void collect(const Expression& e, bool want_calls, std::set<char>& out) {
  if (e.empty()) return;
  if (e.kind() == ExprKind::Variable && !want_calls) out.insert(e.name());
  if (e.kind() == ExprKind::Call && want_calls) out.insert(e.name());
  if (e.kind() == ExprKind::Number || e.kind() == ExprKind::Variable) return;
  collect(e.lhs(), want_calls, out);
  if (e.kind() != ExprKind::Neg && e.kind() != ExprKind::Sqrt && e.kind() != ExprKind::Call) {
    collect(e.rhs(), want_calls, out);
  }
}

}  // namespace

std::vector<char> Expression::variables() const {
  std::set<char> s;
  collect(*this, false, s);
  return {s.begin(), s.end()};
}

std::vector<char> Expression::functions() const {
  std::set<char> s;
  collect(*this, true, s);
  return {s.begin(), s.end()};
}

bool operator==(const Expression& a, const Expression& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.value == y.value && x.decimal == y.decimal && x.name == y.name && x.a == y.a &&
         x.b == y.b;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

int precedence(const Expression& e) {
  switch (e.kind()) {
    case ExprKind::Number:
      return e.value().sign() < 0 ? 3 : 5;
    case ExprKind::Variable:
    case ExprKind::Call:
    case ExprKind::Sqrt:
      return 5;
    case ExprKind::Pow:
      return 4;
    case ExprKind::Neg:
      return 3;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
  }
  return 0;
}

std::string render_number(const Expression& e) {
  if (e.is_decimal_literal()) return ExactDecimal::from_rational(e.value())->to_string();
  return e.value().num().to_string();
}

void render_into(const Expression& e, const RenderStyle& style, std::string& out);

void render_wrapped(const Expression& e, bool wrap, const RenderStyle& style, std::string& out) {
  if (wrap) out += '(';
  render_into(e, style, out);
  if (wrap) out += ')';
}

void render_into(const Expression& e, const RenderStyle& style, std::string& out) {
  switch (e.kind()) {
    case ExprKind::Number:
      out += render_number(e);
      return;
    case ExprKind::Variable:
      out += e.name();
      return;
    case ExprKind::Call:
      out += e.name();
      render_wrapped(e.lhs(), true, style, out);
      return;
    case ExprKind::Sqrt:
      out += "sqrt";
      render_wrapped(e.lhs(), true, style, out);
      return;
    case ExprKind::Neg:
      out += '-';
      render_wrapped(e.lhs(), precedence(e.lhs()) < 3, style, out);
      return;
    case ExprKind::Pow:
      render_wrapped(e.lhs(), precedence(e.lhs()) < 5, style, out);
      out += "**";
      render_wrapped(e.rhs(), precedence(e.rhs()) < 5, style, out);
      return;
    case ExprKind::Add:
    case ExprKind::Sub: {
      render_wrapped(e.lhs(), precedence(e.lhs()) < 1, style, out);
      out += e.kind() == ExprKind::Add ? " + " : " - ";
      render_wrapped(e.rhs(), precedence(e.rhs()) <= 1, style, out);
      return;
    }
    case ExprKind::Mul:
    case ExprKind::Div: {
      render_wrapped(e.lhs(), precedence(e.lhs()) < 2, style, out);
      char op = e.kind() == ExprKind::Mul ? '*' : '/';
      if (style.spaced_products) {
        out += ' ';
        out += op;
        out += ' ';
      } else {
        out += op;
      }
      render_wrapped(e.rhs(), precedence(e.rhs()) <= 2, style, out);
      return;
    }
  }
}

}  // namespace

std::string Expression::render(RenderStyle style) const {
  if (empty()) return "";
  std::string out;
  render_into(*this, style, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Number, Name, Sqrt, Plus, Minus, Star, Slash, Power, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '.') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) throw ParseError("expected digit after '.'", i);
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      out.push_back({Tok::Number, start, std::string(s.substr(start, i - start))});
      continue;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::islower(static_cast<unsigned char>(s[i]))) ++i;
      std::string word(s.substr(start, i - start));
      if (word == "sqrt") {
        out.push_back({Tok::Sqrt, start, word});
      } else if (word.size() == 1) {
        out.push_back({Tok::Name, start, word});
      } else {
        throw ParseError("unknown identifier '" + word + "'", start);
      }
      continue;
    }
    switch (c) {
      case '+': out.push_back({Tok::Plus, i, "+"}); break;
      case '-': out.push_back({Tok::Minus, i, "-"}); break;
      case '/': out.push_back({Tok::Slash, i, "/"}); break;
      case '(': out.push_back({Tok::LParen, i, "("}); break;
      case ')': out.push_back({Tok::RParen, i, ")"}); break;
      case '*':
        if (i + 1 < s.size() && s[i + 1] == '*') {
          out.push_back({Tok::Power, i, "**"});
          ++i;
        } else {
          out.push_back({Tok::Star, i, "*"});
        }
        break;
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "'", i);
    }
    ++i;
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  Expression parse_all() {
    Expression e = expr();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return e;
  }

 private:
  struct Parsed {
    Expression e;
    bool bare_number = false;
  };

  const Token& peek() const { return tokens_[i_]; }
  const Token& next() { return tokens_[i_++]; }
  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      if (peek().kind == Tok::End) throw ParseError(std::string("expected ") + what + " but input ended", peek().pos);
      throw ParseError(std::string("expected ") + what, peek().pos);
    }
    ++i_;
  }

  Expression expr() {
    Expression e = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool plus = next().kind == Tok::Plus;
      Expression r = term();
      e = plus ? Expression::add(e, r) : Expression::sub(e, r);
    }
    return e;
  }

  Expression term() {
    Expression e = unary().e;
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      bool star = next().kind == Tok::Star;
      Expression r = unary().e;
      e = star ? Expression::mul(e, r) : Expression::div(e, r);
    }
    return e;
  }

  Parsed unary() {
    if (peek().kind == Tok::Minus) {
      next();
      Parsed operand = unary();
      if (operand.bare_number && operand.e.value().sign() >= 0) {
        return {Expression::number(-operand.e.value(), operand.e.is_decimal_literal()), true};
      }
      return {Expression::neg(operand.e), false};
    }
    return power();
  }

  Parsed power() {
    Parsed base = primary();
    if (peek().kind == Tok::Power) {
      next();
      Expression exponent = unary().e;
      return {Expression::pow(base.e, exponent), false};
    }
    return base;
  }

  Parsed primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        bool decimal = t.text.find('.') != std::string::npos;
        Rational v = decimal ? ExactDecimal::parse(t.text).to_rational() : Rational(BigInt::parse(t.text));
        return {Expression::number(v, decimal), true};
      }
      case Tok::Name: {
        next();
        char name = t.text[0];
        if (peek().kind == Tok::LParen) {
          next();
          Expression arg = expr();
          expect(Tok::RParen, "')'");
          return {Expression::call(name, arg), false};
        }
        return {Expression::variable(name), false};
      }
      case Tok::Sqrt: {
        next();
        expect(Tok::LParen, "'(' after sqrt");
        Expression arg = expr();
        expect(Tok::RParen, "')'");
        return {Expression::sqrt(arg), false};
      }
      case Tok::LParen: {
        next();
        Expression inner = expr();
        expect(Tok::RParen, "')'");
        return {inner, false};
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t i_ = 0;
};

}  // namespace

Expression parse_expression(std::string_view text) { return Parser(text).parse_all(); }

Equation parse_equation(std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ParseError("expected '='", text.size());
  if (text.find('=', eq + 1) != std::string_view::npos) throw ParseError("more than one '='", text.find('=', eq + 1));
  Equation out;
  out.lhs = parse_expression(text.substr(0, eq));
  try {
    out.rhs = parse_expression(text.substr(eq + 1));
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at position")), eq + 1 + e.position());
  }
  return out;
}

// ---------------------------------------------------------------------------

bool has_leading_minus(const Expression& term) {
  switch (term.kind()) {
    case ExprKind::Number:
      return term.value().sign() < 0;
    case ExprKind::Neg:
      return true;
    case ExprKind::Mul:
    case ExprKind::Div:
      return has_leading_minus(term.lhs());
    default:
      return false;
  }
}

Expression strip_leading_minus(const Expression& term) {
  switch (term.kind()) {
    case ExprKind::Number:
      return Expression::number(-term.value(), term.is_decimal_literal());
    case ExprKind::Neg:
      return term.lhs();
    case ExprKind::Mul:
      return Expression::mul(strip_leading_minus(term.lhs()), term.rhs());
    case ExprKind::Div:
      return Expression::div(strip_leading_minus(term.lhs()), term.rhs());
    default:
      throw InvalidInput("term has no leading minus");
  }
}

Expression signed_sum(const std::vector<Expression>& terms) {
  if (terms.empty()) return Expression::integer(0);
  Expression acc = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) {
    const Expression& t = terms[i];
    acc = has_leading_minus(t) ? Expression::sub(acc, strip_leading_minus(t)) : Expression::add(acc, t);
  }
  return acc;
}

Expression substitute(const Expression& e, char name, const Expression& with) {
  switch (e.kind()) {
    case ExprKind::Number:
      return e;
    case ExprKind::Variable:
      return e.name() == name ? with : e;
    case ExprKind::Call:
      return Expression::call(e.name(), substitute(e.lhs(), name, with));
    case ExprKind::Neg:
      return Expression::neg(substitute(e.lhs(), name, with));
    case ExprKind::Sqrt:
      return Expression::sqrt(substitute(e.lhs(), name, with));
    case ExprKind::Add:
      return Expression::add(substitute(e.lhs(), name, with), substitute(e.rhs(), name, with));
    case ExprKind::Sub:
      return Expression::sub(substitute(e.lhs(), name, with), substitute(e.rhs(), name, with));
    case ExprKind::Mul:
      return Expression::mul(substitute(e.lhs(), name, with), substitute(e.rhs(), name, with));
    case ExprKind::Div:
      return Expression::div(substitute(e.lhs(), name, with), substitute(e.rhs(), name, with));
    case ExprKind::Pow:
      return Expression::pow(substitute(e.lhs(), name, with), substitute(e.rhs(), name, with));
  }
  return e;
}

}  // namespace mathgen
