#include "cgeom/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

namespace cgeom::dsl {

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
  Tok type;
  SourcePos pos;
  std::string text;
  double number = 0.0;
  bool imaginary = false;
  bool integral = false;
};

std::string describe(const Token& t) {
  switch (t.type) {
    case Tok::end: return "end of input";
    case Tok::number:
    case Tok::ident: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const SourcePos pos = pos_;
      if (at_ >= src_.size()) {
        // reported just past the last token, not after trailing blank lines
        out.push_back({Tok::end, last_end_, ""});
        return out;
      }
      const char c = src_[at_];
      if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && at_ + 1 < src_.size() &&
                                                           std::isdigit(static_cast<unsigned char>(src_[at_ + 1])))) {
        out.push_back(number(pos));
      } else if (ident_start(c)) {
        const std::size_t b = at_;
        while (at_ < src_.size() && ident_char(src_[at_])) advance();
        out.push_back({Tok::ident, pos, std::string(src_.substr(b, at_ - b))});
      } else {
        Tok t;
        switch (c) {
          case '+': t = Tok::plus; break;
          case '-': t = Tok::minus; break;
          case '*': t = Tok::star; break;
          case '/': t = Tok::slash; break;
          case '^': t = Tok::caret; break;
          case '(': t = Tok::lparen; break;
          case ')': t = Tok::rparen; break;
          case ',': t = Tok::comma; break;
          default:
            throw ParseError(ParseError::Kind::syntax, pos, std::string("unexpected character '") + c + "'");
        }
        advance();
        out.push_back({t, pos, std::string(1, c)});
      }
      last_end_ = pos_;
    }
  }

 private:
  void advance() {
    if (src_[at_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++at_;
  }

  void skip_space() {
    while (at_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[at_]))) advance();
  }

  Token number(SourcePos pos) {
    const std::size_t b = at_;
    bool integral = true;
    auto digits = [&] {
      while (at_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[at_]))) advance();
    };
    digits();
    if (at_ < src_.size() && src_[at_] == '.') {
      integral = false;
      advance();
      digits();
    }
    if (at_ < src_.size() && (src_[at_] == 'e' || src_[at_] == 'E')) {
      std::size_t look = at_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        integral = false;
        while (at_ < look) advance();
        digits();
      }
    }
    const std::string_view text = src_.substr(b, at_ - b);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(value)) {
      throw ParseError(ParseError::Kind::syntax, pos, "invalid number '" + std::string(text) + "'");
    }
    Token t{Tok::number, pos, std::string(text), value, false, integral};
    // "3i" is an imaginary literal; "3in" is a number followed by an identifier.
    if (at_ < src_.size() && src_[at_] == 'i' && (at_ + 1 >= src_.size() || !ident_char(src_[at_ + 1]))) {
      advance();
      t.imaginary = true;
      t.integral = false;
      t.text += 'i';
    }
    return t;
  }

  std::string_view src_;
  std::size_t at_ = 0;
  SourcePos pos_{};
  SourcePos last_end_{};
};

// ---------------------------------------------------------------- parser

Expr make(auto&& kind) { return std::make_shared<const Node>(Node{std::forward<decltype(kind)>(kind)}); }

std::optional<Function> function_named(std::string_view s) {
  if (s == "exp") return Function::exp;
  if (s == "sin") return Function::sin;
  if (s == "cos") return Function::cos;
  if (s == "sqrt") return Function::sqrt;
  if (s == "conj") return Function::conj;
  return std::nullopt;
}

const char* function_name(Function f) {
  switch (f) {
    case Function::exp: return "exp";
    case Function::sin: return "sin";
    case Function::cos: return "cos";
    case Function::sqrt: return "sqrt";
    case Function::conj: return "conj";
  }
  return "?";
}

constexpr int max_exponent = 64;

class Parser {
 public:
  explicit Parser(std::vector<Token> toks, std::size_t begin = 0, std::size_t end = std::string::npos)
      : toks_(std::move(toks)), at_(begin), end_(std::min(end, toks_.size() - 1)) {}

  Expr expression() {
    Expr lhs = term();
    while (peek().type == Tok::plus || peek().type == Tok::minus) {
      const BinaryOp op = take().type == Tok::plus ? BinaryOp::add : BinaryOp::sub;
      lhs = make(Binary{op, lhs, term()});
    }
    return lhs;
  }

  const Token& peek() const { return at_ < end_ ? toks_[at_] : toks_[end_]; }
  std::size_t index() const { return at_; }
  const Token& take() { return at_ < end_ ? toks_[at_++] : toks_[end_]; }

  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string msg = what + ", found " + describe(t);
    if (!expected.empty()) {
      msg += "; expected ";
      for (std::size_t k = 0; k < expected.size(); ++k) msg += (k ? " or " : "") + expected[k];
    }
    throw ParseError(ParseError::Kind::syntax, t.pos, msg, std::move(expected));
  }

  void expect(Tok type, const char* text) {
    if (peek().type != type) fail("syntax error", {std::string("'") + text + "'"});
    take();
  }

 private:
  Expr term() {
    Expr lhs = unary();
    while (peek().type == Tok::star || peek().type == Tok::slash) {
      const BinaryOp op = take().type == Tok::star ? BinaryOp::mul : BinaryOp::div;
      lhs = make(Binary{op, lhs, unary()});
    }
    return lhs;
  }

  Expr unary() {
    if (peek().type == Tok::minus) {
      take();
      return make(Negate{unary()});
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (peek().type != Tok::caret) return base;
    take();
    bool negative = false;
    if (peek().type == Tok::minus) {
      take();
      negative = true;
    }
    const Token& t = peek();
    if (t.type != Tok::number || !t.integral) fail("exponent must be an integer literal", {"integer"});
    if (t.number > max_exponent) fail("exponent too large", {"integer <= 64"});
    take();
    const int k = static_cast<int>(t.number);
    return make(Power{base, negative ? -k : k});
  }

  Expr primary() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::number: {
        take();
        return make(Literal{t.imaginary ? Complex(0.0, t.number) : Complex(t.number, 0.0)});
      }
      case Tok::lparen: {
        take();
        Expr e = expression();
        expect(Tok::rparen, ")");
        return e;
      }
      case Tok::ident: {
        const Token id = take();
        if (id.text == "i") return make(Literal{Complex(0.0, 1.0)});
        if (id.text == "pi") return make(Pi{});
        if (id.text == "u1") return make(VariableRef{Variable::u1});
        if (id.text == "u2") return make(VariableRef{Variable::u2});
        if (auto fn = function_named(id.text)) {
          expect(Tok::lparen, "(");
          Expr arg = expression();
          expect(Tok::rparen, ")");
          return make(Call{*fn, arg});
        }
        throw ParseError(ParseError::Kind::unknown_identifier, id.pos, "unknown identifier '" + id.text + "'");
      }
      default:
        fail("syntax error", {"number", "identifier", "'('", "'-'"});
    }
  }

  std::vector<Token> toks_;
  std::size_t at_;
  std::size_t end_;
};

// ---------------------------------------------------------------- serializer

constexpr int prec_sum = 1, prec_product = 2, prec_unary = 3, prec_power = 4, prec_atom = 5;

std::string number_text(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

int precedence(const Node& n) {
  return std::visit(
      [](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Binary>) {
          return (k.op == BinaryOp::add || k.op == BinaryOp::sub) ? prec_sum : prec_product;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return prec_unary;
        } else if constexpr (std::is_same_v<T, Power>) {
          return prec_power;
        } else if constexpr (std::is_same_v<T, Literal>) {
          // Mixed literals only arise from hand-built trees and print as a sum.
          return (k.value.real() != 0.0 && k.value.imag() != 0.0) ? prec_sum : prec_atom;
        } else {
          return prec_atom;
        }
      },
      n.kind);
}

void emit(const Expr& e, int min_prec, std::string& out);

void emit_literal(Complex v, std::string& out) {
  if (v.imag() == 0.0 && !std::signbit(v.real())) {
    out += number_text(v.real());
  } else if (v.real() == 0.0 && !std::signbit(v.imag())) {
    out += v.imag() == 1.0 ? "i" : number_text(v.imag()) + "i";
  } else {
    out += number_text(v.real()) + (std::signbit(v.imag()) ? "-" : "+") + number_text(std::abs(v.imag())) + "i";
  }
}

void emit_node(const Node& n, std::string& out) {
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Literal>) {
          emit_literal(k.value, out);
        } else if constexpr (std::is_same_v<T, Pi>) {
          out += "pi";
        } else if constexpr (std::is_same_v<T, VariableRef>) {
          out += k.var == Variable::u1 ? "u1" : "u2";
        } else if constexpr (std::is_same_v<T, Negate>) {
          out += '-';
          emit(k.operand, prec_unary, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const bool sum = k.op == BinaryOp::add || k.op == BinaryOp::sub;
          emit(k.lhs, sum ? prec_sum : prec_product, out);
          out += k.op == BinaryOp::add ? " + " : k.op == BinaryOp::sub ? " - " : k.op == BinaryOp::mul ? "*" : "/";
          emit(k.rhs, sum ? prec_product : prec_unary, out);
        } else if constexpr (std::is_same_v<T, Power>) {
          emit(k.base, prec_atom, out);
          out += '^';
          out += std::to_string(k.exponent);
        } else if constexpr (std::is_same_v<T, Call>) {
          out += function_name(k.fn);
          out += '(';
          emit(k.arg, prec_sum, out);
          out += ')';
        }
      },
      n.kind);
}

void emit(const Expr& e, int min_prec, std::string& out) {
  if (precedence(*e) < min_prec) {
    out += '(';
    emit_node(*e, out);
    out += ')';
  } else {
    emit_node(*e, out);
  }
}

// ---------------------------------------------------------------- evaluator

DualScalar integer_power(DualScalar base, int k) {
  if (k == 0) return DualScalar(1.0);
  const bool invert = k < 0;
  unsigned n = static_cast<unsigned>(invert ? -k : k);
  DualScalar acc(1.0);
  while (n) {
    if (n & 1u) acc *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  if (invert) {
    if (acc.value == Complex(0.0)) throw EvalError("negative power of zero");
    return DualScalar(1.0) / acc;
  }
  return acc;
}

DualScalar eval(const Node& n, const DualScalar& u1, const DualScalar& u2) {
  return std::visit(
      [&](const auto& k) -> DualScalar {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Literal>) {
          return DualScalar(k.value);
        } else if constexpr (std::is_same_v<T, Pi>) {
          return DualScalar(std::numbers::pi);
        } else if constexpr (std::is_same_v<T, VariableRef>) {
          return k.var == Variable::u1 ? u1 : u2;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return -eval(*k.operand, u1, u2);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const DualScalar a = eval(*k.lhs, u1, u2);
          const DualScalar b = eval(*k.rhs, u1, u2);
          switch (k.op) {
            case BinaryOp::add: return a + b;
            case BinaryOp::sub: return a - b;
            case BinaryOp::mul: return a * b;
            case BinaryOp::div:
              if (b.value == Complex(0.0)) throw EvalError("division by zero");
              return a / b;
          }
          return {};
        } else if constexpr (std::is_same_v<T, Power>) {
          return integer_power(eval(*k.base, u1, u2), k.exponent);
        } else if constexpr (std::is_same_v<T, Call>) {
          const DualScalar a = eval(*k.arg, u1, u2);
          switch (k.fn) {
            case Function::exp: return exp(a);
            case Function::sin: return sin(a);
            case Function::cos: return cos(a);
            case Function::conj: return conj(a);
            case Function::sqrt:
              if (a.value == Complex(0.0)) throw EvalError("sqrt at 0: derivative undefined");
              return sqrt(a);
          }
          return {};
        }
      },
      n.kind);
}

// ---------------------------------------------------------------- surface files

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Blanks comment and header lines (keeping line numbers) and reads the periodic flag.
std::string strip_directives(std::string_view text, bool& periodic) {
  std::string out;
  int line_no = 0;
  std::size_t b = 0;
  while (b <= text.size()) {
    std::size_t e = text.find('\n', b);
    if (e == std::string_view::npos) e = text.size();
    const std::string_view line = text.substr(b, e - b);
    ++line_no;
    const std::string_view t = trim(line);
    if (t.starts_with('#')) {
      // comment
    } else if (t.starts_with("periodic:")) {
      const std::string_view v = trim(t.substr(9));
      if (v == "true") {
        periodic = true;
      } else if (v == "false") {
        periodic = false;
      } else {
        throw ParseError(ParseError::Kind::syntax, {line_no, static_cast<int>(line.find("periodic") + 10)},
                         "periodic header must be 'true' or 'false'", {"true", "false"});
      }
    } else {
      out.append(line);
    }
    if (e == text.size()) break;
    out += '\n';
    b = e + 1;
  }
  return out;
}

/// Index of the ')' closing the '(' at `open`, or npos.
std::size_t matching_paren(const std::vector<Token>& toks, std::size_t open) {
  int depth = 0;
  for (std::size_t k = open; k < toks.size(); ++k) {
    if (toks[k].type == Tok::lparen) ++depth;
    if (toks[k].type == Tok::rparen && --depth == 0) return k;
  }
  return std::string::npos;
}

bool has_top_level_comma(const std::vector<Token>& toks, std::size_t begin, std::size_t end) {
  int depth = 0;
  for (std::size_t k = begin; k < end; ++k) {
    if (toks[k].type == Tok::lparen) ++depth;
    if (toks[k].type == Tok::rparen) --depth;
    if (toks[k].type == Tok::comma && depth == 0) return true;
  }
  return false;
}

}  // namespace

ParseError::ParseError(Kind kind, SourcePos pos, std::string message, std::vector<std::string> expected)
    : std::runtime_error("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " +
                         message),
      kind_(kind),
      pos_(pos),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

bool equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind.index() != b->kind.index()) return false;
  return std::visit(
      [&](const auto& ka) {
        using T = std::decay_t<decltype(ka)>;
        const T& kb = std::get<T>(b->kind);
        if constexpr (std::is_same_v<T, Literal>) {
          return ka.value == kb.value;
        } else if constexpr (std::is_same_v<T, Pi>) {
          return true;
        } else if constexpr (std::is_same_v<T, VariableRef>) {
          return ka.var == kb.var;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return equal(ka.operand, kb.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return ka.op == kb.op && equal(ka.lhs, kb.lhs) && equal(ka.rhs, kb.rhs);
        } else if constexpr (std::is_same_v<T, Power>) {
          return ka.exponent == kb.exponent && equal(ka.base, kb.base);
        } else {
          return ka.fn == kb.fn && equal(ka.arg, kb.arg);
        }
      },
      a->kind);
}

std::string serialize(const Expr& e) {
  std::string out;
  emit(e, prec_sum, out);
  return out;
}

std::string serialize(const SurfaceExpr& s) {
  std::string out;
  if (!s.periodic) out += "periodic: false\n";
  for (std::size_t k = 0; k < s.components.size(); ++k) {
    if (k) out += ", ";
    out += serialize(s.components[k]);
  }
  return out;
}

Expr parse_expression(std::string_view text) {
  Parser p(Lexer(text).run());
  Expr e = p.expression();
  if (p.peek().type != Tok::end) p.fail("unexpected trailing input", {"operator", "end of input"});
  return e;
}

SurfaceExpr parse_surface(std::string_view text, Dimension dim) {
  SurfaceExpr out;
  const std::string body = strip_directives(text, out.periodic);
  const std::vector<Token> toks = Lexer(body).run();
  const std::size_t last = toks.size() - 1;  // the end token

  std::size_t begin = 0, end = last;
  if (toks[0].type == Tok::lparen) {
    const std::size_t close = matching_paren(toks, 0);
    if (close == last - 1 && has_top_level_comma(toks, 1, close)) {
      begin = 1;
      end = close;
    }
  }

  Parser p(toks, begin, end);
  for (;;) {
    out.components.push_back(p.expression());
    if (p.peek().type == Tok::comma) {
      p.take();
      continue;
    }
    if (p.index() != end) p.fail("syntax error", {"','", "operator", end == last ? "end of input" : "')'"});
    break;
  }

  const std::size_t want = ambient_size(dim);
  if (out.components.size() != want) {
    throw ParseError(ParseError::Kind::component_count, toks[0].pos,
                     "surface has " + std::to_string(out.components.size()) + " components, expected " +
                         std::to_string(want) + " for S^" + std::to_string(2 * complex_dim(dim) + 1));
  }
  return out;
}

DualScalar evaluate_dual(const Expr& e, Param u) {
  return eval(*e, DualScalar::variable_u1(u.u1), DualScalar::variable_u2(u.u2));
}

Immersion immersion_from_surface(SurfaceExpr surface, Dimension dim, std::string label) {
  if (surface.components.size() != ambient_size(dim)) {
    throw DimensionError("surface component count does not match the session dimension");
  }
  auto shared = std::make_shared<const SurfaceExpr>(std::move(surface));
  Immersion imm(
      std::move(label), dim,
      [shared](Param u) {
        const std::size_t m = shared->components.size();
        Jet jet{AmbientVector(m), AmbientVector(m), AmbientVector(m)};
        for (std::size_t k = 0; k < m; ++k) {
          const DualScalar d = evaluate_dual(shared->components[k], u);
          jet.position[k] = d.value;
          jet.d_u1[k] = d.d_u1;
          jet.d_u2[k] = d.d_u2;
        }
        return jet;
      },
      shared->periodic);

  const ValidationReport rep = validate_immersion(imm, 16);
  for (const std::string& m : rep.messages) imm.add_warning(m);
  return imm;
}

Immersion immersion_from_dsl(std::string_view text, Dimension dim, std::string label) {
  return immersion_from_surface(parse_surface(text, dim), dim, std::move(label));
}

}  // namespace cgeom::dsl
