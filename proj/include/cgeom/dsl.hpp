#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cgeom/ambient.hpp"
#include "cgeom/dual.hpp"
#include "cgeom/surface.hpp"

namespace cgeom::dsl {

struct Node;
using Expr = std::shared_ptr<const Node>;

enum class Variable { u1, u2 };
enum class Function { exp, sin, cos, sqrt, conj };
enum class BinaryOp { add, sub, mul, div };

/// Real or imaginary literal; "2.5" is {2.5, 0}, "3i" and "i" are {0, 3} and {0, 1}.
struct Literal {
  Complex value;
};
struct Pi {};
struct VariableRef {
  Variable var;
};
struct Negate {
  Expr operand;
};
struct Binary {
  BinaryOp op;
  Expr lhs, rhs;
};
struct Power {
  Expr base;
  int exponent;
};
struct Call {
  Function fn;
  Expr arg;
};

struct Node {
  std::variant<Literal, Pi, VariableRef, Negate, Binary, Power, Call> kind;
};

/// Structural equality of two trees.
bool equal(const Expr& a, const Expr& b);

/// Minimal-parenthesis rendering that parses back to an equal tree.
std::string serialize(const Expr& e);

struct SourcePos {
  int line = 1;
  int column = 1;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { syntax, unknown_identifier, component_count };
  ParseError(Kind kind, SourcePos pos, std::string message, std::vector<std::string> expected = {});
  Kind kind() const { return kind_; }
  SourcePos position() const { return pos_; }
  /// The message without the position prefix of what().
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Kind kind_;
  SourcePos pos_;
  std::string message_;
  std::vector<std::string> expected_;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parsed surface: one expression per complex coordinate.
struct SurfaceExpr {
  std::vector<Expr> components;
  bool periodic = true;
};

/// Parses a single expression (no commas).
Expr parse_expression(std::string_view text);

/// Parses a surface file: '#' comment lines, an optional "periodic: true|false"
/// header line, and a comma separated tuple of n+1 expressions, optionally
/// wrapped in parentheses.
SurfaceExpr parse_surface(std::string_view text, Dimension dim);

std::string serialize(const SurfaceExpr& s);

/// Value and both first partials at u. Throws EvalError on division by zero
/// or sqrt at 0.
DualScalar evaluate_dual(const Expr& e, Param u);

/// Builds an immersion from surface text; a 16x16 validation pass attaches
/// warnings to the immersion instead of throwing.
Immersion immersion_from_dsl(std::string_view text, Dimension dim, std::string label = "dsl");

Immersion immersion_from_surface(SurfaceExpr surface, Dimension dim, std::string label = "dsl");

}  // namespace cgeom::dsl
