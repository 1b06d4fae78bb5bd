#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "cgeom/dsl.hpp"
#include "cgeom/frames.hpp"
#include "corpus.hpp"
#include "support.hpp"

using namespace cgeom;
using namespace cgeom::dsl;

namespace {

const char* gc_text = "sqrt(3)/3 * exp(i*u1), sqrt(3)/3 * exp(i*u2), sqrt(3)/3 * exp(i*(u2-u1))";

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

ParseError parse_error_of(std::string_view text, Dimension dim = Dimension::S5) {
  try {
    parse_surface(text, dim);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no parse error for: " << text);
  return ParseError(ParseError::Kind::syntax, {}, "");
}

}  // namespace

TEST_CASE("parse a three component surface") {
  const SurfaceExpr s = parse_surface(gc_text, Dimension::S5);
  CHECK(s.components.size() == 3);
  CHECK(s.periodic);
}

TEST_CASE("parse errors") {
  SUBCASE("unknown identifier") {
    const ParseError e = parse_error_of("u3, 0, 0");
    CHECK(e.kind() == ParseError::Kind::unknown_identifier);
    CHECK(e.position().column == 1);
  }
  SUBCASE("end of input") {
    const ParseError e = parse_error_of("exp(");
    CHECK(e.kind() == ParseError::Kind::syntax);
    CHECK(e.position().column == 5);
    CHECK_FALSE(e.expected().empty());
  }
  SUBCASE("empty") { CHECK(parse_error_of("").kind() == ParseError::Kind::syntax); }
  SUBCASE("component count") {
    CHECK(parse_error_of("exp(i*u1), 0").kind() == ParseError::Kind::component_count);
    CHECK(parse_error_of("exp(i*u1), 0, 0", Dimension::S3).kind() == ParseError::Kind::component_count);
  }
  SUBCASE("line numbers across comments") {
    const ParseError e = parse_error_of("# header\n# more\nexp(i*u1), 0, 0 +\n");
    CHECK(e.position().line == 3);
  }
  SUBCASE("non-integer exponent") { CHECK(parse_error_of("u1^1.5, 0, 0").kind() == ParseError::Kind::syntax); }
}

TEST_CASE("evaluate_dual basics") {
  const DualScalar a = evaluate_dual(parse_expression("exp(i*u1)"), {0, 0});
  CHECK(close(a.value, 1.0, 1e-15));
  CHECK(close(a.d_u1, testsupport::I, 1e-15));
  CHECK(close(a.d_u2, 0.0, 1e-15));

  const DualScalar b = evaluate_dual(parse_expression("u1*u2"), {2, 3});
  CHECK(b.value == Complex(6));
  CHECK(b.d_u1 == Complex(3));
  CHECK(b.d_u2 == Complex(2));
}

TEST_CASE("conj conjugates derivatives") {
  const DualScalar d = evaluate_dual(parse_expression("conj(exp(i*u1))"), {0.7, 0});
  CHECK(close(d.value, std::conj(testsupport::cis(0.7)), 1e-15));
  CHECK(close(d.d_u1, std::conj(testsupport::I * testsupport::cis(0.7)), 1e-15));
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(evaluate_dual(parse_expression("1/u1"), {0, 1}), EvalError);
  CHECK_THROWS_AS(evaluate_dual(parse_expression("sqrt(u1)"), {0, 1}), EvalError);
  CHECK_THROWS_AS(evaluate_dual(parse_expression("u1^-2"), {0, 1}), EvalError);
  CHECK_NOTHROW(evaluate_dual(parse_expression("u1^0"), {0, 1}));
}

TEST_CASE("precedence") {
  CHECK(equal(parse_expression("u1+u2*pi"), parse_expression("u1+(u2*pi)")));
  CHECK(equal(parse_expression("-u1^2"), parse_expression("-(u1^2)")));
  CHECK_FALSE(equal(parse_expression("-u1^2"), parse_expression("(-u1)^2")));
  CHECK(equal(parse_expression("u1-u2-pi"), parse_expression("(u1-u2)-pi")));
  CHECK(equal(parse_expression("u1/u2*pi"), parse_expression("(u1/u2)*pi")));
  CHECK(evaluate_dual(parse_expression("-2^2"), {0, 0}).value == Complex(-4));
  CHECK(evaluate_dual(parse_expression("2*3i"), {0, 0}).value == Complex(0, 6));
}

TEST_CASE("transcribed torus matches the built-in") {
  const Immersion dsl = immersion_from_dsl(gc_text, Dimension::S5, "gc");
  const Immersion ref = builtin_generalized_clifford_torus();
  CHECK(dsl.warnings().empty());
  for (int k = 0; k < 25; ++k) {
    const Param u = testsupport::random_param();
    const Jet a = dsl.jet(u), b = ref.jet(u);
    CHECK(norm(a.position - b.position) < 1e-12);
    CHECK(norm(a.d_u1 - b.d_u1) < 1e-12);
    CHECK(norm(a.d_u2 - b.d_u2) < 1e-12);
  }
}

TEST_CASE("transcribed clifford torus gives the same beta") {
  const Immersion dsl = immersion_from_dsl("(sqrt(2)/2*exp(i*u1), sqrt(2)/2*exp(i*u2), 0)", Dimension::S5);
  const Immersion ref = builtin_clifford_torus();
  for (int k = 0; k < 10; ++k) {
    const Param u = testsupport::random_param();
    CHECK(std::abs(frame_at(dsl, u).beta - frame_at(ref, u).beta) < 1e-12);
  }
}

TEST_CASE("surface files") {
  const std::string text =
      "# small circle torus\n"
      "periodic: false\n"
      "(\n"
      "  cos(pi/6) * exp(i*u1),\n"
      "  sin(pi/6) * exp(i*u2),\n"
      "  0\n"
      ")\n";
  const SurfaceExpr s = parse_surface(text, Dimension::S5);
  CHECK_FALSE(s.periodic);
  CHECK(s.components.size() == 3);
  const SurfaceExpr again = parse_surface(serialize(s), Dimension::S5);
  CHECK_FALSE(again.periodic);
  for (int k = 0; k < 3; ++k) CHECK(equal(s.components[k], again.components[k]));

  CHECK(parse_surface("exp(i*u1)/sqrt(2), exp(i*u2)/sqrt(2)", Dimension::S3).components.size() == 2);
}

TEST_CASE("off-sphere surfaces register with a warning") {
  const Immersion imm = immersion_from_dsl("2*exp(i*u1), 0, 0", Dimension::S5);
  REQUIRE_FALSE(imm.warnings().empty());
  CHECK(imm.warnings().front().find("sphere") != std::string::npos);
}

TEST_CASE("Leibniz rule") {
  const DualScalar a{Complex(1, 2), Complex(0.5, -1), Complex(2, 0)};
  const DualScalar b{Complex(-0.3, 1), Complex(1, 1), Complex(0, -2)};
  const DualScalar p = a * b;
  CHECK(p.d_u1 == a.value * b.d_u1 + a.d_u1 * b.value);
  CHECK(p.d_u2 == a.value * b.d_u2 + a.d_u2 * b.value);
}

TEST_CASE("corpus: dual derivatives agree with central differences") {
  int checked = 0;
  for (const std::string& text : testsupport::corpus()) {
    CAPTURE(text);
    const Expr e = parse_expression(text);
    for (int k = 0; k < 3; ++k) {
      const Param u = testsupport::random_param();
      DualScalar d;
      std::array<Complex, 2> fd;
      try {
        d = evaluate_dual(e, u);
        fd = testsupport::fd_partials(e, u);
      } catch (const EvalError&) {
        continue;
      }
      const double scale = std::max({1.0, std::abs(d.d_u1), std::abs(d.d_u2)});
      CHECK(std::abs(d.d_u1 - fd[0]) / scale <= 1e-8);
      CHECK(std::abs(d.d_u2 - fd[1]) / scale <= 1e-8);
      ++checked;
    }
  }
  CHECK(checked >= 140);
}

TEST_CASE("corpus: serialize round trip") {
  for (const std::string& text : testsupport::corpus()) {
    CAPTURE(text);
    const Expr e = parse_expression(text);
    const std::string s = serialize(e);
    CAPTURE(s);
    CHECK(equal(parse_expression(s), e));
    CHECK(serialize(parse_expression(s)) == s);
  }
}
