#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cgeom/dsl.hpp"
#include "cgeom/frames.hpp"
#include "support.hpp"

using namespace cgeom;

namespace {

const double gc_cos_beta = 2.0 * std::sqrt(2.0) / 3.0;

void check_sample_invariants(const FrameSample& s) {
  const AmbientVector& z = s.position;
  CHECK(std::abs(real_inner(s.e1, s.xi)) <= 1e-10);
  CHECK(std::abs(real_inner(s.e1, z)) <= 1e-10);
  CHECK(std::abs(std::cos(s.beta) - real_inner(s.xi, s.e2)) <= 1e-10);
  CHECK(s.beta >= 0.0);
  CHECK(s.beta <= std::numbers::pi / 2 + 1e-12);
  if (s.v) CHECK(norm(s.e2 - std::sin(s.beta) * *s.v - std::cos(s.beta) * s.xi) <= 1e-10);
  CHECK(orthonormality_defect(s.darboux) <= 1e-9);
  CHECK(s.darboux.size() == static_cast<std::size_t>(2 * complex_dim(s.dimension()) + 1));
  const int n = complex_dim(s.dimension());
  for (int j = 0; j < n; ++j) CHECK(s.unitary[n + j] == complex_structure(s.unitary[j]));
  CHECK(s.unitary[2 * n] == s.xi);
  // normals really are normal to the sphere and the surface
  for (std::size_t l = 2; l < s.darboux.size(); ++l) {
    CHECK(std::abs(real_inner(s.darboux[l], z)) <= 1e-9);
    CHECK(std::abs(real_inner(s.darboux[l], s.e1)) <= 1e-9);
    CHECK(std::abs(real_inner(s.darboux[l], s.e2)) <= 1e-9);
  }
}

}  // namespace

TEST_CASE("clifford torus frame") {
  const Immersion ct = builtin_clifford_torus();
  for (int k = 0; k < 10; ++k) {
    const Param u = testsupport::random_param();
    const FrameSample s = frame_at(ct, u);
    const double r = std::sqrt(2.0) / 2;
    const AmbientVector expected{testsupport::I * r * testsupport::cis(u.u1), testsupport::I * r * testsupport::cis(u.u2), 0};
    CHECK(std::min(norm(s.e2 - expected), norm(s.e2 + expected)) < 1e-12);
    CHECK(std::abs(s.cos_beta - 1.0) < 1e-12);
    CHECK(std::abs(contact_angle(s)) < 1e-9);
    CHECK_FALSE(s.alpha.has_value());
    CHECK_FALSE(kahler_angle(s).has_value());
    CHECK(s.kind == FrameKind::fallback);
    check_sample_invariants(s);
  }
}

TEST_CASE("generalized clifford torus frame") {
  const Immersion gc = builtin_generalized_clifford_torus();
  for (int k = 0; k < 10; ++k) {
    const FrameSample s = frame_at(gc, testsupport::random_param());
    CHECK(std::abs(s.cos_beta - gc_cos_beta) < 1e-12);
    CHECK(std::abs(s.beta - std::acos(gc_cos_beta)) < 1e-9);
    REQUIRE(s.alpha.has_value());
    CHECK(std::abs(*s.alpha - std::numbers::pi / 2) < 1e-9);
    CHECK(s.kind == FrameKind::interior);
    CHECK(std::abs(norm(s.unitary[0]) - 1.0) < 1e-12);
    // e5 = -cos(b)(cos(a/2) f3 - sin(a/2) f4) + sin(b) xi
    CHECK(std::abs(norm(s.darboux[4]) - 1.0) < 1e-12);
    CHECK(std::abs(real_inner(s.darboux[4], s.e1)) < 1e-12);
    CHECK(std::abs(real_inner(s.darboux[4], s.e2)) < 1e-12);
    CHECK(coframe_restriction_check(s) < 1e-9);
    check_sample_invariants(s);
  }
}

TEST_CASE("legendrian torus frame") {
  const Immersion lt = builtin_legendrian_torus();
  for (int k = 0; k < 10; ++k) {
    const FrameSample s = frame_at(lt, testsupport::random_param());
    CHECK(s.legendrian);
    CHECK(std::abs(s.cos_beta) < 1e-12);
    CHECK(std::abs(s.beta - std::numbers::pi / 2) < 1e-9);
    REQUIRE(s.alpha.has_value());
    CHECK(std::abs(*s.alpha - std::numbers::pi / 2) < 1e-9);
    CHECK(norm(s.darboux[4] - s.xi) < 1e-12);
    CHECK(coframe_restriction_check(s) < 1e-9);
    check_sample_invariants(s);
  }
}

TEST_CASE("strict legendrian mode refuses to choose e1") {
  FrameOptions strict;
  strict.strict_legendrian = true;
  CHECK_THROWS_AS(frame_at(builtin_legendrian_torus(), {0.1, 0.2}, strict), LegendrianAmbiguityError);
  CHECK_NOTHROW(frame_at(builtin_generalized_clifford_torus(), {0.1, 0.2}, strict));
}

TEST_CASE("legendrian e1 follows d/du1") {
  const Immersion lt = builtin_legendrian_torus();
  const Param u{0.4, 2.2};
  const FrameSample s = frame_at(lt, u);
  CHECK(norm(s.e1 - normalized(lt.jet(u).d_u1)) < 1e-12);
}

TEST_CASE("helicoid uses the null-Kahler frame") {
  const Immersion h = testsupport::helicoid();
  for (double s1 : {0.3, 0.7, 1.2, 2.0}) {
    const FrameSample s = frame_at(h, {s1, 0.9});
    REQUIRE(s.alpha.has_value());
    CHECK(*s.alpha < 1e-7);
    CHECK(s.kind == FrameKind::fallback);
    // f1 = e1 when alpha = 0
    CHECK(norm(s.unitary[0] - s.e1) < 1e-9);
    CHECK(coframe_restriction_check(s) < 1e-9);
    check_sample_invariants(s);
  }
}

TEST_CASE("orientation invariance") {
  const Immersion surfaces[] = {builtin_generalized_clifford_torus(), builtin_legendrian_torus(),
                                builtin_clifford_torus(), testsupport::helicoid(),
                                dsl::immersion_from_dsl("cos(u1)*exp(i*u2), sin(u1)*exp(i*u1+u2*2i)/1, 0", Dimension::S5)};
  for (const Immersion& f : surfaces) {
    const Immersion g = testsupport::swapped(f);
    for (int k = 0; k < 10; ++k) {
      const Param u = testsupport::random_param();
      const FrameSample a = frame_at(f, u);
      const FrameSample b = frame_at(g, {u.u2, u.u1});
      CAPTURE(f.label());
      CHECK(std::abs(a.beta - b.beta) < 1e-9);
      CHECK(a.alpha.has_value() == b.alpha.has_value());
      if (a.alpha && b.alpha && !a.legendrian) {
        CHECK(std::abs(a.cos_alpha * a.cos_alpha - b.cos_alpha * b.cos_alpha) < 1e-9);
      }
    }
  }
}

TEST_CASE("orthonormality and coframe table over grids") {
  for (const auto& info : builtin_surfaces()) {
    const FrameGrid grid(*builtin_by_name(info.name), 16);
    double worst_gram = 0.0, worst_coframe = 0.0;
    for (int i = 0; i < 16; ++i) {
      for (int j = 0; j < 16; ++j) {
        REQUIRE(grid.sample(i, j).has_value());
        worst_gram = std::max(worst_gram, orthonormality_defect(grid.sample(i, j)->darboux));
        worst_coframe = std::max(worst_coframe, coframe_restriction_check(*grid.sample(i, j)));
      }
    }
    CAPTURE(info.name);
    CHECK(worst_gram <= 1e-9);
    CHECK(worst_coframe <= 1e-9);
  }
}

TEST_CASE("S^3 sessions") {
  const Immersion ct = dsl::immersion_from_dsl("exp(i*u1)/sqrt(2), exp(i*u2)/sqrt(2)", Dimension::S3, "ct3");
  const FrameSample s = frame_at(ct, {0.2, 0.9});
  CHECK(s.darboux.size() == 3);
  CHECK(s.unitary.size() == 3);
  CHECK(std::abs(s.beta) < 1e-9);
  check_sample_invariants(s);

  // Hopf tori contain xi; this helicoid is neither legendrian nor tangent to xi.
  const Immersion t = dsl::immersion_from_dsl("cos(u1)*exp(i*u2), sin(u1)*exp(2*i*u2)", Dimension::S3, "h3");
  const FrameSample r = frame_at(t, {1.0, 2.0});
  CHECK_FALSE(r.legendrian);
  CHECK(r.beta > 0.1);
  REQUIRE(r.alpha.has_value());
  // alpha is 0 or pi in S^3: the contact plane is a complex line.
  CHECK(std::abs(std::abs(r.cos_alpha) - 1.0) < 1e-9);
  CHECK(coframe_restriction_check(r) < 1e-9);
  check_sample_invariants(r);
}

TEST_CASE("grid windows are gauge aligned") {
  const FrameGrid grid(builtin_generalized_clifford_torus(), 16);
  for (int i = 0; i < 16; i += 5) {
    for (int j = 0; j < 16; j += 3) {
      const WindowResult w = grid.window(i, j);
      REQUIRE(w.status == WindowStatus::ok);
      const FrameSample& c = w.window->center();
      for (int axis = 0; axis < 2; ++axis) {
        for (const FrameSample& s : w.window->along[axis]) {
          CHECK(real_inner(s.e1, c.e1) > 0.5);
          CHECK(real_inner(s.e2, c.e2) > 0.5);
          CHECK(s.kind == c.kind);
        }
      }
    }
  }
}

TEST_CASE("degenerate points are reported") {
  const FrameGrid grid(testsupport::great_sphere(), 16);
  CHECK(grid.status(0, 3) == CellStatus::degenerate);
  CHECK(grid.status(8, 3) == CellStatus::degenerate);
  CHECK(grid.status(4, 3) == CellStatus::ok);
  CHECK(grid.window(1, 3).status == WindowStatus::degenerate);
  CHECK(grid.window(4, 3).status == WindowStatus::ok);
  CHECK_THROWS_AS(FrameGrid(builtin_clifford_torus(), 4), std::invalid_argument);
}
