#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "cgeom/surface.hpp"

namespace testsupport {

using cgeom::Complex;
using cgeom::Dimension;
using cgeom::Immersion;
using cgeom::Jet;
using cgeom::Param;

inline constexpr Complex I{0.0, 1.0};

inline Complex cis(double t) { return std::polar(1.0, t); }

/// (cos s e^{it}, sin s e^{2it}, 0): minimal, alpha = 0, not flat.
inline Immersion helicoid() {
  return Immersion("helicoid", Dimension::S5, [](Param u) {
    const double s = u.u1, t = u.u2;
    return Jet{{std::cos(s) * cis(t), std::sin(s) * cis(2 * t), 0.0},
               {-std::sin(s) * cis(t), std::cos(s) * cis(2 * t), 0.0},
               {I * std::cos(s) * cis(t), 2.0 * I * std::sin(s) * cis(2 * t), 0.0}};
  });
}

/// Small-circle torus (cos(pi/6) e^{iu1}, sin(pi/6) e^{iu2}, 0): flat, not minimal.
inline Immersion control_torus() {
  return Immersion("control-torus", Dimension::S5, [](Param u) {
    const double c = std::cos(std::numbers::pi / 6), s = std::sin(std::numbers::pi / 6);
    return Jet{{c * cis(u.u1), s * cis(u.u2), 0.0}, {I * c * cis(u.u1), 0.0, 0.0}, {0.0, I * s * cis(u.u2), 0.0}};
  });
}

/// Real great 2-sphere (cos u1, sin u1 cos u2, sin u1 sin u2): totally geodesic,
/// legendrian, degenerate where sin u1 = 0.
inline Immersion great_sphere() {
  return Immersion("great-sphere", Dimension::S5, [](Param u) {
    const double c1 = std::cos(u.u1), s1 = std::sin(u.u1), c2 = std::cos(u.u2), s2 = std::sin(u.u2);
    return Jet{{c1, s1 * c2, s1 * s2}, {-s1, c1 * c2, c1 * s2}, {0.0, -s1 * s2, s1 * c2}};
  });
}

/// Swaps the parameters: g(u1, u2) = f(u2, u1).
inline Immersion swapped(const Immersion& f) {
  return Immersion(f.label() + "-swapped", f.dimension(), [f](Param u) {
    Jet j = f.jet({u.u2, u.u1});
    return Jet{j.position, j.d_u2, j.d_u1};
  });
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline Param random_param() {
  std::uniform_real_distribution<double> d(0.0, cgeom::two_pi);
  return {d(rng()), d(rng())};
}

}  // namespace testsupport
