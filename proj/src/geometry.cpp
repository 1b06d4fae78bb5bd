#include "cgeom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cgeom/kernels.hpp"

namespace cgeom {

namespace {

constexpr double nan = ScalarGrid::undefined;

void require_grid(const ScalarGrid& f) {
  if (f.resolution() < 8) throw std::invalid_argument("grid resolution must be at least 8");
}

ScalarGrid like(const ScalarGrid& f, double fill = 0.0) { return ScalarGrid(f.resolution(), f.periodic(), fill); }

template <class Op>
ScalarGrid pointwise(const ScalarGrid& a, Op op) {
  ScalarGrid out = like(a);
  auto src = a.values();
  auto dst = out.values();
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = op(k);
  return out;
}

double stencil(const std::array<double, 5>& v, double h) {
  return ((v[3] - v[1]) * 8.0 - (v[4] - v[0])) / (12.0 * h);
}

}  // namespace

ScalarGrid partial(const ScalarGrid& f, Axis axis) {
  require_grid(f);
  ScalarGrid out = like(f);
  kernels::derivative(f.values().data(), out.values().data(), f.resolution(), static_cast<int>(axis), f.periodic(),
                      f.spacing());
  return out;
}

MetricField metric_field(const FrameGrid& frames) {
  const int n = frames.resolution();
  MetricField m{ScalarGrid::undefined_grid(n, frames.periodic()), ScalarGrid::undefined_grid(n, frames.periodic()),
                ScalarGrid::undefined_grid(n, frames.periodic())};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& jet = frames.jet(i, j);
      if (!jet) continue;
      const MetricTensor g = metric_from_jet(*jet);
      if (g.det() <= immersion_floor) continue;
      m.g11(i, j) = g.g11;
      m.g12(i, j) = g.g12;
      m.g22(i, j) = g.g22;
    }
  }
  return m;
}

MetricField metric_field(int resolution, const std::function<MetricTensor(Param)>& g, bool periodic) {
  MetricField m{ScalarGrid::undefined_grid(resolution, periodic), ScalarGrid::undefined_grid(resolution, periodic),
                ScalarGrid::undefined_grid(resolution, periodic)};
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const MetricTensor t = g(m.g11.param(i, j));
      if (!(t.det() > immersion_floor)) continue;
      m.g11(i, j) = t.g11;
      m.g12(i, j) = t.g12;
      m.g22(i, j) = t.g22;
    }
  }
  return m;
}

FrameCoordinates frame_coordinates(const FrameGrid& frames) {
  const int n = frames.resolution();
  const bool p = frames.periodic();
  FrameCoordinates c{ScalarGrid::undefined_grid(n, p), ScalarGrid::undefined_grid(n, p),
                     ScalarGrid::undefined_grid(n, p), ScalarGrid::undefined_grid(n, p)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& s = frames.sample(i, j);
      if (!s) continue;
      c.e1_u1(i, j) = s->e1_coords[0];
      c.e1_u2(i, j) = s->e1_coords[1];
      c.e2_u1(i, j) = s->e2_coords[0];
      c.e2_u2(i, j) = s->e2_coords[1];
    }
  }
  return c;
}

FrameCoordinates orthonormal_coordinates(const MetricField& metric) {
  const ScalarGrid& E = metric.g11;
  const ScalarGrid& F = metric.g12;
  const ScalarGrid& G = metric.g22;
  // e1 = d1 / sqrt(E); e2 = (E d2 - F d1) / sqrt(E det g).
  return FrameCoordinates{
      pointwise(E, [&](std::size_t k) { return 1.0 / std::sqrt(E.values()[k]); }),
      pointwise(E, [&](std::size_t k) { return 0.0 * E.values()[k]; }),
      pointwise(E,
                [&](std::size_t k) {
                  const double e = E.values()[k], f = F.values()[k], g = G.values()[k];
                  return -f / std::sqrt(e * (e * g - f * f));
                }),
      pointwise(E,
                [&](std::size_t k) {
                  const double e = E.values()[k], f = F.values()[k], g = G.values()[k];
                  return e / std::sqrt(e * (e * g - f * f));
                }),
  };
}

ScalarGrid directional_derivative(const ScalarGrid& f, const FrameCoordinates& frame, Direction d) {
  const ScalarGrid f1 = partial(f, Axis::u1);
  const ScalarGrid f2 = partial(f, Axis::u2);
  const ScalarGrid& c1 = d == Direction::e1 ? frame.e1_u1 : frame.e2_u1;
  const ScalarGrid& c2 = d == Direction::e1 ? frame.e1_u2 : frame.e2_u2;
  return pointwise(f, [&](std::size_t k) { return c1.values()[k] * f1.values()[k] + c2.values()[k] * f2.values()[k]; });
}

Gradient scalar_gradient(const ScalarGrid& f, const FrameCoordinates& frame) {
  Gradient g{{directional_derivative(f, frame, Direction::e1), directional_derivative(f, frame, Direction::e2)},
             ScalarGrid{}};
  g.norm_sq = pointwise(f, [&](std::size_t k) {
    const double a = g.form.on_e1.values()[k], b = g.form.on_e2.values()[k];
    return a * a + b * b;
  });
  return g;
}

Gradient scalar_gradient(const ScalarGrid& f, const MetricField& metric) {
  return scalar_gradient(f, orthonormal_coordinates(metric));
}

ScalarGrid laplace_beltrami(const ScalarGrid& f, const MetricField& metric) {
  require_grid(f);
  const ScalarGrid f1 = partial(f, Axis::u1);
  const ScalarGrid f2 = partial(f, Axis::u2);
  const auto E = metric.g11.values(), F = metric.g12.values(), G = metric.g22.values();

  ScalarGrid flux1 = like(f), flux2 = like(f), root = like(f);
  for (std::size_t k = 0; k < E.size(); ++k) {
    const double det = E[k] * G[k] - F[k] * F[k];
    const double s = std::sqrt(det);
    const double a = f1.values()[k], b = f2.values()[k];
    root.values()[k] = s;
    flux1.values()[k] = s * (G[k] * a - F[k] * b) / det;
    flux2.values()[k] = s * (E[k] * b - F[k] * a) / det;
  }
  const ScalarGrid d1 = partial(flux1, Axis::u1);
  const ScalarGrid d2 = partial(flux2, Axis::u2);
  return pointwise(f, [&](std::size_t k) { return (d1.values()[k] + d2.values()[k]) / root.values()[k]; });
}

ScalarGrid gaussian_curvature_intrinsic(const MetricField& metric) {
  const ScalarGrid& E = metric.g11;
  const ScalarGrid& F = metric.g12;
  const ScalarGrid& G = metric.g22;
  require_grid(E);

  const ScalarGrid Eu = partial(E, Axis::u1), Ev = partial(E, Axis::u2);
  const ScalarGrid Fu = partial(F, Axis::u1), Fv = partial(F, Axis::u2);
  const ScalarGrid Gu = partial(G, Axis::u1), Gv = partial(G, Axis::u2);
  const ScalarGrid Evv = partial(Ev, Axis::u2);
  const ScalarGrid Guu = partial(Gu, Axis::u1);
  const ScalarGrid Fuv = partial(Fu, Axis::u2);

  auto det3 = [](double a, double b, double c, double d, double e, double f, double g, double h, double i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
  };

  return pointwise(E, [&](std::size_t k) {
    const double e = E.values()[k], f = F.values()[k], g = G.values()[k];
    const double eu = Eu.values()[k], ev = Ev.values()[k];
    const double fu = Fu.values()[k], fv = Fv.values()[k];
    const double gu = Gu.values()[k], gv = Gv.values()[k];
    const double m1 = det3(-0.5 * Evv.values()[k] + Fuv.values()[k] - 0.5 * Guu.values()[k], 0.5 * eu, fu - 0.5 * ev,
                           fv - 0.5 * gu, e, f,  //
                           0.5 * gv, f, g);
    const double m2 = det3(0.0, 0.5 * ev, 0.5 * gu,  //
                           0.5 * ev, e, f,           //
                           0.5 * gu, f, g);
    const double det = e * g - f * f;
    if (!(det > immersion_floor)) return nan;
    return (m1 - m2) / (det * det);
  });
}

// ------------------------------------------------------- window quantities

AmbientVector sphere_covariant_derivative(const FrameWindow& w, const VectorSelector& field,
                                          std::array<double, 2> x) {
  const FrameSample& c = w.center();
  const std::size_t size = c.position.size();
  AmbientVector d(size);
  for (int axis = 0; axis < 2; ++axis) {
    if (x[axis] == 0.0) continue;
    std::array<AmbientVector, 5> v;
    for (int k = 0; k < 5; ++k) v[k] = field(w.along[axis][k]);
    for (std::size_t m = 0; m < size; ++m) {
      const std::array<double, 5> re{v[0][m].real(), v[1][m].real(), v[2][m].real(), v[3][m].real(), v[4][m].real()};
      const std::array<double, 5> im{v[0][m].imag(), v[1][m].imag(), v[2][m].imag(), v[3][m].imag(), v[4][m].imag()};
      d[m] += x[axis] * Complex(stencil(re, w.spacing), stencil(im, w.spacing));
    }
  }
  return project_tangent(c.position, d);
}

AmbientVector sphere_covariant_derivative(const FrameWindow& w, const VectorSelector& field, Direction d) {
  const FrameSample& c = w.center();
  return sphere_covariant_derivative(w, field, d == Direction::e1 ? c.e1_coords : c.e2_coords);
}

namespace {

OneFormSample pair_derivative(const FrameWindow& w, const VectorSelector& field, const AmbientVector& target) {
  return {real_inner(sphere_covariant_derivative(w, field, Direction::e1), target),
          real_inner(sphere_covariant_derivative(w, field, Direction::e2), target)};
}

}  // namespace

std::optional<OneFormSample> connection_form_w12(const FrameWindow& w) {
  const FrameSample& c = w.center();
  if (c.dimension() != Dimension::S5) return std::nullopt;
  return pair_derivative(w, [](const FrameSample& s) { return s.unitary[0]; }, c.unitary[1]);
}

std::optional<OneFormSample> connection_form_w21(const FrameWindow& w) {
  const FrameSample& c = w.center();
  if (c.dimension() != Dimension::S5) return std::nullopt;
  return pair_derivative(w, [](const FrameSample& s) { return s.unitary[1]; }, c.unitary[0]);
}

std::optional<OneFormSample> darboux_connection_theta21(const FrameWindow& w) {
  const FrameSample& c = w.center();
  if (std::abs(c.beta - std::numbers::pi / 2) < tan_guard) return std::nullopt;
  return pair_derivative(w, [](const FrameSample& s) { return s.e2; }, c.e1);
}

double SecondFundamentalForm::determinant_sum() const {
  double s = 0.0;
  for (const auto& m : h) s += m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return s;
}

SecondFundamentalForm second_fundamental_form(const FrameWindow& w) {
  const FrameSample& c = w.center();
  // D_{e_a} e_j for j, a in {1, 2}
  std::array<std::array<AmbientVector, 2>, 2> D;
  for (int j = 0; j < 2; ++j) {
    auto sel = [j](const FrameSample& s) { return j == 0 ? s.e1 : s.e2; };
    D[j][0] = sphere_covariant_derivative(w, sel, Direction::e1);
    D[j][1] = sphere_covariant_derivative(w, sel, Direction::e2);
  }
  SecondFundamentalForm out;
  for (std::size_t l = 2; l < c.darboux.size(); ++l) {
    const AmbientVector& n = c.darboux[l];
    std::array<std::array<double, 2>, 2> raw{};
    for (int j = 0; j < 2; ++j)
      for (int a = 0; a < 2; ++a) raw[j][a] = real_inner(D[j][a], n);
    out.asymmetry = std::max(out.asymmetry, std::abs(raw[0][1] - raw[1][0]));
    const double off = 0.5 * (raw[0][1] + raw[1][0]);
    out.h.push_back({{{raw[0][0], off}, {off, raw[1][1]}}});
  }
  return out;
}

double mean_curvature_norm(const SecondFundamentalForm& sff) {
  double s = 0.0;
  for (const auto& m : sff.h) s += (m[0][0] + m[1][1]) * (m[0][0] + m[1][1]);
  return std::sqrt(s);
}

std::optional<OneFormSample> kahler_angle_differential(const FrameWindow& w) {
  std::array<double, 2> d{};
  for (int axis = 0; axis < 2; ++axis) {
    std::array<double, 5> a;
    for (int k = 0; k < 5; ++k) {
      const auto& s = w.along[axis][k];
      if (!s.alpha) return std::nullopt;
      a[k] = *s.alpha;
    }
    d[axis] = stencil(a, w.spacing);
  }
  const FrameSample& c = w.center();
  return OneFormSample{c.e1_coords[0] * d[0] + c.e1_coords[1] * d[1], c.e2_coords[0] * d[0] + c.e2_coords[1] * d[1]};
}

// ------------------------------------------------------------------ bundle

GeometryFields compute_geometry(const FrameGrid& frames) {
  const int n = frames.resolution();
  const bool p = frames.periodic();
  auto undef = [&] { return ScalarGrid::undefined_grid(n, p); };

  GeometryFields g;
  g.resolution = n;
  g.periodic = p;
  g.dimension = frames.dimension();
  g.cells.resize(static_cast<std::size_t>(n) * n);
  g.beta = undef();
  g.alpha = undef();
  g.cos_alpha = undef();
  g.dalpha = {undef(), undef()};
  g.w12 = {undef(), undef()};
  g.w21 = {undef(), undef()};
  g.theta21 = {undef(), undef()};
  g.mean_curvature = undef();
  g.gauss_sum = undef();
  g.h_asymmetry = undef();

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CellInfo& info = g.cells[static_cast<std::size_t>(i) * n + j];
      info.status = frames.status(i, j);
      const auto& s = frames.sample(i, j);
      if (!s) continue;
      info.kind = s->kind;
      info.legendrian = s->legendrian;
      g.beta(i, j) = s->beta;
      if (s->alpha) {
        g.alpha(i, j) = *s->alpha;
        g.cos_alpha(i, j) = s->cos_alpha;
      }

      const WindowResult wr = frames.window(i, j);
      info.window = wr.status;
      if (!wr.window) continue;
      const FrameWindow& w = *wr.window;

      if (auto da = kahler_angle_differential(w)) {
        g.dalpha.on_e1(i, j) = da->on_e1;
        g.dalpha.on_e2(i, j) = da->on_e2;
      }
      if (auto f = connection_form_w12(w)) {
        g.w12.on_e1(i, j) = f->on_e1;
        g.w12.on_e2(i, j) = f->on_e2;
      }
      if (auto f = connection_form_w21(w)) {
        g.w21.on_e1(i, j) = f->on_e1;
        g.w21.on_e2(i, j) = f->on_e2;
      }
      if (auto t = darboux_connection_theta21(w)) {
        g.theta21.on_e1(i, j) = t->on_e1;
        g.theta21.on_e2(i, j) = t->on_e2;
      }
      const SecondFundamentalForm sff = second_fundamental_form(w);
      g.mean_curvature(i, j) = mean_curvature_norm(sff);
      g.gauss_sum(i, j) = sff.determinant_sum();
      g.h_asymmetry(i, j) = sff.asymmetry;
    }
  }

  g.metric = metric_field(frames);
  g.frame = frame_coordinates(frames);
  g.curvature = gaussian_curvature_intrinsic(g.metric);
  g.grad_beta = scalar_gradient(g.beta, g.frame);
  g.laplacian_beta = laplace_beltrami(g.beta, g.metric);
  return g;
}

}  // namespace cgeom
