#include "cgeom/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cgeom {

namespace {

struct Names {
  Identity id;
  std::string_view name;
};

constexpr std::array<Names, 6> identity_names{{
    {Identity::gauss_full, "gauss-full"},
    {Identity::gauss_beta, "gauss-beta"},
    {Identity::laplacian, "laplacian"},
    {Identity::theta21, "theta21"},
    {Identity::null_kahler_w12, "null-kahler-w12"},
    {Identity::gauss_equation, "gauss-equation"},
}};

bool near_legendrian(double beta) { return std::abs(beta - std::numbers::pi / 2) < tan_guard; }

bool defined(std::initializer_list<double> xs) {
  for (double x : xs)
    if (std::isnan(x)) return false;
  return true;
}

struct Outcome {
  std::optional<SkipReason> skip;
  double value = 0.0;
};

Outcome skip(SkipReason r) { return {r, 0.0}; }

// Second-order fields (K, Laplacian) are stencils of stencils: two cells each, twice.
constexpr int second_order_reach = 4;

Outcome evaluate_cell(Identity id, const GeometryFields& g, int i, int j, const IdentityOptions& opts) {
  const CellInfo& cell = g.cell(i, j);
  const int n = g.resolution;
  if (cell.window == WindowStatus::boundary) return skip(SkipReason::boundary);
  if (!g.periodic && std::min({i, j, n - 1 - i, n - 1 - j}) < second_order_reach) return skip(SkipReason::boundary);
  if (cell.window != WindowStatus::ok) return skip(SkipReason::frame_degenerate);

  const bool two = g.dimension == Dimension::S5;
  const double K = g.curvature(i, j);
  const double beta = g.beta(i, j);
  const double alpha = g.alpha(i, j);
  const double ca = g.cos_alpha(i, j);
  const double sa = std::sin(alpha);
  const double b1 = g.grad_beta.form.on_e1(i, j);
  const double b2 = g.grad_beta.form.on_e2(i, j);
  const double grad_sq = g.grad_beta.norm_sq(i, j);
  const double a1 = g.dalpha.on_e1(i, j);
  const double a2 = g.dalpha.on_e2(i, j);
  const double w1 = g.w12.on_e1(i, j);
  const double w2 = g.w12.on_e2(i, j);
  const double sb = std::sin(beta);
  const double tb = std::tan(beta);

  Outcome out;
  switch (id) {
    case Identity::gauss_full: {
      if (!two) return skip(SkipReason::outside_regime);
      if (std::isnan(alpha)) return skip(SkipReason::alpha_undefined);
      const double p = (a1 / 2 + w1) * (a1 / 2 + w1) + (a2 / 2 + w2) * (a2 / 2 + w2);
      const double rhs = 1.0 - ((b1 + ca) * (b1 + ca) + b2 * b2) - (1.0 + sb * sb) * p;
      out.value = K - rhs;
      if (!defined({K, b1, b2, a1, a2, w1, w2})) return skip(SkipReason::frame_degenerate);
      break;
    }
    case Identity::gauss_beta: {
      if (near_legendrian(beta)) return skip(SkipReason::legendrian);
      if (std::isnan(alpha)) return skip(SkipReason::alpha_undefined);
      const double lap = g.laplacian_beta(i, j);
      const double sec2 = 1.0 + tb * tb;
      const double rhs = -sec2 * grad_sq - tb * lap - 2 * ca * b1 * (1 + 2 * tb * tb) + 2 * tb * sa * a1 -
                         4 * tb * tb * ca * ca;
      out.value = K - rhs;
      if (!defined({K, grad_sq, lap, b1, a1})) return skip(SkipReason::frame_degenerate);
      break;
    }
    case Identity::laplacian: {
      if (!two) return skip(SkipReason::outside_regime);
      if (near_legendrian(beta)) return skip(SkipReason::legendrian);
      if (std::isnan(alpha)) return skip(SkipReason::alpha_undefined);
      const double lap = g.laplacian_beta(i, j);
      const double p = (a1 / 2 + w1) * (a1 / 2 + w1) + (a2 / 2 + w2) * (a2 / 2 + w2);
      const double rhs = -1.0 - tb * tb * (grad_sq + 4 * ca * b1) + 2 * tb * sa * a1 - ca * ca * (4 * tb * tb - 1) +
                         (1.0 + sb * sb) * p;
      out.value = tb * lap - rhs;
      if (!defined({lap, grad_sq, b1, a1, a2, w1, w2})) return skip(SkipReason::frame_degenerate);
      break;
    }
    case Identity::theta21: {
      if (near_legendrian(beta)) return skip(SkipReason::legendrian);
      // Without a Kahler angle sin(beta) < 1e-7, so the cos(alpha) term is below 2e-7 and dropped.
      const double c = std::isnan(alpha) ? 0.0 : ca;
      const double s = opts.j == JOrientation::standard ? 1.0 : -1.0;
      const double t1 = g.theta21.on_e1(i, j);
      const double t2 = g.theta21.on_e2(i, j);
      const double r1 = t1 - tb * (s * b2);
      const double r2 = t2 - tb * (-s * b1 - 2 * c);
      out.value = std::abs(r1) >= std::abs(r2) ? r1 : r2;
      if (!defined({t1, t2, b1, b2})) return skip(SkipReason::frame_degenerate);
      break;
    }
    case Identity::null_kahler_w12: {
      if (!two) return skip(SkipReason::outside_regime);
      if (beta >= std::numbers::pi / 2 - tan_guard) return skip(SkipReason::legendrian);
      if (cell.kind != FrameKind::fallback) return skip(SkipReason::outside_regime);
      out.value = std::max(std::abs(w1), std::abs(w2));
      if (!defined({w1, w2})) return skip(SkipReason::frame_degenerate);
      break;
    }
    case Identity::gauss_equation: {
      const double sum = g.gauss_sum(i, j);
      out.value = K - (1.0 + sum);
      if (!defined({K, sum})) return skip(SkipReason::frame_degenerate);
      break;
    }
  }
  if (std::isnan(out.value)) return skip(SkipReason::frame_degenerate);
  return out;
}

}  // namespace

std::string_view identity_name(Identity id) {
  for (const auto& n : identity_names)
    if (n.id == id) return n.name;
  return "unknown";
}

std::optional<Identity> identity_by_name(std::string_view name) {
  for (const auto& n : identity_names)
    if (n.name == name) return n.id;
  return std::nullopt;
}

std::string_view skip_reason_name(SkipReason r) {
  switch (r) {
    case SkipReason::legendrian: return "legendrian";
    case SkipReason::alpha_undefined: return "alpha-undefined";
    case SkipReason::frame_degenerate: return "frame-degenerate";
    case SkipReason::outside_regime: return "outside-regime";
    case SkipReason::boundary: return "boundary";
  }
  return "unknown";
}

double tolerance_at_64(Identity id) {
  switch (id) {
    case Identity::theta21: return 1e-5;
    case Identity::null_kahler_w12: return 1e-8;
    default: return 1e-4;
  }
}

double tolerance(Identity id, int resolution) {
  const double r = 64.0 / resolution;
  return tolerance_at_64(id) * r * r * r * r + 1e-9;
}

int ResidualReport::skipped_total() const {
  int t = 0;
  for (int s : skipped) t += s;
  return t;
}

ResidualField residual_field(Identity id, const GeometryFields& g, const IdentityOptions& opts) {
  ResidualField f{ScalarGrid::undefined_grid(g.resolution, g.periodic), {}};
  f.skipped.resize(static_cast<std::size_t>(g.resolution) * g.resolution);
  for (int i = 0; i < g.resolution; ++i) {
    for (int j = 0; j < g.resolution; ++j) {
      const Outcome o = evaluate_cell(id, g, i, j, opts);
      if (o.skip) {
        f.skipped[static_cast<std::size_t>(i) * g.resolution + j] = o.skip;
      } else {
        f.values(i, j) = o.value;
      }
    }
  }
  return f;
}

ResidualReport summarize(Identity id, const ResidualField& field, const IdentityOptions& opts) {
  const int n = field.values.resolution();
  ResidualReport r;
  r.name = std::string(identity_name(id));
  r.resolution = n;
  r.tolerance = opts.tolerance_override.value_or(tolerance(id, n));
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (const auto& s = field.skipped[static_cast<std::size_t>(i) * n + j]) {
        ++r.skipped[static_cast<int>(*s)];
        continue;
      }
      const double a = std::abs(field.values(i, j));
      ++r.evaluated;
      sum += a;
      sum_sq += a * a;
      if (!r.worst || a > r.max_abs) {
        r.max_abs = a;
        r.worst = field.values.param(i, j);
      }
    }
  }
  if (r.evaluated > 0) {
    r.mean_abs = sum / r.evaluated;
    r.rms = std::sqrt(sum_sq / r.evaluated);
  }
  r.vacuous = r.evaluated == 0;
  r.pass = r.max_abs <= r.tolerance;
  return r;
}

ResidualReport evaluate_identity(Identity id, const GeometryFields& g, const IdentityOptions& opts) {
  return summarize(id, residual_field(id, g, opts), opts);
}

ResidualReport residual_gauss_curvature_full(const GeometryFields& g) {
  return evaluate_identity(Identity::gauss_full, g);
}
ResidualReport residual_gauss_curvature_beta_form(const GeometryFields& g) {
  return evaluate_identity(Identity::gauss_beta, g);
}
ResidualReport residual_laplacian(const GeometryFields& g) { return evaluate_identity(Identity::laplacian, g); }
ResidualReport residual_theta21(const GeometryFields& g, JOrientation j) {
  IdentityOptions opts;
  opts.j = j;
  return evaluate_identity(Identity::theta21, g, opts);
}
ResidualReport null_kahler_w12_check(const GeometryFields& g) {
  return evaluate_identity(Identity::null_kahler_w12, g);
}

double constant_angle_curvature(double beta, double alpha) {
  const double cb = std::cos(beta);
  if (std::abs(cb) < 1e-12) throw std::domain_error("constant_angle_curvature: tan(beta) is singular at beta = pi/2");
  const double t = std::sin(beta) / cb;
  // sin(pi/2 - a) instead of cos(a): exact zero at the double nearest pi/2.
  const double c = std::sin(std::numbers::pi / 2 - alpha);
  return -4.0 * t * t * c * c;
}

}  // namespace cgeom
