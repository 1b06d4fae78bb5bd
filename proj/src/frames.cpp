#include "cgeom/frames.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cgeom {

namespace {

std::string at_text(Param u) {
  std::ostringstream os;
  os.precision(6);
  os << " at (u1=" << u.u1 << ", u2=" << u.u2 << ")";
  return os.str();
}

/// Coordinates c with X = c1 df/du1 + c2 df/du2 for a tangent vector X.
std::array<double, 2> coordinates(const Jet& jet, const MetricTensor& g, const AmbientVector& x) {
  const double b1 = real_inner(x, jet.d_u1);
  const double b2 = real_inner(x, jet.d_u2);
  const double det = g.det();
  return {(g.g22 * b1 - g.g12 * b2) / det, (g.g11 * b2 - g.g12 * b1) / det};
}

/// Sign making the first component entry above the threshold positive, scanning
/// Re(z0), Im(z0), Re(z1), ...
double component_rule_sign(const AmbientVector& x) {
  for (const Complex& c : x.components()) {
    if (std::abs(c.real()) > sign_rule_tolerance) return c.real() > 0 ? 1.0 : -1.0;
    if (std::abs(c.imag()) > sign_rule_tolerance) return c.imag() > 0 ? 1.0 : -1.0;
  }
  return 1.0;
}

/// e1 direction (unsigned) and the legendrian flag.
TangentFrame raw_tangent_frame(const Jet& jet, const MetricTensor& g, Param u, const FrameOptions& opts) {
  const AmbientVector xi = complex_structure(jet.position);
  const double a1 = real_inner(jet.d_u1, xi);
  const double a2 = real_inner(jet.d_u2, xi);
  // |projection of xi onto TS|^2 = a^T g^{-1} a
  const double proj2 = (g.g22 * a1 * a1 - 2.0 * g.g12 * a1 * a2 + g.g11 * a2 * a2) / g.det();
  const bool legendrian = std::sqrt(std::max(proj2, 0.0)) <= legendrian_tolerance;
  if (legendrian && opts.strict_legendrian) {
    throw LegendrianAmbiguityError("tangent plane lies in the contact distribution" + at_text(u), u);
  }

  TangentFrame tf;
  tf.legendrian = legendrian;
  tf.e1 = legendrian ? normalized(jet.d_u1) : normalized(a2 * jet.d_u1 - a1 * jet.d_u2);

  // Gram-Schmidt against whichever coordinate vector is less parallel to e1.
  const AmbientVector t2 = jet.d_u2 - real_inner(jet.d_u2, tf.e1) * tf.e1;
  const AmbientVector t1 = jet.d_u1 - real_inner(jet.d_u1, tf.e1) * tf.e1;
  tf.e2 = norm(t2) >= norm(t1) ? normalized(t2) : normalized(t1);
  return tf;
}

double orientation(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return a[0] * b[1] - a[1] * b[0];
}

void set_beta(FrameSample& s) {
  s.cos_beta = real_inner(s.xi, s.e2);
  s.beta = contact_angle(s);
}

void set_alpha(FrameSample& s) {
  const double sin_beta = std::sin(s.beta);
  if (sin_beta < sin_beta_floor) {
    s.v.reset();
    s.alpha.reset();
    s.cos_alpha = 0.0;
    return;
  }
  s.v = (s.e2 - s.cos_beta * s.xi) / sin_beta;
  s.alpha = kahler_angle(s);
  s.cos_alpha = real_inner(complex_structure(s.e1), *s.v);
}

}  // namespace

double contact_angle(const FrameSample& s) {
  const double c = real_inner(s.xi, s.e2);
  return std::atan2(norm(s.e2 - c * s.xi), c);
}

std::optional<double> kahler_angle(const FrameSample& s) {
  if (!s.v) return std::nullopt;
  const AmbientVector ie1 = complex_structure(s.e1);
  const double c = real_inner(ie1, *s.v);
  return std::atan2(norm(*s.v - c * ie1), c);
}

TangentFrame tangent_contact_frame(const Immersion& imm, Param u, FrameOptions opts) {
  const FrameSample s = frame_at(imm, u, opts);
  return {s.e1, s.e2, s.legendrian};
}

double orthonormality_defect(std::span<const AmbientVector> vectors) {
  double worst = 0.0;
  for (std::size_t a = 0; a < vectors.size(); ++a) {
    for (std::size_t b = a; b < vectors.size(); ++b) {
      const double target = a == b ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(real_inner(vectors[a], vectors[b]) - target));
    }
  }
  return worst;
}

FrameSample darboux_frame(FrameSample s, std::optional<FrameKind> forced) {
  const int n = complex_dim(s.dimension());
  const bool alpha_interior =
      n == 2 && s.alpha && *s.alpha > alpha_floor && *s.alpha < std::numbers::pi - alpha_floor;
  s.kind = forced.value_or(alpha_interior ? FrameKind::interior : FrameKind::fallback);
  if (s.kind == FrameKind::interior && !alpha_interior) {
    throw FrameDegenerateError("Kahler angle too close to 0 or pi for the interior f-frame" + at_text(s.u), s.u);
  }

  const double cb = s.cos_beta, sb = std::sin(s.beta);
  s.unitary.clear();
  s.darboux.clear();

  if (s.kind == FrameKind::interior) {
    const double a = *s.alpha;
    const double c = std::cos(a / 2), sn = std::sin(a / 2);
    const AmbientVector iv = complex_structure(*s.v);
    const AmbientVector f1 = (s.e1 - iv) / (2.0 * c);
    const AmbientVector f2 = (s.e1 + iv) / (2.0 * sn);
    const AmbientVector f3 = complex_structure(f1), f4 = complex_structure(f2);
    s.unitary = {f1, f2, f3, f4, s.xi};
    s.darboux = {s.e1, s.e2, sn * f1 - c * f2, sn * f3 + c * f4, -cb * (c * f3 - sn * f4) + sb * s.xi};
  } else {
    const AmbientVector f1 = s.v ? -complex_structure(*s.v) : s.e1;
    const AmbientVector if1 = complex_structure(f1);
    if (n == 2) {
      const AmbientVector f2 = normalized(hermitian_cross(s.position, f1));
      const AmbientVector f4 = complex_structure(f2);
      s.unitary = {f1, f2, if1, f4, s.xi};
      s.darboux = {s.e1, s.e2, f2, f4, -cb * if1 + sb * s.xi};
    } else {
      s.unitary = {f1, if1, s.xi};
      s.darboux = {s.e1, s.e2, -cb * if1 + sb * s.xi};
    }
  }

  // The fallback is exact at alpha = 0 and off by O(alpha) below alpha_floor.
  if (orthonormality_defect(s.darboux) > 1e-6) {
    throw FrameDegenerateError("Darboux frame is not orthonormal" + at_text(s.u), s.u);
  }
  return s;
}

FrameSample build_frame_sample(const Jet& jet, Param u, FrameOptions opts, const Gauge* gauge) {
  FrameSample s;
  s.u = u;
  s.position = jet.position;
  s.xi = complex_structure(jet.position);
  s.metric = metric_from_jet(jet);
  if (!(s.metric.det() > immersion_floor)) {
    throw DegeneratePointError("degenerate induced metric" + at_text(u), u);
  }

  TangentFrame tf = raw_tangent_frame(jet, s.metric, u, opts);
  s.legendrian = tf.legendrian;
  s.e1 = tf.e1;
  s.e2 = tf.e2;

  if (gauge) {
    if (real_inner(s.e1, gauge->e1) < 0) s.e1 = -s.e1;
    if (real_inner(s.e2, gauge->e2) < 0) s.e2 = -s.e2;
    set_beta(s);
    set_alpha(s);
  } else if (s.legendrian) {
    if (orientation(coordinates(jet, s.metric, s.e1), coordinates(jet, s.metric, s.e2)) < 0) s.e2 = -s.e2;
    set_beta(s);
    set_alpha(s);
  } else {
    if (real_inner(s.xi, s.e2) < 0) s.e2 = -s.e2;
    set_beta(s);
    set_alpha(s);
    // Flipping e1 with e2 fixed sends cos(alpha) to -cos(alpha).
    const bool by_alpha = s.alpha && std::abs(s.cos_alpha) > sign_rule_tolerance;
    const double sign = by_alpha ? (s.cos_alpha < 0 ? -1.0 : 1.0) : component_rule_sign(s.e1);
    if (sign < 0) {
      s.e1 = -s.e1;
      set_alpha(s);
    }
  }

  s.e1_coords = coordinates(jet, s.metric, s.e1);
  s.e2_coords = coordinates(jet, s.metric, s.e2);
  return darboux_frame(std::move(s), gauge ? std::optional<FrameKind>(gauge->kind) : std::nullopt);
}

FrameSample frame_at(const Immersion& imm, Param u, FrameOptions opts) {
  return build_frame_sample(imm.jet(u), u, opts);
}

double coframe_restriction_check(const FrameSample& s) {
  const int n = complex_dim(s.dimension());
  const double a = s.kind == FrameKind::interior ? *s.alpha : 0.0;
  const double c = std::cos(a / 2), sn = std::sin(a / 2);
  const double sb = std::sin(s.beta), cb = s.cos_beta;

  std::vector<double> row_e1(2 * n + 1, 0.0), row_e2(2 * n + 1, 0.0);
  row_e1[0] = c;
  if (n == 2) {
    row_e1[1] = sn;
    row_e2[2] = c * sb;
    row_e2[3] = -sn * sb;
  } else {
    row_e2[1] = c * sb;
  }
  row_e2[2 * n] = cb;

  double worst = 0.0;
  for (int j = 0; j <= 2 * n; ++j) {
    worst = std::max(worst, std::abs(real_inner(s.e1, s.unitary[j]) - row_e1[j]));
    worst = std::max(worst, std::abs(real_inner(s.e2, s.unitary[j]) - row_e2[j]));
  }
  return worst;
}

// ------------------------------------------------------------------ FrameGrid

FrameGrid::FrameGrid(const Immersion& imm, int resolution, FrameOptions opts)
    : n_(resolution), periodic_(imm.periodic()), dim_(imm.dimension()), opts_(opts) {
  if (resolution < 8) throw std::invalid_argument("grid resolution must be at least 8");
  const std::size_t cells = static_cast<std::size_t>(n_) * n_;
  status_.assign(cells, CellStatus::ok);
  jets_.resize(cells);
  samples_.resize(cells);
  messages_.resize(cells);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const std::size_t k = index(i, j);
      const Param u = param(i, j);
      try {
        jets_[k] = imm.jet(u);
      } catch (const std::exception& e) {
        status_[k] = CellStatus::evaluation_failed;
        messages_[k] = e.what();
        continue;
      }
      try {
        samples_[k] = build_frame_sample(*jets_[k], u, opts_);
      } catch (const LegendrianAmbiguityError&) {
        throw;
      } catch (const std::exception& e) {
        status_[k] = CellStatus::degenerate;
        messages_[k] = e.what();
      }
    }
  }
}

WindowResult FrameGrid::window(int i, int j) const {
  WindowResult out;
  const auto& centre = samples_[index(i, j)];
  if (!centre) return out;

  FrameWindow w;
  w.spacing = spacing();
  const Gauge gauge{centre->e1, centre->e2, centre->kind};
  for (int axis = 0; axis < 2; ++axis) {
    for (int k = -FrameWindow::radius; k <= FrameWindow::radius; ++k) {
      int ii = axis == 0 ? i + k : i;
      int jj = axis == 1 ? j + k : j;
      if (periodic_) {
        ii = (ii % n_ + n_) % n_;
        jj = (jj % n_ + n_) % n_;
      } else if (ii < 0 || ii >= n_ || jj < 0 || jj >= n_) {
        out.status = WindowStatus::boundary;
        return out;
      }
      FrameSample& slot = w.along[axis][k + FrameWindow::radius];
      const auto& stored = samples_[index(ii, jj)];
      const auto& jet = jets_[index(ii, jj)];
      if (!jet) return out;
      if (stored && stored->kind == gauge.kind && real_inner(stored->e1, gauge.e1) >= 0 &&
          real_inner(stored->e2, gauge.e2) >= 0) {
        slot = *stored;
        continue;
      }
      try {
        slot = build_frame_sample(*jet, param(ii, jj), opts_, &gauge);
      } catch (const std::exception&) {
        return out;
      }
    }
  }
  out.status = WindowStatus::ok;
  out.window = std::move(w);
  return out;
}

}  // namespace cgeom
