#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgeom/ambient.hpp"
#include "cgeom/surface.hpp"

namespace cgeom {

/// Below this sin(beta) the contact projection v and the Kahler angle are undefined.
inline constexpr double sin_beta_floor = 1e-7;
/// Within this of 0 or pi the f-frame denominators degenerate and the fallback frame is used.
inline constexpr double alpha_floor = 1e-7;
/// Tangent planes whose xi-component is below this count as lying in the contact distribution.
inline constexpr double legendrian_tolerance = 1e-9;
/// Threshold for the sign rules (|cos alpha|, component magnitude).
inline constexpr double sign_rule_tolerance = 1e-9;

class LegendrianAmbiguityError : public std::runtime_error {
 public:
  LegendrianAmbiguityError(const std::string& what, Param at) : std::runtime_error(what), at_(at) {}
  Param where() const { return at_; }

 private:
  Param at_;
};

class FrameDegenerateError : public std::runtime_error {
 public:
  FrameDegenerateError(const std::string& what, Param at) : std::runtime_error(what), at_(at) {}
  Param where() const { return at_; }

 private:
  Param at_;
};

struct FrameOptions {
  /// Throw LegendrianAmbiguityError instead of picking the d/du1 direction.
  bool strict_legendrian = false;
};

/// interior: f1 = (e1 - iv)/(2cos(a/2)), f2 = (e1 + iv)/(2sin(a/2)).
/// fallback: f1 = -iv (or e1 when v is undefined), f3 = i f1, e3 = f2, e5 = -cos(b) f3 + sin(b) xi.
enum class FrameKind { interior, fallback };

/// Oriented orthonormal tangent pair with e1 in TS cap Delta.
struct TangentFrame {
  AmbientVector e1;
  AmbientVector e2;
  bool legendrian = false;
};

/// Everything the frame construction produces at one parameter point.
struct FrameSample {
  Param u;
  AmbientVector position;
  AmbientVector xi;
  MetricTensor metric;

  AmbientVector e1, e2;
  /// Coordinate components of e1, e2 in the basis (df/du1, df/du2).
  std::array<double, 2> e1_coords{}, e2_coords{};
  bool legendrian = false;

  double cos_beta = 0.0;
  double beta = 0.0;

  std::optional<AmbientVector> v;
  std::optional<double> alpha;
  double cos_alpha = 0.0;

  FrameKind kind = FrameKind::fallback;
  /// e1, e2, e_{n+1}, e_{n+2}, e_{2n+1} (n = 2) or e1, e2, e3 (n = 1).
  std::vector<AmbientVector> darboux;
  /// f_1..f_n, f_{n+1} = i f_1, .., f_{2n} = i f_n, f_{2n+1} = xi.
  std::vector<AmbientVector> unitary;

  Dimension dimension() const { return position.size() == 3 ? Dimension::S5 : Dimension::S3; }
};

/// Sign references for rebuilding a neighbour frame consistently with a centre frame.
struct Gauge {
  AmbientVector e1;
  AmbientVector e2;
  FrameKind kind;
};

TangentFrame tangent_contact_frame(const Immersion& imm, Param u, FrameOptions opts = {});

/// beta from the sample's e2: atan2(|e2 - cos(beta) xi|, <xi, e2>).
double contact_angle(const FrameSample& s);

/// alpha with cos(alpha) = <i e1, v>; nullopt when sin(beta) < sin_beta_floor.
std::optional<double> kahler_angle(const FrameSample& s);

/// Fills the unitary and Darboux frames. `forced` overrides the kind selection
/// (used by aligned stencil windows). Throws FrameDegenerateError.
FrameSample darboux_frame(FrameSample s, std::optional<FrameKind> forced = std::nullopt);

/// Full construction from a jet. With a gauge, the sign rules are replaced by
/// alignment with the gauge vectors and beta, alpha may leave [0, pi/2].
FrameSample build_frame_sample(const Jet& jet, Param u, FrameOptions opts = {}, const Gauge* gauge = nullptr);

FrameSample frame_at(const Immersion& imm, Param u, FrameOptions opts = {});

/// Max |w^j(e_a) - table| over the restricted-coframe table.
double coframe_restriction_check(const FrameSample& s);

/// max |G - I| for the real Gram matrix of the vectors.
double orthonormality_defect(std::span<const AmbientVector> vectors);

// ------------------------------------------------------------------ grids

enum class CellStatus { ok, degenerate, evaluation_failed };

enum class WindowStatus { ok, boundary, degenerate };

/// Centre frame plus the four stencil neighbours along each axis, all in the centre's gauge.
struct FrameWindow {
  static constexpr int radius = 2;
  /// along[axis][k] holds offset k - 2; along[axis][2] is the centre.
  std::array<std::array<FrameSample, 5>, 2> along;
  double spacing = 0.0;

  const FrameSample& center() const { return along[0][2]; }
};

struct WindowResult {
  WindowStatus status = WindowStatus::degenerate;
  std::optional<FrameWindow> window;
};

/// Frames sampled on an N x N periodic parameter grid, u = (i, j) * 2pi/N.
class FrameGrid {
 public:
  FrameGrid(const Immersion& imm, int resolution, FrameOptions opts = {});

  int resolution() const { return n_; }
  double spacing() const { return two_pi / n_; }
  bool periodic() const { return periodic_; }
  Dimension dimension() const { return dim_; }
  Param param(int i, int j) const { return {i * spacing(), j * spacing()}; }

  CellStatus status(int i, int j) const { return status_[index(i, j)]; }
  const std::optional<FrameSample>& sample(int i, int j) const { return samples_[index(i, j)]; }
  const std::optional<Jet>& jet(int i, int j) const { return jets_[index(i, j)]; }
  const std::string& message(int i, int j) const { return messages_[index(i, j)]; }

  /// Stencil window around (i, j) with neighbours rebuilt in the centre gauge.
  WindowResult window(int i, int j) const;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  int n_;
  bool periodic_;
  Dimension dim_;
  FrameOptions opts_;
  std::vector<CellStatus> status_;
  std::vector<std::optional<Jet>> jets_;
  std::vector<std::optional<FrameSample>> samples_;
  std::vector<std::string> messages_;
};

}  // namespace cgeom
