#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "cgeom/frames.hpp"
#include "cgeom/grid.hpp"

namespace cgeom {

/// Distance from pi/2 below which tan(beta)-weighted quantities are left undefined.
inline constexpr double tan_guard = 1e-6;

enum class Axis { u1 = 0, u2 = 1 };
enum class Direction { e1, e2 };

/// Fourth-order central partial derivative; NaN in a window gives NaN.
ScalarGrid partial(const ScalarGrid& f, Axis axis);

struct MetricField {
  ScalarGrid g11, g12, g22;

  int resolution() const { return g11.resolution(); }
};

MetricField metric_field(const FrameGrid& frames);
/// Samples an analytic metric; det <= immersion_floor gives undefined cells.
MetricField metric_field(int resolution, const std::function<MetricTensor(Param)>& g, bool periodic = true);

/// Coordinate components of e1 and e2 in the basis (d/du1, d/du2).
struct FrameCoordinates {
  ScalarGrid e1_u1, e1_u2, e2_u1, e2_u2;
};

FrameCoordinates frame_coordinates(const FrameGrid& frames);
/// e1 = d/du1 normalized, e2 by Gram-Schmidt.
FrameCoordinates orthonormal_coordinates(const MetricField& metric);

struct OneFormSample {
  double on_e1 = 0.0;
  double on_e2 = 0.0;
};

struct OneFormGrid {
  ScalarGrid on_e1, on_e2;

  OneFormSample at(int i, int j) const { return {on_e1(i, j), on_e2(i, j)}; }
};

struct Gradient {
  OneFormGrid form;
  ScalarGrid norm_sq;
};

/// df on an orthonormal frame; |grad f|^2 = df(e1)^2 + df(e2)^2.
Gradient scalar_gradient(const ScalarGrid& f, const FrameCoordinates& frame);
/// Frame taken from orthonormal_coordinates(metric).
Gradient scalar_gradient(const ScalarGrid& f, const MetricField& metric);

/// (1/sqrt(det g)) d_i(sqrt(det g) g^{ij} d_j f).
ScalarGrid laplace_beltrami(const ScalarGrid& f, const MetricField& metric);

/// Brioschi formula on E = g11, F = g12, G = g22.
ScalarGrid gaussian_curvature_intrinsic(const MetricField& metric);

ScalarGrid directional_derivative(const ScalarGrid& f, const FrameCoordinates& frame, Direction d);

// ------------------------------------------------------- window quantities

using VectorSelector = std::function<AmbientVector(const FrameSample&)>;

/// D_X V at the window centre for X = x1 d/du1 + x2 d/du2: the FD derivative
/// of the sampled ambient field along the surface, projected tangent to the sphere.
AmbientVector sphere_covariant_derivative(const FrameWindow& w, const VectorSelector& field,
                                          std::array<double, 2> direction_coords);
AmbientVector sphere_covariant_derivative(const FrameWindow& w, const VectorSelector& field, Direction d);

/// w1^2(e_a) = <D_{e_a} f1, f2>; nullopt for n = 1.
std::optional<OneFormSample> connection_form_w12(const FrameWindow& w);
/// <D f2, f1>, the other half of the antisymmetry pair; nullopt for n = 1.
std::optional<OneFormSample> connection_form_w21(const FrameWindow& w);

/// theta_2^1(e_a) = <D_{e_a} e2, e1>; nullopt within tan_guard of pi/2.
std::optional<OneFormSample> darboux_connection_theta21(const FrameWindow& w);

struct SecondFundamentalForm {
  /// h[lambda][j][k], lambda over e_3 .. e_{2n+1}; symmetrized.
  std::vector<std::array<std::array<double, 2>, 2>> h;
  /// max_lambda |raw h_12 - raw h_21| before symmetrizing.
  double asymmetry = 0.0;

  /// sum_lambda (h11 h22 - h12^2)
  double determinant_sum() const;
};

SecondFundamentalForm second_fundamental_form(const FrameWindow& w);

/// Euclidean norm over lambda of h^lambda_11 + h^lambda_22.
double mean_curvature_norm(const SecondFundamentalForm& sff);

/// d alpha on (e1, e2) from the gauge-aligned alpha values of the window.
std::optional<OneFormSample> kahler_angle_differential(const FrameWindow& w);

// ------------------------------------------------------------------ bundle

struct CellInfo {
  CellStatus status = CellStatus::degenerate;
  WindowStatus window = WindowStatus::degenerate;
  FrameKind kind = FrameKind::fallback;
  bool legendrian = false;
};

/// Everything the identities consume, on one grid. Undefined cells are NaN.
/// Fields are plain data so tests can perturb them (e.g. K + 0.1).
struct GeometryFields {
  int resolution = 0;
  bool periodic = true;
  Dimension dimension = Dimension::S5;

  std::vector<CellInfo> cells;

  ScalarGrid beta, alpha, cos_alpha;
  MetricField metric;
  FrameCoordinates frame;

  ScalarGrid curvature;        // intrinsic K
  Gradient grad_beta;
  ScalarGrid laplacian_beta;
  OneFormGrid dalpha;
  OneFormGrid w12, w21;
  OneFormGrid theta21;
  ScalarGrid mean_curvature;
  ScalarGrid gauss_sum;        // sum_lambda det h^lambda
  ScalarGrid h_asymmetry;

  const CellInfo& cell(int i, int j) const { return cells[static_cast<std::size_t>(i) * resolution + j]; }
};

GeometryFields compute_geometry(const FrameGrid& frames);

}  // namespace cgeom
