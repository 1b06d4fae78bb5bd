#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cgeom/geometry.hpp"

namespace cgeom {

enum class Identity {
  gauss_full,       // K = 1 - |grad b + cos a e1|^2 - (1 + sin^2 b)|da/2 + w12|^2
  gauss_beta,       // K in terms of beta, its derivatives and alpha
  laplacian,        // tan b Lap b = ...
  theta21,          // theta_2^1 = tan b (db o J - 2 cos a theta^2)
  null_kahler_w12,  // w12 = 0 in the null-Kahler frame
  gauss_equation,   // K = 1 + sum_lambda det h^lambda
};

inline constexpr std::array<Identity, 6> all_identities{Identity::gauss_full,  Identity::gauss_beta,
                                                        Identity::laplacian,   Identity::theta21,
                                                        Identity::null_kahler_w12, Identity::gauss_equation};

std::string_view identity_name(Identity id);
std::optional<Identity> identity_by_name(std::string_view name);

enum class SkipReason { legendrian, alpha_undefined, frame_degenerate, outside_regime, boundary };
inline constexpr int skip_reason_count = 5;
std::string_view skip_reason_name(SkipReason r);

/// Residual tolerance at N = 64; tol(N) = tol64 * (64/N)^4 + 1e-9.
double tolerance_at_64(Identity id);
double tolerance(Identity id, int resolution);

/// Orientation of the complex structure on the surface; `flipped` (J e1 = -e2)
/// exists only to show the theta21 residual detects the wrong convention.
enum class JOrientation { standard, flipped };

struct IdentityOptions {
  JOrientation j = JOrientation::standard;
  std::optional<double> tolerance_override;
};

struct ResidualField {
  ScalarGrid values;
  std::vector<std::optional<SkipReason>> skipped;
};

struct ResidualReport {
  std::string name;
  int resolution = 0;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  double rms = 0.0;
  int evaluated = 0;
  std::array<int, skip_reason_count> skipped{};
  std::optional<Param> worst;
  double tolerance = 0.0;
  bool pass = true;
  /// Nothing evaluated: passes, but the pass says nothing.
  bool vacuous = false;

  int skipped_total() const;
  int skipped_for(SkipReason r) const { return skipped[static_cast<int>(r)]; }
};

ResidualField residual_field(Identity id, const GeometryFields& g, const IdentityOptions& opts = {});
ResidualReport summarize(Identity id, const ResidualField& field, const IdentityOptions& opts = {});
ResidualReport evaluate_identity(Identity id, const GeometryFields& g, const IdentityOptions& opts = {});

ResidualReport residual_gauss_curvature_full(const GeometryFields& g);
ResidualReport residual_gauss_curvature_beta_form(const GeometryFields& g);
ResidualReport residual_laplacian(const GeometryFields& g);
ResidualReport residual_theta21(const GeometryFields& g, JOrientation j = JOrientation::standard);
ResidualReport null_kahler_w12_check(const GeometryFields& g);

/// -4 tan^2(beta) cos^2(alpha), the curvature of a constant-angle minimal surface.
/// Throws std::domain_error when cos(beta) vanishes.
double constant_angle_curvature(double beta, double alpha);

}  // namespace cgeom
