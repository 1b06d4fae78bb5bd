#pragma once

#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgeom/ambient.hpp"

namespace cgeom {

/// Point (u1, u2) of the parameter square [0, 2pi)^2, in radians.
struct Param {
  double u1 = 0.0;
  double u2 = 0.0;
};

/// Position and first partials of an immersion at one parameter point.
struct Jet {
  AmbientVector position;
  AmbientVector d_u1;
  AmbientVector d_u2;
};

/// Below this determinant of the induced metric a point counts as degenerate.
inline constexpr double immersion_floor = 1e-8;

class DegeneratePointError : public std::runtime_error {
 public:
  DegeneratePointError(const std::string& what, Param at) : std::runtime_error(what), at_(at) {}
  Param where() const { return at_; }

 private:
  Param at_;
};

/// A map (u1, u2) -> S^{2n+1} with first-derivative access.
///
/// The jet function must be re-entrant; the built-ins and DSL immersions are
/// pure functions of their captured, immutable state.
class Immersion {
 public:
  using JetFunction = std::function<Jet(Param)>;

  Immersion(std::string label, Dimension dim, JetFunction jet, bool periodic = true);

  const std::string& label() const { return label_; }
  Dimension dimension() const { return dim_; }
  bool periodic() const { return periodic_; }

  Jet jet(Param u) const;
  AmbientVector evaluate(Param u) const { return jet(u).position; }

  /// Warnings attached at registration (DSL validation results).
  const std::vector<std::string>& warnings() const { return warnings_; }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

 private:
  std::string label_;
  Dimension dim_;
  JetFunction jet_;
  bool periodic_;
  std::vector<std::string> warnings_;
};

/// (sqrt3/3)(e^{iu1}, e^{iu2}, e^{-i(u1+u2)})
Immersion builtin_legendrian_torus(Dimension dim = Dimension::S5);
/// (sqrt3/3)(e^{iu1}, e^{iu2}, e^{i(u2-u1)})
Immersion builtin_generalized_clifford_torus(Dimension dim = Dimension::S5);
/// (sqrt2/2)(e^{iu1}, e^{iu2}, 0)
Immersion builtin_clifford_torus(Dimension dim = Dimension::S5);

struct BuiltinInfo {
  std::string name;
  std::string formula;
};
const std::vector<BuiltinInfo>& builtin_surfaces();

/// Looks up a built-in by CLI name; nullopt for unknown names.
std::optional<Immersion> builtin_by_name(const std::string& name, Dimension dim = Dimension::S5);

/// First fundamental form g_ij = <df/du_i, df/du_j>.
struct MetricTensor {
  double g11 = 0.0;
  double g12 = 0.0;
  double g22 = 0.0;

  double det() const { return g11 * g22 - g12 * g12; }
};

MetricTensor metric_from_jet(const Jet& jet);

/// Throws DegeneratePointError when det g <= immersion_floor.
MetricTensor induced_metric(const Immersion& imm, Param u);

struct Violation {
  double value = 0.0;
  Param at{};
};

struct ValidationReport {
  int resolution = 0;
  Violation sphere;          // max | |f|^2 - 1 |
  Violation tangency;        // max |<df/du_i, f>|
  Violation min_det;         // min det g
  int evaluation_failures = 0;
  std::optional<Param> first_failure;
  bool sphere_ok = true;
  bool tangency_ok = true;
  bool nondegenerate = true;
  std::vector<std::string> messages;

  bool ok() const { return sphere_ok && tangency_ok && nondegenerate && evaluation_failures == 0; }
};

struct ValidationOptions {
  double sphere_tolerance = 1e-10;
  double tangency_tolerance = 1e-10;
  double metric_floor = immersion_floor;
};

/// Samples the immersion on a resolution x resolution grid; failures are reported, not thrown.
ValidationReport validate_immersion(const Immersion& imm, int resolution, ValidationOptions opts = {});

inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace cgeom
