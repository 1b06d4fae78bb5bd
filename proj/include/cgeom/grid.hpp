#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "cgeom/surface.hpp"

namespace cgeom {

/// N x N samples over the parameter torus, row-major with u1 along rows.
/// NaN marks an undefined sample; linear stencils propagate it, so a cell is
/// defined only when its whole window is.
class ScalarGrid {
 public:
  static constexpr double undefined = std::numeric_limits<double>::quiet_NaN();

  ScalarGrid() = default;
  explicit ScalarGrid(int resolution, bool periodic = true, double fill = 0.0)
      : n_(resolution), periodic_(periodic), values_(static_cast<std::size_t>(resolution) * resolution, fill) {}

  static ScalarGrid undefined_grid(int resolution, bool periodic = true) {
    return ScalarGrid(resolution, periodic, undefined);
  }

  int resolution() const { return n_; }
  double spacing() const { return two_pi / n_; }
  bool periodic() const { return periodic_; }
  Param param(int i, int j) const { return {i * spacing(), j * spacing()}; }

  double& operator()(int i, int j) { return values_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return values_[static_cast<std::size_t>(i) * n_ + j]; }
  bool defined(int i, int j) const { return !std::isnan((*this)(i, j)); }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  int defined_count() const {
    int c = 0;
    for (double v : values_) c += std::isnan(v) ? 0 : 1;
    return c;
  }

 private:
  int n_ = 0;
  bool periodic_ = true;
  std::vector<double> values_;
};

}  // namespace cgeom
