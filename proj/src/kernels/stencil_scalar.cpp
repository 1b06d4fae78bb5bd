#include <limits>

#include "cgeom/kernels.hpp"

namespace cgeom::kernels::detail {

namespace {

inline double stencil(double m2, double m1, double p1, double p2, double inv) {
  return ((p1 - m1) * 8.0 - (p2 - m2)) * inv;
}

}  // namespace

void derivative_scalar(const double* in, double* out, int n, int axis, bool periodic, double spacing) {
  const double inv = 1.0 / (12.0 * spacing);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto wrap = [n](int k) { return (k % n + n) % n; };

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int c = axis == 0 ? i : j;
      if (!periodic && (c < 2 || c >= n - 2)) {
        out[i * n + j] = nan;
        continue;
      }
      auto at = [&](int k) {
        const int kk = wrap(c + k);
        return axis == 0 ? in[kk * n + j] : in[i * n + kk];
      };
      out[i * n + j] = stencil(at(-2), at(-1), at(1), at(2), inv);
    }
  }
}

}  // namespace cgeom::kernels::detail
