#include <cstdlib>
#include <stdexcept>
#include <string>

#include "cgeom/kernels.hpp"

namespace cgeom::kernels {

namespace {

std::optional<Backend> g_override;

Backend detect() {
  if (const char* env = std::getenv("CGEOM_SIMD"); env && std::string(env) == "scalar") return Backend::scalar;
  return available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

}  // namespace

std::string_view name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool available(Backend b) {
  switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2:
#if defined(CGEOM_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() {
  static const Backend detected = detect();
  return g_override.value_or(detected);
}

void set_backend(std::optional<Backend> b) {
  if (b && !available(*b)) throw std::runtime_error("SIMD backend not available: " + std::string(name(*b)));
  g_override = b;
}

void derivative(Backend b, const double* in, double* out, int n, int axis, bool periodic, double spacing) {
  if (n < 5) throw std::invalid_argument("stencil needs at least 5 cells per axis");
  switch (b) {
    case Backend::scalar:
      detail::derivative_scalar(in, out, n, axis, periodic, spacing);
      return;
    case Backend::avx2:
#if defined(CGEOM_HAVE_AVX2)
      detail::derivative_avx2(in, out, n, axis, periodic, spacing);
      return;
#else
      throw std::runtime_error("avx2 backend not compiled in");
#endif
  }
}

void derivative(const double* in, double* out, int n, int axis, bool periodic, double spacing) {
  derivative(active_backend(), in, out, n, axis, periodic, spacing);
}

}  // namespace cgeom::kernels
