#pragma once

#include <optional>
#include <string_view>

namespace cgeom::kernels {

/// 5-point 4th-order central first derivative on an n x n row-major grid:
///   out = ((f[+1] - f[-1]) * 8 - (f[+2] - f[-2])) / (12 h)
/// axis 0 differentiates across rows (u1), axis 1 along a row (u2).
/// Periodic grids wrap; otherwise the two cells nearest each edge get NaN.
///
/// Every backend evaluates the same expression tree without contraction, so
/// results are bit-identical across backends.

enum class Backend { scalar, avx2 };

std::string_view name(Backend b);

/// True when the backend was compiled in and the CPU supports it.
bool available(Backend b);

/// The backend used by derivative(); the best available unless overridden by
/// set_backend() or the CGEOM_SIMD=scalar environment variable.
Backend active_backend();

/// Forces a backend (nullopt restores automatic selection). Not thread-safe;
/// call before launching grid work.
void set_backend(std::optional<Backend> b);

void derivative(const double* in, double* out, int n, int axis, bool periodic, double spacing);
void derivative(Backend b, const double* in, double* out, int n, int axis, bool periodic, double spacing);

namespace detail {
void derivative_scalar(const double* in, double* out, int n, int axis, bool periodic, double spacing);
#if defined(CGEOM_HAVE_AVX2)
void derivative_avx2(const double* in, double* out, int n, int axis, bool periodic, double spacing);
#endif
}  // namespace detail

}  // namespace cgeom::kernels
