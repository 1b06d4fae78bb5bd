// Compiled with -mavx2 only; reached through the runtime dispatcher after a CPUID check.
#include <immintrin.h>

#include <limits>

#include "cgeom/kernels.hpp"

namespace cgeom::kernels::detail {

namespace {

inline __m256d stencil4(__m256d m2, __m256d m1, __m256d p1, __m256d p2, __m256d eight, __m256d inv) {
  return _mm256_mul_pd(_mm256_sub_pd(_mm256_mul_pd(_mm256_sub_pd(p1, m1), eight), _mm256_sub_pd(p2, m2)), inv);
}

inline double stencil1(double m2, double m1, double p1, double p2, double inv) {
  return ((p1 - m1) * 8.0 - (p2 - m2)) * inv;
}

void across_rows(const double* in, double* out, int n, bool periodic, double inv) {
  const __m256d eight = _mm256_set1_pd(8.0);
  const __m256d vinv = _mm256_set1_pd(inv);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto wrap = [n](int k) { return (k % n + n) % n; };

  for (int i = 0; i < n; ++i) {
    double* dst = out + i * n;
    if (!periodic && (i < 2 || i >= n - 2)) {
      for (int j = 0; j < n; ++j) dst[j] = nan;
      continue;
    }
    const double* m2 = in + wrap(i - 2) * n;
    const double* m1 = in + wrap(i - 1) * n;
    const double* p1 = in + wrap(i + 1) * n;
    const double* p2 = in + wrap(i + 2) * n;
    int j = 0;
    for (; j + 4 <= n; j += 4) {
      const __m256d r = stencil4(_mm256_loadu_pd(m2 + j), _mm256_loadu_pd(m1 + j), _mm256_loadu_pd(p1 + j),
                                 _mm256_loadu_pd(p2 + j), eight, vinv);
      _mm256_storeu_pd(dst + j, r);
    }
    for (; j < n; ++j) dst[j] = stencil1(m2[j], m1[j], p1[j], p2[j], inv);
  }
}

void along_row(const double* in, double* out, int n, bool periodic, double inv) {
  const __m256d eight = _mm256_set1_pd(8.0);
  const __m256d vinv = _mm256_set1_pd(inv);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto wrap = [n](int k) { return (k % n + n) % n; };

  for (int i = 0; i < n; ++i) {
    const double* row = in + i * n;
    double* dst = out + i * n;
    auto edge = [&](int j) {
      if (!periodic) {
        dst[j] = nan;
      } else {
        dst[j] = stencil1(row[wrap(j - 2)], row[wrap(j - 1)], row[wrap(j + 1)], row[wrap(j + 2)], inv);
      }
    };
    edge(0);
    edge(1);
    int j = 2;
    for (; j + 4 <= n - 2; j += 4) {
      const __m256d r = stencil4(_mm256_loadu_pd(row + j - 2), _mm256_loadu_pd(row + j - 1),
                                 _mm256_loadu_pd(row + j + 1), _mm256_loadu_pd(row + j + 2), eight, vinv);
      _mm256_storeu_pd(dst + j, r);
    }
    for (; j < n - 2; ++j) dst[j] = stencil1(row[j - 2], row[j - 1], row[j + 1], row[j + 2], inv);
    edge(n - 2);
    edge(n - 1);
  }
}

}  // namespace

void derivative_avx2(const double* in, double* out, int n, int axis, bool periodic, double spacing) {
  const double inv = 1.0 / (12.0 * spacing);
  if (axis == 0) {
    across_rows(in, out, n, periodic, inv);
  } else {
    along_row(in, out, n, periodic, inv);
  }
}

}  // namespace cgeom::kernels::detail
