// Compiled with -mavx2; dispatch and the cpuid check live in kernels.cpp.
#if defined(__AVX2__)

#include <immintrin.h>

#include "nin/kernels.hpp"

namespace nin::kernels {

const backend* avx2_backend_impl();

namespace {

// 16 signed 16-bit lanes. mix needs |x+y| <= M-1 <= 32766 (any supported M);
// unmix adds M to an odd difference before halving, so it needs
// 2M-2 <= 32766, i.e. M <= 16383. backend.max_transverse records that.
inline __m256i reduce_centered(__m256i v, __m256i vm, __m256i vh, __m256i vnh) {
  v = _mm256_sub_epi16(v, _mm256_and_si256(_mm256_cmpgt_epi16(v, vh), vm));
  v = _mm256_add_epi16(v, _mm256_and_si256(_mm256_cmpgt_epi16(vnh, v), vm));
  return v;
}

void mix_avx2(const spin_t* x, const spin_t* y, spin_t* a, spin_t* b,
              std::size_t n, int transverse) {
  const short half = static_cast<short>((transverse - 1) / 2);
  const __m256i vm = _mm256_set1_epi16(static_cast<short>(transverse));
  const __m256i vh = _mm256_set1_epi16(half);
  const __m256i vnh = _mm256_set1_epi16(static_cast<short>(-half));
  std::size_t p = 0;
  for (; p + 16 <= n; p += 16) {
    const __m256i vx =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + p));
    const __m256i vy =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + p));
    const __m256i s = reduce_centered(_mm256_add_epi16(vx, vy), vm, vh, vnh);
    const __m256i d = reduce_centered(_mm256_sub_epi16(vy, vx), vm, vh, vnh);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(a + p), s);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(b + p), d);
  }
  if (p < n) {
    scalar_backend().mix(x + p, y + p, a + p, b + p, n - p, transverse);
  }
}

// Halves t = a -+ b in the mod-M sense without a multiply: an odd t becomes
// even after +M, the arithmetic shift is then exact, and one conditional -M
// recenters. Even t is already in [-L, L] after the shift.
inline __m256i halve_mod(__m256i t, __m256i vm, __m256i vh, __m256i one) {
  const __m256i odd = _mm256_cmpeq_epi16(_mm256_and_si256(t, one), one);
  t = _mm256_add_epi16(t, _mm256_and_si256(odd, vm));
  t = _mm256_srai_epi16(t, 1);
  return _mm256_sub_epi16(t, _mm256_and_si256(_mm256_cmpgt_epi16(t, vh), vm));
}

void unmix_avx2(const spin_t* a, const spin_t* b, spin_t* x, spin_t* y,
                std::size_t n, int transverse) {
  const short half = static_cast<short>((transverse - 1) / 2);
  const __m256i vm = _mm256_set1_epi16(static_cast<short>(transverse));
  const __m256i vh = _mm256_set1_epi16(half);
  const __m256i one = _mm256_set1_epi16(1);
  std::size_t p = 0;
  for (; p + 16 <= n; p += 16) {
    const __m256i va =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + p));
    const __m256i vb =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + p));
    const __m256i vx = halve_mod(_mm256_sub_epi16(va, vb), vm, vh, one);
    const __m256i vy = halve_mod(_mm256_add_epi16(va, vb), vm, vh, one);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(x + p), vx);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + p), vy);
  }
  if (p < n) {
    scalar_backend().unmix(a + p, b + p, x + p, y + p, n - p, transverse);
  }
}

}  // namespace

const backend* avx2_backend_impl() {
  static const backend impl{"avx2", &mix_avx2, &unmix_avx2, 16383};
  return &impl;
}

}  // namespace nin::kernels

#endif  // __AVX2__
