#include "nin/kernels.hpp"

namespace nin::kernels {

namespace {

// x+y and y-x lie in [-(M-1), M-1], so a single conditional +-M correction
// lands in [-L, L].
void mix_scalar(const spin_t* x, const spin_t* y, spin_t* a, spin_t* b,
                std::size_t n, int transverse) {
  const int half = (transverse - 1) / 2;
  for (std::size_t p = 0; p < n; ++p) {
    int s = x[p] + y[p];
    if (s > half) s -= transverse;
    if (s < -half) s += transverse;
    a[p] = static_cast<spin_t>(s);
    int d = y[p] - x[p];
    if (d > half) d -= transverse;
    if (d < -half) d += transverse;
    b[p] = static_cast<spin_t>(d);
  }
}

// Halving in the mod-M sense through the explicit inverse of 2; the vector
// backend uses the parity trick instead, so the two routes cross-check each
// other.
void unmix_scalar(const spin_t* a, const spin_t* b, spin_t* x, spin_t* y,
                  std::size_t n, int transverse) {
  const int half = (transverse - 1) / 2;
  const int inv2 = (transverse + 1) / 2;
  for (std::size_t p = 0; p < n; ++p) {
    int t = (a[p] - b[p]) * inv2 % transverse;
    if (t > half) t -= transverse;
    if (t < -half) t += transverse;
    x[p] = static_cast<spin_t>(t);
    int u = (a[p] + b[p]) * inv2 % transverse;
    if (u > half) u -= transverse;
    if (u < -half) u += transverse;
    y[p] = static_cast<spin_t>(u);
  }
}

}  // namespace

const backend& scalar_backend() {
  static const backend impl{"scalar", &mix_scalar, &unmix_scalar,
                            max_transverse};
  return impl;
}

}  // namespace nin::kernels
