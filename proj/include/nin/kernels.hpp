#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nin/geometry.hpp"

namespace nin::kernels {

// Elementwise pair kernels over channel-split buffers of length n, all values
// in [-L, L]:
//   mix:    a[p] = wrap(x[p] + y[p]),        b[p] = wrap(y[p] - x[p])
//   unmix:  x[p] = wrap((a[p] - b[p]) / 2),  y[p] = wrap((a[p] + b[p]) / 2)
// (division by 2 in the mod-M sense; M odd). In/out ranges may not alias.
using pair_fn = void (*)(const spin_t* x, const spin_t* y, spin_t* a,
                         spin_t* b, std::size_t n, int transverse);

struct backend {
  const char* name;
  pair_fn mix;
  pair_fn unmix;
  int max_transverse;  // largest M the lane width supports without overflow
};

const backend& scalar_backend();
// nullptr when the build or the running CPU lacks AVX2.
const backend* avx2_backend();

std::vector<const backend*> available_backends();

// Picks the best available backend unless overridden by force_backend() or
// the NIN_KERNEL environment variable ("scalar", "avx2", "auto").
const backend& active_backend();
void force_backend(std::string_view name);

// The active backend when it supports this M, otherwise scalar.
const backend& backend_for(int transverse);

}  // namespace nin::kernels
