#pragma once

#include <cstdint>

#include "nin/errors.hpp"

namespace nin {

// Transverse position / field value; always in [-L, L] with L = (M-1)/2.
// int16 so that x+y and x-y of two in-range values still fit.
using spin_t = std::int16_t;

inline constexpr int max_transverse = 32767;

// Unique representative of v mod M in [-(M-1)/2, (M-1)/2]. M must be odd >= 3.
int wrap_value(long long v, int transverse);

// Inverse of 2 mod odd M, i.e. (M+1)/2.
int half_inverse(int transverse);

void require_transverse(int transverse);

// Lattice shape: a ring of 2K sites (labels 1..2K, periodic), each carrying a
// transverse ring of M spins (positions -L..L, periodic). time_step only
// scales derived Hamiltonians; the automaton itself is integer-exact.
struct geometry {
  int pairs;
  int transverse;
  double time_step;

  explicit geometry(int pairs_, int transverse_, double time_step_ = 1.0);

  int sites() const { return 2 * pairs; }
  int half_width() const { return (transverse - 1) / 2; }
  int wrap(long long v) const { return wrap_value(v, transverse); }

  // 1-based periodic site label -> 0-based storage index
  int site_index(long long site) const {
    const long long n = sites();
    const long long i = (site - 1) % n;
    return static_cast<int>(i < 0 ? i + n : i);
  }

  bool operator==(const geometry&) const = default;
};

}  // namespace nin
