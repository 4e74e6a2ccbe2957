#pragma once

#include <cstdint>
#include <vector>

#include "nin/state.hpp"

namespace nin {

struct trajectory {
  geometry geo;
  std::vector<wave_field> snapshots;

  int step_count() const { return static_cast<int>(snapshots.size()) - 1; }
};

// Pairwise mixing across pairs (2k, 2k+1), site 2K+1 wrapping to 1. With x the
// even-site and y the odd-site position, the pair becomes (x+y, y-x); both
// reads happen before either write (the two ring shifts are simultaneous).
necklace_state scatter(const necklace_state& s);
necklace_state scatter_inverse(const necklace_state& s);
// The same map performed as whole-ring shifts on the spin plane, exponents
// snapshotted up front; must agree bit-exactly with scatter(). The pairs are
// independent, so any processing order gives the same state.
necklace_state scatter_by_ring_shifts(const necklace_state& s);
necklace_state scatter_by_ring_shifts(const necklace_state& s,
                                      const std::vector<int>& pair_order);

// Whole-necklace transport: odd-site content moves two sites left, even-site
// content two sites right.
necklace_state kinematic_shift(const necklace_state& s);
necklace_state kinematic_shift_inverse(const necklace_state& s);
// The same transport as one exchange-sweep pass (even edges, then odd edges)
// applied to every transverse level of the spin plane; must agree bit-exactly
// with kinematic_shift.
necklace_state kinematic_shift_by_transpositions(const necklace_state& s);

// One automaton tick: kinematic_shift(scatter(s)) when mu == 1; general mu
// scales the mixing exponents ((x + mu*y, y - mu*x) before transport).
necklace_state step(const necklace_state& s, int mu = 1);
// Exact inverse; requires gcd(1 + mu^2, M) == 1 (always true for mu == 1 and
// odd M), otherwise throws noninvertible_error.
necklace_state step_inverse(const necklace_state& s, int mu = 1);

// Reused channel buffers for allocation-free stepping; empty buffers are
// sized on first use.
struct step_scratch {
  std::vector<spin_t> x, y, a, b;
};
void step_in_place(necklace_state& s, step_scratch& scratch);
void step_inverse_in_place(necklace_state& s, step_scratch& scratch);

trajectory run(const necklace_state& start, int n_steps, int mu = 1);

// Largest |wrap(...)| over both two-step recurrences
//   L[n+2][k] - L[n+1][k+1] - L[n+1][k-1] + (1+mu^2) L[n][k]   (mod M)
// and the mirrored right-channel form, across the whole trajectory.
// Zero on every genuine trajectory; needs >= 3 snapshots.
int second_order_residual(const trajectory& t, int mu = 1);

// Mixed-radix index of the restricted state (digit per site, value + L).
std::uint64_t state_count(const geometry& g);  // M^(2K); throws if > 2^63
std::uint64_t state_index(const necklace_state& s);
necklace_state state_from_index(const geometry& g, std::uint64_t index);

}  // namespace nin
