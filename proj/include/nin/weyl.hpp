#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nin/errors.hpp"

namespace nin {

// Periodic chain of 2S two-state spins, site labels 1..2S. Odd sites carry
// the left-moving channel, even sites the right-moving one; mover index k
// names site 2k-1 on the left channel and site 2k on the right channel.
struct spin_chain {
  int half_size;
  std::vector<std::int8_t> s;  // values -1/+1

  explicit spin_chain(int S);  // all down
  spin_chain(int S, const std::vector<int>& spins);

  int sites() const { return 2 * half_size; }
  int at(long long site) const;  // 1-based periodic
  void set(long long site, int v);

  bool operator==(const spin_chain&) const = default;
};

enum class chain_direction { left_handed, right_handed };

// One tick: odd-site contents move two sites left, even-site contents two
// sites right (swapped for right_handed, which is the exact inverse).
spin_chain chain_step(const spin_chain& c,
                      chain_direction dir = chain_direction::left_handed);
// The same tick as its two exchange sweeps: all even-edge swaps (2k, 2k+1)
// first, then all odd-edge swaps (2k-1, 2k); right_handed applies the sweeps
// in the opposite order. Must agree bit-exactly with chain_step.
spin_chain chain_step_by_transpositions(
    const spin_chain& c, chain_direction dir = chain_direction::left_handed);

// l ticks at once, l >= 1: left channel translates by l mover slots, right
// channel by -l.
spin_chain mover_step(const spin_chain& c, int l);

// Occupancy bits in one word, bit i = site i+1; needs 2S <= 64. The tick is
// two masked 2-bit rotations.
struct packed_chain {
  int half_size;
  std::uint64_t bits;

  bool operator==(const packed_chain&) const = default;
};
packed_chain pack(const spin_chain& c);
spin_chain unpack(const packed_chain& p);
packed_chain chain_step_packed(const packed_chain& p);

struct occupation_field {
  int half_size;
  std::vector<int> n;  // 0/1

  explicit occupation_field(int S);
  occupation_field(int S, const std::vector<int>& vals);

  bool operator==(const occupation_field&) const = default;
};

// Iterated pairwise sums; at level r every value lies in [0, 2^r].
struct block_field {
  int half_size;
  int level;
  std::vector<long long> values;

  block_field(int S, int level_, const std::vector<long long>& vals);

  bool operator==(const block_field&) const = default;
};

occupation_field occupation(const spin_chain& c);  // n = (s+1)/2
spin_chain chain_from_occupation(const occupation_field& f);

// v'[k] = v[k] + v[k+2] (periodic), level + 1.
block_field block_transform(const occupation_field& f);
block_field block_transform(const block_field& f);

// Exact integer inverse, one level down. The sums couple sites of equal
// parity into two cycles of length S; for even S the system is singular
// (noninvertible_error), and inputs off the image lattice raise state_error.
block_field block_inverse(const block_field& f);
occupation_field to_occupation(const block_field& f);  // level 0 only

// (s^L + s^R, s^L - s^R) per mover index k = 1..S.
std::pair<std::vector<int>, std::vector<int>> spinor_components(
    const spin_chain& c);

int up_count_odd_sites(const spin_chain& c);
int up_count_even_sites(const spin_chain& c);

spin_chain random_chain(int S, std::uint64_t seed);

}  // namespace nin
