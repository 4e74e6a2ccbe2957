#pragma once

#include <cstdint>
#include <vector>

#include "nin/geometry.hpp"

namespace nin {

// Integer field over the longitudinal ring. Odd sites carry the left-moving
// channel, even sites the right-moving one; values[i] belongs to site i+1.
struct wave_field {
  geometry geo;
  std::vector<spin_t> values;

  explicit wave_field(const geometry& g);
  wave_field(const geometry& g, const std::vector<int>& vals);

  int at(long long site) const { return values[geo.site_index(site)]; }
  void set(long long site, int v);
  int left(long long j) const { return at(2 * j - 1); }
  int right(long long j) const { return at(2 * j); }

  bool operator==(const wave_field&) const = default;
};

// Restricted lattice state: exactly one up spin per transverse ring, stored
// compactly as that spin's position per site. Canonical fast representation;
// the full spin plane below is materialized on demand.
struct necklace_state {
  geometry geo;
  std::vector<spin_t> positions;

  explicit necklace_state(const geometry& g);
  necklace_state(const geometry& g, const std::vector<int>& pos);

  int at(long long site) const { return positions[geo.site_index(site)]; }
  void set(long long site, int v);

  bool operator==(const necklace_state&) const = default;
};

// Full 2K x M plane of two-state spins, one row per site, column l+L.
struct spin_plane {
  geometry geo;
  std::vector<std::int8_t> s;  // row-major, values -1/+1

  explicit spin_plane(const geometry& g);  // all down

  std::int8_t cell(long long site, int l) const { return s[offset(site, l)]; }
  void set_cell(long long site, int l, std::int8_t v) { s[offset(site, l)] = v; }

 private:
  std::size_t offset(long long site, int l) const;
};

void validate(const wave_field& f);
void validate(const necklace_state& s);

// positions <- values, value-preserving bijection on the restricted space
necklace_state encode(const wave_field& f);
wave_field decode(const necklace_state& s);

spin_plane to_spin_plane(const necklace_state& s);
// Scans every row for its single up spin; throws state_error when a row has
// zero or several.
necklace_state from_spin_plane(const spin_plane& p);
// Same scan via the observable sum_l l*(s+1)/2 evaluated cell by cell.
wave_field decode_bitwise(const spin_plane& p);

// Exchanges the two cells; an involution. l1/l2 must lie in [-L, L]; the site
// label is periodic.
void transpose_spins(spin_plane& p, long long site, int l1, int l2);

// Moves the up spin of one ring by `steps` positions (periodic).
void shift_necklace(necklace_state& s, long long site, long long steps);
// The same rotation as sweeps of nearest-neighbor exchanges on the spin level:
// one unit shift is the M-1 swaps (l, l+1) for l = L-1 down to -L (ascending
// order for the negative direction). Must agree bit-exactly with
// shift_necklace.
void shift_necklace_spins(spin_plane& p, long long site, long long steps);

wave_field random_field(const geometry& g, std::uint64_t seed);
necklace_state random_state(const geometry& g, std::uint64_t seed);

}  // namespace nin
