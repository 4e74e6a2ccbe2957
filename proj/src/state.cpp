#include "nin/state.hpp"

#include <string>

#include "nin/rng.hpp"

namespace nin {

namespace {

spin_t checked_value(const geometry& g, long long v, const char* what) {
  const int half = g.half_width();
  if (v < -half || v > half) {
    throw state_error(std::string(what) + " " + std::to_string(v) +
                      " outside [-" + std::to_string(half) + ", " +
                      std::to_string(half) + "]");
  }
  return static_cast<spin_t>(v);
}

std::vector<spin_t> checked_values(const geometry& g,
                                   const std::vector<int>& vals,
                                   const char* what) {
  if (static_cast<int>(vals.size()) != g.sites()) {
    throw state_error(std::string(what) + " count " +
                      std::to_string(vals.size()) + " != site count " +
                      std::to_string(g.sites()));
  }
  std::vector<spin_t> out(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    out[i] = checked_value(g, vals[i], what);
  }
  return out;
}

}  // namespace

wave_field::wave_field(const geometry& g)
    : geo(g), values(static_cast<std::size_t>(g.sites()), 0) {}

wave_field::wave_field(const geometry& g, const std::vector<int>& vals)
    : geo(g), values(checked_values(g, vals, "field value")) {}

void wave_field::set(long long site, int v) {
  values[geo.site_index(site)] = checked_value(geo, v, "field value");
}

necklace_state::necklace_state(const geometry& g)
    : geo(g), positions(static_cast<std::size_t>(g.sites()), 0) {}

necklace_state::necklace_state(const geometry& g, const std::vector<int>& pos)
    : geo(g), positions(checked_values(g, pos, "up-spin position")) {}

void necklace_state::set(long long site, int v) {
  positions[geo.site_index(site)] = checked_value(geo, v, "up-spin position");
}

void validate(const wave_field& f) {
  if (static_cast<int>(f.values.size()) != f.geo.sites()) {
    throw state_error("field size does not match its lattice");
  }
  const int half = f.geo.half_width();
  for (spin_t v : f.values) {
    if (v < -half || v > half) {
      throw state_error("field value " + std::to_string(v) + " out of range");
    }
  }
}

void validate(const necklace_state& s) {
  if (static_cast<int>(s.positions.size()) != s.geo.sites()) {
    throw state_error("state size does not match its lattice");
  }
  const int half = s.geo.half_width();
  for (spin_t v : s.positions) {
    if (v < -half || v > half) {
      throw state_error("up-spin position " + std::to_string(v) +
                        " out of range");
    }
  }
}

spin_plane::spin_plane(const geometry& g)
    : geo(g),
      s(static_cast<std::size_t>(g.sites()) * g.transverse, std::int8_t{-1}) {}

std::size_t spin_plane::offset(long long site, int l) const {
  const int half = geo.half_width();
  if (l < -half || l > half) {
    throw state_error("transverse index " + std::to_string(l) +
                      " outside [-" + std::to_string(half) + ", " +
                      std::to_string(half) + "]");
  }
  return static_cast<std::size_t>(geo.site_index(site)) * geo.transverse +
         (l + half);
}

necklace_state encode(const wave_field& f) {
  validate(f);
  necklace_state s(f.geo);
  s.positions = f.values;
  return s;
}

wave_field decode(const necklace_state& s) {
  validate(s);
  wave_field f(s.geo);
  f.values = s.positions;
  return f;
}

spin_plane to_spin_plane(const necklace_state& s) {
  validate(s);
  spin_plane p(s.geo);
  for (int i = 0; i < s.geo.sites(); ++i) {
    p.set_cell(i + 1, s.positions[i], std::int8_t{1});
  }
  return p;
}

necklace_state from_spin_plane(const spin_plane& p) {
  const int half = p.geo.half_width();
  necklace_state s(p.geo);
  for (int i = 0; i < p.geo.sites(); ++i) {
    int ups = 0;
    int where = 0;
    for (int l = -half; l <= half; ++l) {
      if (p.cell(i + 1, l) > 0) {
        ++ups;
        where = l;
      }
    }
    if (ups != 1) {
      throw state_error("ring " + std::to_string(i + 1) + " has " +
                        std::to_string(ups) + " up spins, want exactly 1");
    }
    s.positions[i] = static_cast<spin_t>(where);
  }
  return s;
}

wave_field decode_bitwise(const spin_plane& p) {
  const int half = p.geo.half_width();
  wave_field f(p.geo);
  for (int i = 0; i < p.geo.sites(); ++i) {
    long long sum = 0;
    int ups = 0;
    for (int l = -half; l <= half; ++l) {
      const int bit = (p.cell(i + 1, l) + 1) / 2;
      sum += static_cast<long long>(l) * bit;
      ups += bit;
    }
    if (ups != 1) {
      throw state_error("ring " + std::to_string(i + 1) + " has " +
                        std::to_string(ups) + " up spins, want exactly 1");
    }
    f.values[i] = static_cast<spin_t>(sum);
  }
  return f;
}

void transpose_spins(spin_plane& p, long long site, int l1, int l2) {
  const std::int8_t a = p.cell(site, l1);
  const std::int8_t b = p.cell(site, l2);
  p.set_cell(site, l1, b);
  p.set_cell(site, l2, a);
}

void shift_necklace(necklace_state& s, long long site, long long steps) {
  const int i = s.geo.site_index(site);
  s.positions[i] =
      static_cast<spin_t>(s.geo.wrap(s.positions[i] + steps));
}

void shift_necklace_spins(spin_plane& p, long long site, long long steps) {
  const int half = p.geo.half_width();
  long long units = steps % p.geo.transverse;
  for (; units > 0; --units) {
    for (int l = half - 1; l >= -half; --l) {
      transpose_spins(p, site, l, l + 1);
    }
  }
  for (; units < 0; ++units) {
    for (int l = -half; l <= half - 1; ++l) {
      transpose_spins(p, site, l, l + 1);
    }
  }
}

wave_field random_field(const geometry& g, std::uint64_t seed) {
  splitmix64 rng(seed);
  wave_field f(g);
  const int half = g.half_width();
  for (auto& v : f.values) {
    v = static_cast<spin_t>(
        static_cast<int>(rng.bounded(static_cast<std::uint64_t>(g.transverse))) -
        half);
  }
  return f;
}

necklace_state random_state(const geometry& g, std::uint64_t seed) {
  return encode(random_field(g, seed));
}

}  // namespace nin
