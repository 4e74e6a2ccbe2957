#include "nin/weyl.hpp"

#include <string>

#include "nin/rng.hpp"

namespace nin {

namespace {

int require_half_size(int half_size) {
  if (half_size < 1) {
    throw geometry_error("chain half size must be >= 1; got " +
                         std::to_string(half_size));
  }
  return half_size;
}

int site_slot(int sites, long long site) {
  const long long i = (site - 1) % sites;
  return static_cast<int>(i < 0 ? i + sites : i);
}

}  // namespace

spin_chain::spin_chain(int S)
    : half_size(require_half_size(S)),
      s(static_cast<std::size_t>(2) * half_size, std::int8_t{-1}) {}

spin_chain::spin_chain(int S, const std::vector<int>& spins) : spin_chain(S) {
  if (static_cast<int>(spins.size()) != sites()) {
    throw state_error("spin count " + std::to_string(spins.size()) +
                      " != chain length " + std::to_string(sites()));
  }
  for (std::size_t i = 0; i < spins.size(); ++i) {
    if (spins[i] != 1 && spins[i] != -1) {
      throw state_error("spin values must be -1 or +1");
    }
    s[i] = static_cast<std::int8_t>(spins[i]);
  }
}

int spin_chain::at(long long site) const { return s[site_slot(sites(), site)]; }

void spin_chain::set(long long site, int v) {
  if (v != 1 && v != -1) {
    throw state_error("spin values must be -1 or +1");
  }
  s[site_slot(sites(), site)] = static_cast<std::int8_t>(v);
}

spin_chain chain_step(const spin_chain& c, chain_direction dir) {
  const int n = c.sites();
  spin_chain out(c.half_size);
  const int move = dir == chain_direction::left_handed ? 2 : -2;
  for (int i = 0; i < n; ++i) {
    // 0-based slot i is site i+1; odd sites (even slots) move left, even
    // sites right (reversed when right-handed)
    const int shift = (i % 2 == 0) ? -move : move;
    out.s[(i + shift + n) % n] = c.s[i];
  }
  return out;
}

spin_chain chain_step_by_transpositions(const spin_chain& c,
                                        chain_direction dir) {
  spin_chain out = c;
  const auto swap_sites = [&out](long long s1, long long s2) {
    const int a = out.at(s1);
    out.set(s1, out.at(s2));
    out.set(s2, a);
  };
  const auto even_sweep = [&] {
    for (int k = 1; k <= out.half_size; ++k) swap_sites(2 * k, 2 * k + 1);
  };
  const auto odd_sweep = [&] {
    for (int k = 1; k <= out.half_size; ++k) swap_sites(2 * k - 1, 2 * k);
  };
  if (dir == chain_direction::left_handed) {
    even_sweep();
    odd_sweep();
  } else {
    odd_sweep();
    even_sweep();
  }
  return out;
}

spin_chain mover_step(const spin_chain& c, int l) {
  if (l < 1) {
    throw geometry_error("mover step count must be >= 1; got " +
                         std::to_string(l));
  }
  spin_chain out = c;
  for (int i = 0; i < l; ++i) {
    out = chain_step(out);
  }
  return out;
}

packed_chain pack(const spin_chain& c) {
  if (c.sites() > 64) {
    throw geometry_error("packed chains support at most 64 sites");
  }
  std::uint64_t bits = 0;
  for (int i = 0; i < c.sites(); ++i) {
    if (c.s[i] > 0) bits |= std::uint64_t{1} << i;
  }
  return {c.half_size, bits};
}

spin_chain unpack(const packed_chain& p) {
  spin_chain c(p.half_size);
  for (int i = 0; i < c.sites(); ++i) {
    c.s[i] = (p.bits >> i) & 1 ? std::int8_t{1} : std::int8_t{-1};
  }
  return c;
}

packed_chain chain_step_packed(const packed_chain& p) {
  const int n = 2 * p.half_size;
  // bit i = site i+1; even bit positions are odd sites. rotation by 2 keeps
  // each parity lane on itself, so rotate the two masked lanes oppositely.
  const std::uint64_t all =
      n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  const std::uint64_t even_slots = all & 0x5555555555555555ull;
  const std::uint64_t odd_slots = all & 0xAAAAAAAAAAAAAAAAull;
  const auto ror2 = [&](std::uint64_t v) {
    return n == 2 ? v : ((v >> 2) | (v << (n - 2))) & all;
  };
  const auto rol2 = [&](std::uint64_t v) {
    return n == 2 ? v : ((v << 2) | (v >> (n - 2))) & all;
  };
  const std::uint64_t odd_sites = p.bits & even_slots;
  const std::uint64_t even_sites = p.bits & odd_slots;
  return {p.half_size, ror2(odd_sites) | rol2(even_sites)};
}

occupation_field::occupation_field(int S)
    : half_size(require_half_size(S)),
      n(static_cast<std::size_t>(2) * half_size, 0) {}

occupation_field::occupation_field(int S, const std::vector<int>& vals)
    : occupation_field(S) {
  if (static_cast<int>(vals.size()) != 2 * S) {
    throw state_error("occupation count " + std::to_string(vals.size()) +
                      " != chain length " + std::to_string(2 * S));
  }
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] != 0 && vals[i] != 1) {
      throw state_error("occupation numbers must be 0 or 1");
    }
    n[i] = vals[i];
  }
}

block_field::block_field(int S, int level_, const std::vector<long long>& vals)
    : half_size(S), level(level_), values(vals) {
  require_half_size(S);
  if (level < 0 || level > 62) {
    throw state_error("block level must be in [0, 62]");
  }
  if (static_cast<int>(values.size()) != 2 * S) {
    throw state_error("block value count " + std::to_string(values.size()) +
                      " != chain length " + std::to_string(2 * S));
  }
  const long long bound = 1ll << level;
  for (long long v : values) {
    if (v < 0 || v > bound) {
      throw state_error("block value " + std::to_string(v) +
                        " outside [0, 2^" + std::to_string(level) + "]");
    }
  }
}

occupation_field occupation(const spin_chain& c) {
  occupation_field f(c.half_size);
  for (int i = 0; i < c.sites(); ++i) {
    f.n[i] = (c.s[i] + 1) / 2;
  }
  return f;
}

spin_chain chain_from_occupation(const occupation_field& f) {
  spin_chain c(f.half_size);
  for (std::size_t i = 0; i < f.n.size(); ++i) {
    c.s[i] = f.n[i] ? std::int8_t{1} : std::int8_t{-1};
  }
  return c;
}

namespace {

std::vector<long long> pair_sums(const std::vector<long long>& v) {
  const std::size_t n = v.size();
  std::vector<long long> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = v[i] + v[(i + 2) % n];
  }
  return out;
}

}  // namespace

block_field block_transform(const occupation_field& f) {
  std::vector<long long> v(f.n.begin(), f.n.end());
  return {f.half_size, 1, pair_sums(v)};
}

block_field block_transform(const block_field& f) {
  return {f.half_size, f.level + 1, pair_sums(f.values)};
}

block_field block_inverse(const block_field& f) {
  if (f.level < 1) {
    throw state_error("level 0 has no previous level");
  }
  const int s = f.half_size;
  if (s % 2 == 0) {
    throw noninvertible_error(
        "the two parity sub-cycles have even length " + std::to_string(s) +
        ", where the pairwise-sum map is singular");
  }
  const int n = 2 * s;
  std::vector<long long> out(n);
  // Along one parity sub-cycle b[j] = v[j] + v[j+1] (cyclically, length S):
  // the alternating sum telescopes to 2*v[start] when S is odd.
  for (int start = 0; start < n; ++start) {
    long long acc = 0;
    long long sign = 1;
    for (int i = 0; i < s; ++i) {
      acc += sign * f.values[(start + 2 * i) % n];
      sign = -sign;
    }
    if (acc % 2 != 0 || acc < 0) {
      throw state_error("block field is not a pairwise-sum image (site " +
                        std::to_string(start + 1) + ")");
    }
    out[start] = acc / 2;
  }
  return {s, f.level - 1, out};
}

occupation_field to_occupation(const block_field& f) {
  if (f.level != 0) {
    throw state_error("only level-0 block fields are occupations");
  }
  occupation_field out(f.half_size);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (f.values[i] != 0 && f.values[i] != 1) {
      throw state_error("level-0 value " + std::to_string(f.values[i]) +
                        " is not an occupation number");
    }
    out.n[i] = static_cast<int>(f.values[i]);
  }
  return out;
}

std::pair<std::vector<int>, std::vector<int>> spinor_components(
    const spin_chain& c) {
  std::vector<int> plus(c.half_size), minus(c.half_size);
  for (int k = 1; k <= c.half_size; ++k) {
    const int left = c.at(2 * k - 1);
    const int right = c.at(2 * k);
    plus[k - 1] = left + right;
    minus[k - 1] = left - right;
  }
  return {plus, minus};
}

int up_count_odd_sites(const spin_chain& c) {
  int count = 0;
  for (int i = 0; i < c.sites(); i += 2) count += c.s[i] > 0;
  return count;
}

int up_count_even_sites(const spin_chain& c) {
  int count = 0;
  for (int i = 1; i < c.sites(); i += 2) count += c.s[i] > 0;
  return count;
}

spin_chain random_chain(int S, std::uint64_t seed) {
  spin_chain c(S);
  splitmix64 rng(seed);
  for (auto& v : c.s) {
    v = (rng.next() & 1) ? std::int8_t{1} : std::int8_t{-1};
  }
  return c;
}

}  // namespace nin
