#include "nin/dirac.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>

#include "nin/kernels.hpp"

namespace nin {

namespace {

// Channel split for pair p = 0..K-1 covering sites (2p+2, 2p+3), the last
// pair wrapping to site 1: x = even-site content, y = odd-site content.
void split_pairs(const necklace_state& s, spin_t* x, spin_t* y) {
  const int n = s.geo.sites();
  const int k = s.geo.pairs;
  for (int p = 0; p < k; ++p) {
    x[p] = s.positions[2 * p + 1];
    y[p] = s.positions[(2 * p + 2) % n];
  }
}

void ensure_scratch(step_scratch& scratch, int k) {
  scratch.x.resize(k);
  scratch.y.resize(k);
  scratch.a.resize(k);
  scratch.b.resize(k);
}

long long egcd(long long a, long long b, long long& u, long long& v) {
  if (b == 0) {
    u = 1;
    v = 0;
    return a;
  }
  long long u1 = 0, v1 = 0;
  const long long g = egcd(b, a % b, u1, v1);
  u = v1;
  v = u1 - (a / b) * v1;
  return g;
}

// Inverse of a mod M, or -1 when gcd(a, M) != 1.
long long mod_inverse(long long a, int m) {
  long long u = 0, v = 0;
  a %= m;
  if (a < 0) a += m;
  if (egcd(a, m, u, v) != 1) return -1;
  u %= m;
  return u < 0 ? u + m : u;
}

// General-mu tick: pair (x, y) -> x + mu*y lands two sites right, y - mu*x
// two sites left. Slow scalar path; mu == 1 goes through the kernels.
void step_general(necklace_state& s, int mu) {
  const int n = s.geo.sites();
  const int k = s.geo.pairs;
  const int m = s.geo.transverse;
  std::vector<spin_t> out(s.positions.size());
  for (int p = 0; p < k; ++p) {
    const long long x = s.positions[2 * p + 1];
    const long long y = s.positions[(2 * p + 2) % n];
    out[(2 * p + 3) % n] = static_cast<spin_t>(wrap_value(x + mu * y, m));
    out[2 * p] = static_cast<spin_t>(wrap_value(y - mu * x, m));
  }
  s.positions = std::move(out);
}

void step_inverse_general(necklace_state& s, int mu) {
  const int n = s.geo.sites();
  const int k = s.geo.pairs;
  const int m = s.geo.transverse;
  const long long inv = mod_inverse(1ll + 1ll * mu * mu, m);
  if (inv < 0) {
    throw noninvertible_error("1 + mu^2 = " + std::to_string(1ll + 1ll * mu * mu) +
                              " has no inverse mod " + std::to_string(m));
  }
  std::vector<spin_t> out(s.positions.size());
  for (int p = 0; p < k; ++p) {
    const long long a = s.positions[(2 * p + 3) % n];
    const long long b = s.positions[2 * p];
    out[2 * p + 1] = static_cast<spin_t>(wrap_value((a - mu * b) * inv, m));
    out[(2 * p + 2) % n] = static_cast<spin_t>(wrap_value((b + mu * a) * inv, m));
  }
  s.positions = std::move(out);
}

}  // namespace

necklace_state scatter(const necklace_state& s) {
  validate(s);
  const int n = s.geo.sites();
  const int k = s.geo.pairs;
  step_scratch sc;
  ensure_scratch(sc, k);
  split_pairs(s, sc.x.data(), sc.y.data());
  const kernels::backend& kb = kernels::backend_for(s.geo.transverse);
  kb.mix(sc.x.data(), sc.y.data(), sc.a.data(), sc.b.data(), k,
         s.geo.transverse);
  necklace_state out(s.geo);
  for (int p = 0; p < k; ++p) {
    out.positions[2 * p + 1] = sc.a[p];
    out.positions[(2 * p + 2) % n] = sc.b[p];
  }
  return out;
}

necklace_state scatter_inverse(const necklace_state& s) {
  validate(s);
  const int n = s.geo.sites();
  const int k = s.geo.pairs;
  step_scratch sc;
  ensure_scratch(sc, k);
  for (int p = 0; p < k; ++p) {
    sc.a[p] = s.positions[2 * p + 1];
    sc.b[p] = s.positions[(2 * p + 2) % n];
  }
  const kernels::backend& kb = kernels::backend_for(s.geo.transverse);
  kb.unmix(sc.a.data(), sc.b.data(), sc.x.data(), sc.y.data(), k,
           s.geo.transverse);
  necklace_state out(s.geo);
  for (int p = 0; p < k; ++p) {
    out.positions[2 * p + 1] = sc.x[p];
    out.positions[(2 * p + 2) % n] = sc.y[p];
  }
  return out;
}

necklace_state scatter_by_ring_shifts(const necklace_state& s) {
  std::vector<int> order(s.geo.pairs);
  std::iota(order.begin(), order.end(), 0);
  return scatter_by_ring_shifts(s, order);
}

necklace_state scatter_by_ring_shifts(const necklace_state& s,
                                      const std::vector<int>& pair_order) {
  validate(s);
  const int k = s.geo.pairs;
  if (static_cast<int>(pair_order.size()) != k) {
    throw state_error("pair order must list each of the " +
                      std::to_string(k) + " pairs exactly once");
  }
  std::vector<char> seen(pair_order.size(), 0);
  for (int p : pair_order) {
    if (p < 0 || p >= k || seen[p]) {
      throw state_error("pair order must list each of the " +
                        std::to_string(k) + " pairs exactly once");
    }
    seen[p] = 1;
  }
  // Exponents snapshotted before any shift: the per-pair updates are
  // simultaneous, and the pairs are independent (any processing order).
  std::vector<spin_t> x(k), y(k);
  split_pairs(s, x.data(), y.data());
  spin_plane plane = to_spin_plane(s);
  for (int p : pair_order) {
    shift_necklace_spins(plane, 2 * p + 2, y[p]);
    shift_necklace_spins(plane, 2 * p + 3, -static_cast<long long>(x[p]));
  }
  return from_spin_plane(plane);
}

necklace_state kinematic_shift(const necklace_state& s) {
  validate(s);
  const int n = s.geo.sites();
  necklace_state out(s.geo);
  for (int i = 0; i < n; ++i) {
    // even storage index = odd site: content arrives from two sites right
    out.positions[i] = (i % 2 == 0) ? s.positions[(i + 2) % n]
                                    : s.positions[(i - 2 + n) % n];
  }
  return out;
}

necklace_state kinematic_shift_inverse(const necklace_state& s) {
  validate(s);
  const int n = s.geo.sites();
  necklace_state out(s.geo);
  for (int i = 0; i < n; ++i) {
    out.positions[i] = (i % 2 == 0) ? s.positions[(i - 2 + n) % n]
                                    : s.positions[(i + 2) % n];
  }
  return out;
}

necklace_state kinematic_shift_by_transpositions(const necklace_state& s) {
  spin_plane plane = to_spin_plane(s);
  const int k = s.geo.pairs;
  const int half = s.geo.half_width();
  const auto swap_sites = [&](long long s1, long long s2, int l) {
    const std::int8_t t = plane.cell(s1, l);
    plane.set_cell(s1, l, plane.cell(s2, l));
    plane.set_cell(s2, l, t);
  };
  for (int l = -half; l <= half; ++l) {
    for (int p = 1; p <= k; ++p) swap_sites(2 * p, 2 * p + 1, l);
    for (int p = 1; p <= k; ++p) swap_sites(2 * p - 1, 2 * p, l);
  }
  return from_spin_plane(plane);
}

void step_in_place(necklace_state& s, step_scratch& sc) {
  const int n = s.geo.sites();
  const int k = s.geo.pairs;
  ensure_scratch(sc, k);
  split_pairs(s, sc.x.data(), sc.y.data());
  const kernels::backend& kb = kernels::backend_for(s.geo.transverse);
  kb.mix(sc.x.data(), sc.y.data(), sc.a.data(), sc.b.data(), k,
         s.geo.transverse);
  // transport fused into the write-back: sums two sites right, differences
  // two sites left
  for (int p = 0; p < k; ++p) {
    s.positions[(2 * p + 3) % n] = sc.a[p];
    s.positions[2 * p] = sc.b[p];
  }
}

void step_inverse_in_place(necklace_state& s, step_scratch& sc) {
  const int n = s.geo.sites();
  const int k = s.geo.pairs;
  ensure_scratch(sc, k);
  for (int p = 0; p < k; ++p) {
    sc.a[p] = s.positions[(2 * p + 3) % n];
    sc.b[p] = s.positions[2 * p];
  }
  const kernels::backend& kb = kernels::backend_for(s.geo.transverse);
  kb.unmix(sc.a.data(), sc.b.data(), sc.x.data(), sc.y.data(), k,
           s.geo.transverse);
  for (int p = 0; p < k; ++p) {
    s.positions[2 * p + 1] = sc.x[p];
    s.positions[(2 * p + 2) % n] = sc.y[p];
  }
}

necklace_state step(const necklace_state& s, int mu) {
  validate(s);
  necklace_state out = s;
  if (mu == 1) {
    step_scratch sc;
    step_in_place(out, sc);
  } else {
    step_general(out, mu);
  }
  return out;
}

necklace_state step_inverse(const necklace_state& s, int mu) {
  validate(s);
  necklace_state out = s;
  if (mu == 1) {
    step_scratch sc;
    step_inverse_in_place(out, sc);
  } else {
    step_inverse_general(out, mu);
  }
  return out;
}

trajectory run(const necklace_state& start, int n_steps, int mu) {
  if (n_steps < 0) {
    throw state_error("step count must be >= 0");
  }
  validate(start);
  trajectory t{start.geo, {}};
  t.snapshots.reserve(n_steps + 1);
  necklace_state cur = start;
  t.snapshots.push_back(decode(cur));
  step_scratch sc;
  for (int i = 0; i < n_steps; ++i) {
    if (mu == 1) {
      step_in_place(cur, sc);
    } else {
      step_general(cur, mu);
    }
    t.snapshots.push_back(decode(cur));
  }
  return t;
}

int second_order_residual(const trajectory& t, int mu) {
  if (t.snapshots.size() < 3) {
    throw state_error("need at least 3 snapshots, got " +
                      std::to_string(t.snapshots.size()));
  }
  const int k = t.geo.pairs;
  const int m = t.geo.transverse;
  const long long c = 1ll + 1ll * mu * mu;
  int worst = 0;
  for (std::size_t n = 0; n + 2 < t.snapshots.size(); ++n) {
    const wave_field& f0 = t.snapshots[n];
    const wave_field& f1 = t.snapshots[n + 1];
    const wave_field& f2 = t.snapshots[n + 2];
    for (int j = 1; j <= k; ++j) {
      const int left = std::abs(wrap_value(
          f2.left(j) - f1.left(j + 1) - f1.left(j - 1) + c * f0.left(j), m));
      const int right = std::abs(wrap_value(
          f2.right(j) - f1.right(j + 1) - f1.right(j - 1) + c * f0.right(j),
          m));
      worst = std::max({worst, left, right});
    }
  }
  return worst;
}

std::uint64_t state_count(const geometry& g) {
  std::uint64_t total = 1;
  const std::uint64_t m = g.transverse;
  for (int i = 0; i < g.sites(); ++i) {
    if (total > (std::uint64_t{1} << 63) / m) {
      throw geometry_error("restricted state space exceeds 2^63");
    }
    total *= m;
  }
  return total;
}

std::uint64_t state_index(const necklace_state& s) {
  const std::uint64_t m = s.geo.transverse;
  const int half = s.geo.half_width();
  std::uint64_t idx = 0;
  for (int i = s.geo.sites() - 1; i >= 0; --i) {
    idx = idx * m + static_cast<std::uint64_t>(s.positions[i] + half);
  }
  return idx;
}

necklace_state state_from_index(const geometry& g, std::uint64_t index) {
  const std::uint64_t m = g.transverse;
  const int half = g.half_width();
  necklace_state s(g);
  for (int i = 0; i < g.sites(); ++i) {
    s.positions[i] = static_cast<spin_t>(
        static_cast<int>(index % m) - half);
    index /= m;
  }
  if (index != 0) {
    throw state_error("state index out of range");
  }
  return s;
}

}  // namespace nin
