#include "nin/oracle.hpp"

#include <string>

#include "nin/dirac.hpp"
#include "nin/serialize.hpp"

namespace nin::oracle {

wave_field dirac_fd_step(const wave_field& f, int mu) {
  validate(f);
  const int m = f.geo.transverse;
  wave_field out(f.geo);
  for (int k = 1; k <= f.geo.pairs; ++k) {
    out.set(2 * k - 1,
            wrap_value(f.at(2 * k + 1) - static_cast<long long>(mu) * f.at(2 * k), m));
    out.set(2 * k,
            wrap_value(f.at(2 * k - 2) + static_cast<long long>(mu) * f.at(2 * k - 1), m));
  }
  return out;
}

wave_field dirac_fd_inverse(const wave_field& f, int mu) {
  validate(f);
  const int m = f.geo.transverse;
  // inverse of 1 + mu^2 mod M by brute scan; the oracle stays naive on purpose
  const long long c = (1ll + 1ll * mu * mu) % m;
  long long inv = -1;
  for (long long cand = 0; cand < m; ++cand) {
    if ((c % m + m) % m * cand % m == 1) {
      inv = cand;
      break;
    }
  }
  if (inv < 0) {
    throw noninvertible_error("1 + mu^2 has no inverse mod " +
                              std::to_string(m));
  }
  wave_field out(f.geo);
  // the pair that occupied (2k, 2k+1) sent x + mu*y to 2k+2 and y - mu*x to
  // 2k-1; solve the 2x2 system per pair
  for (int k = 1; k <= f.geo.pairs; ++k) {
    const long long a = f.at(2 * k + 2);
    const long long b = f.at(2 * k - 1);
    out.set(2 * k, wrap_value((a - mu * b) * inv, m));
    out.set(2 * k + 1, wrap_value((b + mu * a) * inv, m));
  }
  return out;
}

std::vector<long long> dirac_fd_step_unwrapped(const std::vector<long long>& f,
                                               int mu) {
  if (f.size() < 2 || f.size() % 2 != 0) {
    throw state_error("field length must be even and >= 2");
  }
  const int n = static_cast<int>(f.size());
  const auto at = [&](long long site) {
    long long i = (site - 1) % n;
    return f[static_cast<std::size_t>(i < 0 ? i + n : i)];
  };
  std::vector<long long> out(f.size());
  for (int k = 1; k <= n / 2; ++k) {
    out[(2 * k - 2) % n] = at(2 * k + 1) - mu * at(2 * k);
    out[(2 * k - 1) % n] = at(2 * k - 2) + mu * at(2 * k - 1);
  }
  return out;
}

spin_chain weyl_mover_oracle(const spin_chain& c, int l) {
  if (l < 1) {
    throw geometry_error("mover step count must be >= 1; got " +
                         std::to_string(l));
  }
  spin_chain out(c.half_size);
  for (int k = 1; k <= c.half_size; ++k) {
    out.set(2 * k - 1, c.at(2 * (k + l) - 1));  // left channel: k <- k + l
    out.set(2 * k, c.at(2 * (k - l)));          // right channel: k <- k - l
  }
  return out;
}

bijectivity_report exhaustive_bijectivity(const geometry& g) {
  const std::uint64_t total = state_count(g);
  if (total > 1000000) {
    throw geometry_error("state space of " + std::to_string(total) +
                         " exceeds the exhaustive-enumeration guard of 10^6");
  }
  std::vector<std::uint64_t> image(total);
  std::vector<char> hit(total, 0);
  bool bijective = true;
  step_scratch scratch;
  for (std::uint64_t i = 0; i < total; ++i) {
    necklace_state s = state_from_index(g, i);
    step_in_place(s, scratch);
    const std::uint64_t j = state_index(s);
    image[i] = j;
    if (hit[j]) bijective = false;
    hit[j] = 1;
  }

  bijectivity_report report{total, bijective, {}};
  if (bijective) {
    std::vector<char> seen(total, 0);
    for (std::uint64_t i = 0; i < total; ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 1;
      seen[i] = 1;
      for (std::uint64_t c = image[i]; c != i; c = image[c]) {
        seen[c] = 1;
        ++len;
      }
      ++report.cycle_histogram[len];
    }
  }
  return report;
}

divergence_report compare_step_routes(
    const wave_field& start, int steps,
    const std::function<wave_field(const wave_field&)>& route_a,
    const std::function<wave_field(const wave_field&)>& route_b) {
  wave_field a = start;
  wave_field b = start;
  for (int n = 1; n <= steps; ++n) {
    a = route_a(a);
    b = route_b(b);
    if (!(a == b)) {
      return {false, n, to_state_text(encode(start))};
    }
  }
  return {true, -1, {}};
}

}  // namespace nin::oracle
