#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nin/state.hpp"
#include "nin/weyl.hpp"

// Deliberately naive site-by-site reference implementations used as ground
// truth for differential tests. They share nothing with the fast paths
// except wrap_value.
namespace nin::oracle {

// new[2k-1] = wrap(old[2k+1] - mu*old[2k])
// new[2k]   = wrap(old[2k-2] + mu*old[2k-1])
wave_field dirac_fd_step(const wave_field& f, int mu = 1);
wave_field dirac_fd_inverse(const wave_field& f, int mu = 1);

// Same recurrences over plain integers with no reduction; shows when the
// periodic value range first matters.
std::vector<long long> dirac_fd_step_unwrapped(const std::vector<long long>& f,
                                               int mu = 1);

// Pure index-shift movers: s^L(k) <- s^L(k+l), s^R(k) <- s^R(k-l).
spin_chain weyl_mover_oracle(const spin_chain& c, int l);

struct bijectivity_report {
  std::uint64_t state_total;
  bool bijective;
  std::map<std::uint64_t, std::uint64_t> cycle_histogram;  // length -> count
};

// Enumerates every restricted state (guard: M^(2K) <= 10^6), applies one
// tick, checks the image is a permutation, and reports its cycle structure.
bijectivity_report exhaustive_bijectivity(const geometry& g);

struct divergence_report {
  bool agree;
  int first_divergence_step;  // -1 when agree
  std::string state_text;     // offending input in the state text format
};

// Steps the same field through two routes and reports the first step index
// where they differ, dumping the input that exposed it.
divergence_report compare_step_routes(
    const wave_field& start, int steps,
    const std::function<wave_field(const wave_field&)>& route_a,
    const std::function<wave_field(const wave_field&)>& route_b);

}  // namespace nin::oracle
