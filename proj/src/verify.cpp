#include "nin/verify.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "nin/cogwheel.hpp"
#include "nin/dirac.hpp"
#include "nin/experiment.hpp"
#include "nin/kernels.hpp"
#include "nin/oracle.hpp"
#include "nin/serialize.hpp"
#include "nin/weyl.hpp"

namespace nin {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

void require(bool ok, const std::string& why) {
  if (!ok) throw verification_error(why);
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(s < 0.1 ? 4 : 2) << s << " s";
  return out.str();
}

criterion_result run_one(int index, const std::string& name,
                         const std::function<std::string()>& body) {
  criterion_result r{index, name, false, "", 0.0};
  const auto start = clock_type::now();
  try {
    r.detail = body();
    r.passed = true;
  } catch (const std::exception& e) {
    r.detail = e.what();
  }
  r.seconds = seconds_since(start);
  return r;
}

constexpr std::array<int, 4> odd_sizes{3, 5, 7, 9};

spin_chain chain_from_bits(int S, std::uint64_t bits) {
  std::vector<int> spins(static_cast<std::size_t>(2 * S));
  for (int i = 0; i < 2 * S; ++i) {
    spins[i] = (bits >> i & 1) ? 1 : -1;
  }
  return {S, spins};
}

std::uint64_t bits_from_chain(const spin_chain& c) {
  std::uint64_t bits = 0;
  for (int i = 0; i < c.sites(); ++i) {
    if (c.s[i] > 0) bits |= std::uint64_t{1} << i;
  }
  return bits;
}

double max_entry_distance(const dense_matrix& a, const dense_matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Restores whichever kernel backend was active when constructed.
struct kernel_guard {
  std::string name;
  kernel_guard() : name(kernels::active_backend().name) {}
  ~kernel_guard() {
    try {
      kernels::force_backend(name);
    } catch (...) {
    }
  }
};

std::string criterion_oracle_equivalence() {
  const auto start = clock_type::now();
  long long comparisons = 0;
  for (int pairs = 1; pairs <= 8; ++pairs) {
    for (int m : odd_sizes) {
      const geometry geo(pairs, m);
      step_scratch scratch;
      for (int trial = 0; trial < 1000; ++trial) {
        const std::uint64_t seed =
            1000003ull * static_cast<std::uint64_t>(pairs) +
            101ull * static_cast<std::uint64_t>(m) +
            static_cast<std::uint64_t>(trial);
        wave_field f = random_field(geo, seed);
        necklace_state s = encode(f);
        for (int n = 1; n <= 32; ++n) {
          step_in_place(s, scratch);
          f = oracle::dirac_fd_step(f);
          if (decode(s) != f) {
            throw verification_error(
                "engine and finite-difference oracle disagree at K=" +
                std::to_string(pairs) + " M=" + std::to_string(m) +
                " trial=" + std::to_string(trial) + " step=" +
                std::to_string(n));
          }
          ++comparisons;
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  require(elapsed < 10.0,
          "runtime bound exceeded: " + fmt_seconds(elapsed) + " >= 10 s");
  return "K=1..8 x M={3,5,7,9} x 1000 fields x 32 steps, " +
         std::to_string(comparisons) + " exact comparisons in " +
         fmt_seconds(elapsed);
}

std::string criterion_pair_scatter_transport() {
  const geometry geo(2, 7);
  const wave_field f(geo, {0, -2, -3, 0});  // pair (site 2, site 3) = (-2, -3)
  const necklace_state s = encode(f);

  const wave_field mixed = decode(scatter(s));
  require(mixed.at(2) == 2,
          "scatter of (-2,-3) mod 7 must put +2 on the even channel, got " +
              std::to_string(mixed.at(2)));
  require(mixed.at(3) == -1,
          "scatter of (-2,-3) mod 7 must put -1 on the odd channel, got " +
              std::to_string(mixed.at(3)));

  const wave_field after = decode(step(s));
  require(after.at(4) == 2,
          "the +2 must land two sites to the right (site 4), got " +
              std::to_string(after.at(4)));
  require(after.at(1) == -1,
          "the -1 must land two sites to the left (site 1), got " +
              std::to_string(after.at(1)));
  require(after == wave_field(geo, {-1, 0, 0, 2}),
          "full step must yield (-1, 0, 0, 2)");
  require(oracle::dirac_fd_step(f) == after,
          "finite-difference oracle disagrees on the worked example");
  return "pair (-2,-3) mod 7 -> (+2,-1); +2 lands at site 4, -1 at site 1";
}

std::string criterion_reversibility() {
  long long round_trips = 0;
  for (int pairs = 1; pairs <= 8; ++pairs) {
    for (int m : odd_sizes) {
      const geometry geo(pairs, m);
      for (int trial = 0; trial < 1000; ++trial) {
        const std::uint64_t seed =
            7777777ull * static_cast<std::uint64_t>(pairs) +
            333ull * static_cast<std::uint64_t>(m) +
            static_cast<std::uint64_t>(trial);
        const necklace_state s = random_state(geo, seed);
        if (step_inverse(step(s)) != s || step(step_inverse(s)) != s) {
          throw verification_error(
              "inverse round trip failed at K=" + std::to_string(pairs) +
              " M=" + std::to_string(m) + " trial=" + std::to_string(trial));
        }
        ++round_trips;
      }
    }
  }
  for (int even_m : {4, 6}) {
    bool rejected = false;
    try {
      const geometry bad(2, even_m);
    } catch (const geometry_error&) {
      rejected = true;
    }
    require(rejected, "transverse size " + std::to_string(even_m) +
                          " must be rejected with geometry_error");
  }
  return std::to_string(round_trips) +
         " exact inverse round trips (both orders); even transverse sizes "
         "rejected with geometry_error";
}

std::string criterion_step_bijectivity() {
  const auto start = clock_type::now();
  const auto small = oracle::exhaustive_bijectivity(geometry(1, 3));
  require(small.state_total == 9 && small.bijective,
          "K=1 M=3 tick is not a permutation of its 9 states");
  const auto larger = oracle::exhaustive_bijectivity(geometry(2, 3));
  require(larger.state_total == 81 && larger.bijective,
          "K=2 M=3 tick is not a permutation of its 81 states");
  const double elapsed = seconds_since(start);
  require(elapsed < 1.0,
          "runtime bound exceeded: " + fmt_seconds(elapsed) + " >= 1 s");
  std::string cycles;
  for (const auto& [len, count] : larger.cycle_histogram) {
    if (!cycles.empty()) cycles += ", ";
    cycles += std::to_string(count) + "x" + std::to_string(len);
  }
  return "9 and 81 states permuted with no fusion/fission; 81-state cycle "
         "lengths: " +
         cycles;
}

std::string criterion_second_order_relation() {
  trajectory last{geometry(1, 3), {}};
  for (int trial = 0; trial < 100; ++trial) {
    const int pairs = 1 + trial % 8;
    const int m = odd_sizes[static_cast<std::size_t>(trial) % 4];
    const int steps = 10 + trial % 6;
    const geometry geo(pairs, m);
    const necklace_state s =
        random_state(geo, 424242ull + static_cast<std::uint64_t>(trial));
    const trajectory t = run(s, steps);
    const int residual = second_order_residual(t);
    if (residual != 0) {
      throw verification_error(
          "nonzero residual " + std::to_string(residual) + " at K=" +
          std::to_string(pairs) + " M=" + std::to_string(m));
    }
    last = t;
  }
  trajectory corrupted = last;
  const std::size_t mid = corrupted.snapshots.size() / 2;
  wave_field& snap = corrupted.snapshots[mid];
  snap.set(1, wrap_value(snap.at(1) + 1, corrupted.geo.transverse));
  require(second_order_residual(corrupted) != 0,
          "a +1 corruption in snapshot " + std::to_string(mid) +
              " went undetected");
  return "residual 0 on 100 random trajectories (10..15 steps); injected "
         "corruption detected";
}

std::string criterion_chain_period_conservation() {
  auto check_period = [](const spin_chain& c) {
    const int odd0 = up_count_odd_sites(c);
    const int even0 = up_count_even_sites(c);
    spin_chain cur = c;
    for (int t = 0; t < c.half_size; ++t) {
      cur = chain_step(cur);
      require(up_count_odd_sites(cur) == odd0 &&
                  up_count_even_sites(cur) == even0,
              "up-spin count changed during a tick at S=" +
                  std::to_string(c.half_size));
    }
    require(cur == c, "(chain_step)^S is not the identity at S=" +
                          std::to_string(c.half_size));
  };

  long long states = 0;
  for (int S = 1; S <= 4; ++S) {
    const std::uint64_t total = std::uint64_t{1} << (2 * S);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      check_period(chain_from_bits(S, bits));
      ++states;
    }
  }
  for (int S = 5; S <= 8; ++S) {
    for (int trial = 0; trial < 10000; ++trial) {
      check_period(random_chain(
          S, 15151ull * static_cast<std::uint64_t>(S) +
                 static_cast<std::uint64_t>(trial)));
      ++states;
    }
  }
  return std::to_string(states) +
         " chains: (chain_step)^S = 1, per-channel up counts conserved every "
         "tick (exhaustive S<=4, 10^4 random each S=5..8)";
}

std::string criterion_transposition_routes() {
  // Unit transverse shift: every single-ring content, both directions.
  long long unit_checks = 0;
  for (int m : {3, 5, 7}) {
    const geometry geo(1, m);
    const int half = geo.half_width();
    for (int site = 1; site <= 2; ++site) {
      for (int p = -half; p <= half; ++p) {
        for (int steps : {1, -1}) {
          necklace_state s(geo);
          s.set(site, p);
          necklace_state direct = s;
          shift_necklace(direct, site, steps);
          spin_plane plane = to_spin_plane(s);
          shift_necklace_spins(plane, site, steps);
          require(from_spin_plane(plane) == direct,
                  "unit-shift routes diverge at M=" + std::to_string(m));
          ++unit_checks;
        }
      }
    }
  }

  // Kinematic shift: exhaustive over every restricted state.
  long long transport_checks = 0;
  for (int m : {3, 5, 7}) {
    for (int pairs = 1; pairs <= 4; ++pairs) {
      const geometry geo(pairs, m);
      const std::uint64_t total = state_count(geo);
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        const necklace_state s = state_from_index(geo, idx);
        if (kinematic_shift_by_transpositions(s) != kinematic_shift(s)) {
          throw verification_error(
              "transport routes diverge at K=" + std::to_string(pairs) +
              " M=" + std::to_string(m) + " index=" + std::to_string(idx));
        }
        ++transport_checks;
      }
    }
  }

  // Chain tick: exhaustive over every chain, both directions.
  long long chain_checks = 0;
  for (int S = 1; S <= 4; ++S) {
    const std::uint64_t total = std::uint64_t{1} << (2 * S);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      const spin_chain c = chain_from_bits(S, bits);
      for (auto dir : {chain_direction::left_handed,
                       chain_direction::right_handed}) {
        require(chain_step_by_transpositions(c, dir) == chain_step(c, dir),
                "chain-tick routes diverge at S=" + std::to_string(S));
        ++chain_checks;
      }
    }
  }
  return std::to_string(unit_checks) + " unit shifts, " +
         std::to_string(transport_checks) + " transports, " +
         std::to_string(chain_checks) +
         " chain ticks: exchange-sweep and direct-rotation routes bit-equal";
}

std::string criterion_cogwheel_spectrum() {
  const auto start = clock_type::now();
  double worst_exp = 0.0;
  double worst_eig = 0.0;
  for (int n = 1; n <= 16; ++n) {
    const cogwheel w(n, 1.0);
    worst_exp = std::max(worst_exp, verify_exponential(w, 1e-9));

    const dense_matrix h = hamiltonian_standard(w);
    require(max_entry_distance(h, h.adjoint()) <= 1e-12,
            "generator is not Hermitian at N=" + std::to_string(n));
    const Eigen::SelfAdjointEigenSolver<dense_matrix> solver(h);
    require(solver.info() == Eigen::Success,
            "eigensolver failed at N=" + std::to_string(n));
    const auto analytic = hamiltonian_diagonal(w);
    for (int i = 0; i < n; ++i) {
      const double expected =
          2.0 * std::numbers::pi * static_cast<double>(i) / n;
      const double dev = std::abs(solver.eigenvalues()[i] - expected);
      worst_eig = std::max(worst_eig, dev);
      if (dev > 1e-9) {
        throw verification_error(
            "eigenvalue " + std::to_string(i + 1) + " of N=" +
            std::to_string(n) + " deviates from the uniform ladder by " +
            std::to_string(dev));
      }
      require(std::abs(analytic[static_cast<std::size_t>(i)] - expected) <=
                  1e-12,
              "analytic spectrum disagrees at N=" + std::to_string(n));
    }
  }

  const pauli_report pauli = exchange_pauli_check();
  require(pauli.exchange_deviation <= 1e-12,
          "spin-exchange identity off by " +
              std::to_string(pauli.exchange_deviation));
  require(pauli.commutator_max_entry > 0.5,
          "neighboring exchanges unexpectedly commute");

  const double elapsed = seconds_since(start);
  require(elapsed < 5.0,
          "runtime bound exceeded: " + fmt_seconds(elapsed) + " >= 5 s");
  std::ostringstream out;
  out << std::scientific << std::setprecision(2) << "N=1..16: |exp(-iH)-U| <= "
      << worst_exp << ", ladder spectrum dev <= " << worst_eig
      << "; exchange identity <= " << pauli.exchange_deviation
      << ", 8x8 commutator max " << std::fixed << std::setprecision(1)
      << pauli.commutator_max_entry;
  return out.str();
}

std::string criterion_cycle_hamiltonian() {
  const std::complex<double> minus_i(0.0, -1.0);
  double worst = 0.0;

  auto check_perm = [&](const std::vector<int>& perm, const std::string& what) {
    const dense_matrix target = permutation_matrix(perm);
    const dense_matrix h = cycle_hamiltonian(perm, 1.0);
    const dense_matrix via_generic = generic_exponential(minus_i * h);
    const dense_matrix via_fourier = cycle_exponential(perm, 1.0);
    const double dev = std::max(max_entry_distance(via_generic, target),
                                max_entry_distance(via_fourier, target));
    worst = std::max(worst, dev);
    require(dev <= 1e-9, what + ": exp(-iH) misses the permutation by " +
                             std::to_string(dev));
  };

  std::vector<int> chain_perm(16);
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    chain_perm[bits] =
        static_cast<int>(bits_from_chain(chain_step(chain_from_bits(2, bits))));
  }
  check_perm(chain_perm, "S=2 chain tick (16 states)");

  for (int m : {5, 7}) {
    const geometry geo(1, m);
    const int half = geo.half_width();
    std::vector<int> ring_perm(static_cast<std::size_t>(m));
    for (int p = 0; p < m; ++p) {
      necklace_state s(geo);
      s.set(1, p - half);
      shift_necklace(s, 1, 1);
      ring_perm[static_cast<std::size_t>(p)] = s.at(1) + half;
    }
    check_perm(ring_perm, "unit ring shift (M=" + std::to_string(m) + ")");
  }

  std::ostringstream out;
  out << std::scientific << std::setprecision(2)
      << "S=2 chain permutation and M={5,7} ring cycles regenerated from "
         "their generators, worst entry "
      << worst;
  return out.str();
}

std::string criterion_block_variables() {
  long long round_trips = 0;
  for (int S : {3, 5, 7}) {
    for (int trial = 0; trial < 200; ++trial) {
      const spin_chain c = random_chain(
          S, 606060ull * static_cast<std::uint64_t>(S) +
                 static_cast<std::uint64_t>(trial));
      const occupation_field base = occupation(c);
      std::vector<block_field> levels;
      levels.push_back(block_transform(base));
      for (int r = 2; r <= 6; ++r) {
        levels.push_back(block_transform(levels.back()));
      }
      block_field cur = levels.back();
      for (int r = 6; r >= 2; --r) {
        cur = block_inverse(cur);
        require(cur == levels[static_cast<std::size_t>(r) - 2],
                "inverse missed level " + std::to_string(r - 1) + " at S=" +
                    std::to_string(S));
      }
      require(to_occupation(block_inverse(cur)) == base,
              "level-1 inverse missed the occupation field at S=" +
                  std::to_string(S));
      ++round_trips;
    }
  }

  bool rejected = false;
  try {
    const occupation_field even(4, {1, 0, 1, 1, 0, 0, 1, 0});
    block_inverse(block_transform(even));
  } catch (const noninvertible_error&) {
    rejected = true;
  }
  require(rejected, "S=4 inversion must raise noninvertible_error");

  const occupation_field ones(7, std::vector<int>(14, 1));
  block_field cur = block_transform(ones);
  for (int r = 1; r <= 6; ++r) {
    const long long bound = 1LL << r;
    for (long long v : cur.values) {
      require(v <= bound && v >= 0,
              "level-" + std::to_string(r) + " value " + std::to_string(v) +
                  " outside [0, 2^" + std::to_string(r) + "]");
    }
    if (r < 6) cur = block_transform(cur);
  }
  return std::to_string(round_trips) +
         " exact 6-level round trips (S=3,5,7); S=4 raises "
         "noninvertible_error; all-ones stays within 2^r through level 6";
}

std::string criterion_determinism_performance() {
  namespace fs = std::filesystem;
  const kernel_guard guard;

  const fs::path dir =
      fs::temp_directory_path() /
      ("nin-accept-" +
       std::to_string(clock_type::now().time_since_epoch().count()));
  fs::create_directories(dir);

  auto dirac_artifacts = [&](const std::string& tag,
                             const std::string& kernel) {
    dirac_config cfg;
    cfg.pairs = 4;
    cfg.transverse = 7;
    cfg.steps = 24;
    cfg.init = "random:123";
    cfg.kernel = kernel;
    cfg.csv = (dir / (tag + ".csv")).string();
    cfg.pgm = (dir / (tag + ".pgm")).string();
    cfg.state_out = (dir / (tag + ".state")).string();
    cfg.bitplane = (dir / (tag + ".bits")).string();
    std::ostringstream sink;
    run_dirac_experiment(cfg, sink);
    return read_file(cfg.csv) + '\0' + read_file(cfg.pgm) + '\0' +
           read_file(cfg.state_out) + '\0' + read_file(cfg.bitplane);
  };
  auto weyl_artifacts = [&](const std::string& tag) {
    weyl_config cfg;
    cfg.half_size = 6;
    cfg.steps = 12;
    cfg.init = "random:9";
    cfg.csv = (dir / (tag + ".csv")).string();
    cfg.chain_out = (dir / (tag + ".chain")).string();
    std::ostringstream sink;
    run_weyl_experiment(cfg, sink);
    return read_file(cfg.csv) + '\0' + read_file(cfg.chain_out);
  };

  const std::string a = dirac_artifacts("a", "auto");
  const std::string b = dirac_artifacts("b", "auto");
  const std::string c = dirac_artifacts("c", "scalar");
  require(a == b, "repeated run produced different bytes");
  require(a == c, "scalar and auto kernels produced different bytes");
  const std::string wa = weyl_artifacts("wa");
  const std::string wb = weyl_artifacts("wb");
  require(wa == wb, "repeated chain run produced different bytes");
  fs::remove_all(dir);
  kernels::force_backend("auto");

  const geometry big(100000, 7);
  necklace_state s = random_state(big, 1);
  step_scratch scratch;
  step_in_place(s, scratch);  // sizes the scratch buffers
  double best = 1e9;
  for (int rep = 0; rep < 3; ++rep) {
    const auto t0 = clock_type::now();
    step_in_place(s, scratch);
    best = std::min(best, seconds_since(t0));
  }
  require(best < 1.0, "one K=100000 step took " + fmt_seconds(best));
  std::ostringstream out;
  out << "artifacts byte-identical across reruns and across scalar/auto "
         "kernels; one K=100000, M=7 step: "
      << std::fixed << std::setprecision(3) << best * 1000.0 << " ms ("
      << kernels::backend_for(7).name << " kernel)";
  return out.str();
}

}  // namespace

std::vector<criterion_result> run_acceptance_suite() {
  std::vector<criterion_result> results;
  results.push_back(
      run_one(1, "oracle-equivalence", criterion_oracle_equivalence));
  results.push_back(
      run_one(2, "pair-scatter-transport", criterion_pair_scatter_transport));
  results.push_back(run_one(3, "reversibility", criterion_reversibility));
  results.push_back(
      run_one(4, "step-bijectivity", criterion_step_bijectivity));
  results.push_back(
      run_one(5, "second-order-relation", criterion_second_order_relation));
  results.push_back(run_one(6, "chain-period-conservation",
                            criterion_chain_period_conservation));
  results.push_back(
      run_one(7, "transposition-routes", criterion_transposition_routes));
  results.push_back(
      run_one(8, "cogwheel-spectrum", criterion_cogwheel_spectrum));
  results.push_back(
      run_one(9, "cycle-hamiltonian", criterion_cycle_hamiltonian));
  results.push_back(
      run_one(10, "block-variables", criterion_block_variables));
  results.push_back(run_one(11, "determinism-performance",
                            criterion_determinism_performance));
  return results;
}

void print_results(const std::vector<criterion_result>& results,
                   std::ostream& out) {
  const std::size_t total = results.size();
  for (const auto& r : results) {
    out << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << r.index
        << "/" << total << "  " << std::left << std::setw(26) << r.name
        << std::right << " (" << fmt_seconds(r.seconds) << ")  " << r.detail
        << "\n";
  }
}

bool all_passed(const std::vector<criterion_result>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return !results.empty();
}

}  // namespace nin
