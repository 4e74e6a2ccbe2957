#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

#include "nin/cogwheel.hpp"
#include "nin/serialize.hpp"
#include "nin/weyl.hpp"

using namespace nin;
using std::numbers::pi;

namespace {

double max_abs(const dense_matrix& a) { return a.cwiseAbs().maxCoeff(); }

constexpr std::complex<double> minus_i{0.0, -1.0};

}  // namespace

TEST_CASE("hop matrix structure") {
  const cogwheel w(4, 1.0, {0.3, -0.2, 0.5, 0.1});
  const dense_matrix u = permutation_unitary(w);
  for (int c = 0; c < 4; ++c) {
    for (int r = 0; r < 4; ++r) {
      if (r == (c + 1) % 4) {
        CHECK(std::abs(u(r, c) - std::exp(std::complex<double>(
                                     0.0, w.phases[c]))) < 1e-15);
      } else {
        CHECK(u(r, c) == std::complex<double>(0.0, 0.0));
      }
    }
  }
  // N hops multiply out to the accumulated phase times the identity.
  dense_matrix power = dense_matrix::Identity(4, 4);
  for (int i = 0; i < 4; ++i) power = u * power;
  const auto total = std::exp(std::complex<double>(0.0, 0.7));
  CHECK(max_abs(power - total * dense_matrix::Identity(4, 4)) < 1e-12);
}

TEST_CASE("three-state generator entries are pinned") {
  const dense_matrix h = hamiltonian_standard(cogwheel(3));
  CHECK(h(0, 0).real() == doctest::Approx(2.0943951023931953).epsilon(1e-15));
  CHECK(h(0, 0).imag() == doctest::Approx(0.0));
  CHECK(h(0, 1).real() ==
        doctest::Approx(-1.0471975511965976).epsilon(1e-15));
  CHECK(h(0, 1).imag() == doctest::Approx(0.6045997880780728).epsilon(1e-15));
  CHECK(max_abs(h - h.adjoint()) < 1e-15);
}

TEST_CASE("exponential reproduces the hop matrix for every small cycle") {
  for (int n = 1; n <= 16; ++n) {
    CHECK(verify_exponential(cogwheel(n)) <= 1e-9);
  }
  // The tick length cancels between generator and exponent.
  CHECK(verify_exponential(cogwheel(5, 0.5)) <= 1e-9);
  CHECK(verify_exponential(cogwheel(5, 2.0)) <= 1e-9);
  CHECK(verify_exponential(cogwheel(5, 1e-3)) <= 1e-9);
}

TEST_CASE("generator equals its spectral sum") {
  const int n = 7;
  const cogwheel w(n);
  const auto e = hamiltonian_diagonal(w);
  dense_matrix sum = dense_matrix::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        sum(r, c) += e[m] *
                     std::exp(std::complex<double>(
                         0.0, 2.0 * pi * m * (r - c) / n)) /
                     static_cast<double>(n);
      }
    }
  }
  CHECK(max_abs(sum - hamiltonian_standard(w)) < 1e-12);
}

TEST_CASE("uniform ladder spectrum") {
  const cogwheel w(6, 2.0);
  const auto e = hamiltonian_diagonal(w);
  REQUIRE(e.size() == 6);
  for (int n = 0; n < 6; ++n) {
    CHECK(e[n] == doctest::Approx(2.0 * pi * n / 12.0).epsilon(1e-15));
  }
  const cogwheel phased(4, 1.0, {0.3, -0.2, 0.5, 0.1});
  const auto shifted = hamiltonian_diagonal(phased);
  for (int n = 0; n < 4; ++n) {
    CHECK(shifted[n] == doctest::Approx((2.0 * pi * n - 0.7) / 4.0));
  }
}

TEST_CASE("closed forms require zero phases") {
  const cogwheel phased(3, 1.0, {0.1, 0.0, 0.0});
  CHECK_THROWS_AS(hamiltonian_standard(phased), state_error);
  CHECK_THROWS_AS(cogwheel_exponential(phased), state_error);
  CHECK_THROWS_AS(cogwheel(3, 1.0, {0.1, 0.2}), geometry_error);
  CHECK_THROWS_AS(cogwheel(0), geometry_error);
  CHECK_THROWS_AS(cogwheel(3, 0.0), geometry_error);
  CHECK_THROWS_AS(cogwheel(4097), geometry_error);
}

TEST_CASE("permutation matrices and cycles") {
  const std::vector<int> perm{1, 2, 0, 3, 5, 4};
  const dense_matrix p = permutation_matrix(perm);
  CHECK(p(1, 0) == std::complex<double>(1.0, 0.0));
  CHECK(p(3, 3) == std::complex<double>(1.0, 0.0));
  CHECK(max_abs(p * p.adjoint() - dense_matrix::Identity(6, 6)) < 1e-15);
  const auto cycles = permutation_cycles(perm);
  REQUIRE(cycles.size() == 3);
  CHECK(cycles[0] == std::vector<int>{0, 1, 2});
  CHECK(cycles[1] == std::vector<int>{3});
  CHECK(cycles[2] == std::vector<int>{4, 5});
  CHECK_THROWS_AS(permutation_matrix({0, 0}), state_error);
  CHECK_THROWS_AS(permutation_matrix({1, 2}), state_error);
  CHECK_THROWS_AS(permutation_matrix({}), geometry_error);
  CHECK_THROWS_AS(cycle_hamiltonian(std::vector<int>(4097), 1.0),
                  geometry_error);
}

TEST_CASE("generators for arbitrary permutations regenerate them") {
  const std::vector<int> identity{0, 1, 2, 3, 4};
  CHECK(max_abs(cycle_hamiltonian(identity, 1.0)) == 0.0);
  CHECK(max_abs(cycle_exponential(identity, 1.0) -
                dense_matrix::Identity(5, 5)) < 1e-15);

  const std::vector<int> swap_two{1, 0};
  const dense_matrix h2 = cycle_hamiltonian(swap_two, 1.0);
  CHECK(h2(0, 0).real() == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(h2(0, 1).real() == doctest::Approx(-pi / 2).epsilon(1e-15));
  CHECK(h2(0, 1).imag() == doctest::Approx(0.0));

  const std::vector<int> mixed{3, 0, 7, 5, 4, 1, 2, 9, 6, 8};
  for (double t : {0.25, 1.0, 3.0}) {
    const dense_matrix target = permutation_matrix(mixed);
    const dense_matrix via_cycles = cycle_exponential(mixed, t);
    const dense_matrix via_generic =
        generic_exponential(minus_i * t * cycle_hamiltonian(mixed, t));
    CHECK(max_abs(via_cycles - target) < 1e-12);
    CHECK(max_abs(via_generic - target) < 1e-12);
  }
}

TEST_CASE("the chain tick's permutation decomposes as pinned") {
  std::vector<int> perm(16);
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    std::vector<int> spins(4);
    for (int i = 0; i < 4; ++i) spins[i] = (bits >> i & 1) ? 1 : -1;
    const spin_chain next = chain_step(spin_chain(2, spins));
    std::uint64_t out = 0;
    for (int i = 0; i < 4; ++i) {
      if (next.s[i] > 0) out |= std::uint64_t{1} << i;
    }
    perm[bits] = static_cast<int>(out);
  }
  const auto cycles = permutation_cycles(perm);
  int fixed = 0, two = 0;
  for (const auto& c : cycles) {
    if (c.size() == 1) ++fixed;
    if (c.size() == 2) ++two;
  }
  CHECK(fixed == 4);
  CHECK(two == 6);
  CHECK(cycles.size() == 10);
  CHECK(max_abs(cycle_exponential(perm, 1.0) - permutation_matrix(perm)) <
        1e-12);
}

TEST_CASE("spin-exchange identity and noncommutativity") {
  const pauli_report r = exchange_pauli_check();
  CHECK(r.exchange_deviation <= 1e-12);
  CHECK(r.commutator_max_entry > 0.5);
}

TEST_CASE("spectrum CSV layout") {
  const cogwheel w(2);
  CHECK(to_spectrum_csv(w, hamiltonian_diagonal(w)) ==
        "states,time_scale,index,eigenvalue\n"
        "2,1,1,0\n"
        "2,1,2,3.1415926535897931\n");
}
