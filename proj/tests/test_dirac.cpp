#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "nin/dirac.hpp"
#include "nin/serialize.hpp"

using namespace nin;

namespace {

wave_field field(const geometry& g, const std::vector<int>& vals) {
  return {g, vals};
}

}  // namespace

TEST_CASE("five ticks of a fixed start are pinned") {
  const geometry g(3, 5);
  const trajectory t = run(encode(field(g, {2, -1, 0, 1, -2, 1})), 5);
  REQUIRE(t.step_count() == 5);
  CHECK(t.snapshots[0] == field(g, {2, -1, 0, 1, -2, 1}));
  CHECK(t.snapshots[1] == field(g, {1, -2, 2, -1, 1, -1}));
  CHECK(t.snapshots[2] == field(g, {-1, 0, 2, 0, 2, 0}));
  CHECK(t.snapshots[3] == field(g, {2, -1, 2, 2, -1, 2}));
  CHECK(t.snapshots[4] == field(g, {-2, -1, 2, 1, 0, 1}));
  CHECK(t.snapshots[5] == field(g, {-2, -1, -1, 1, 2, 1}));
}

TEST_CASE("a lone excitation splits into both channels") {
  const geometry g(3, 7);
  const necklace_state s = encode(field(g, {0, 0, 1, 0, 0, 0}));
  CHECK(decode(step(s)) == field(g, {1, 0, 0, 1, 0, 0}));
}

TEST_CASE("one tick factorizes into mixing then transport") {
  for (int m : {3, 7, 9}) {
    const geometry g(4, m);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const necklace_state s = random_state(g, seed);
      REQUIRE(step(s) == kinematic_shift(scatter(s)));
    }
  }
}

TEST_CASE("every route into the mixing map gives the same state") {
  const geometry g(3, 7);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const necklace_state s = random_state(g, seed);
    const necklace_state mixed = scatter(s);
    CHECK(scatter_by_ring_shifts(s) == mixed);
    CHECK(scatter_by_ring_shifts(s, {2, 0, 1}) == mixed);
    CHECK(scatter_by_ring_shifts(s, {1, 2, 0}) == mixed);
    CHECK(scatter_inverse(mixed) == s);
  }
  CHECK_THROWS_AS(scatter_by_ring_shifts(random_state(g, 0), {0, 1}),
                  state_error);
  CHECK_THROWS_AS(scatter_by_ring_shifts(random_state(g, 0), {0, 1, 1}),
                  state_error);
}

TEST_CASE("transport routes agree and invert") {
  const geometry g(4, 5);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const necklace_state s = random_state(g, seed);
    const necklace_state moved = kinematic_shift(s);
    CHECK(kinematic_shift_by_transpositions(s) == moved);
    CHECK(kinematic_shift_inverse(moved) == s);
  }
}

TEST_CASE("forward and backward ticks cancel in both orders") {
  for (int m : {3, 5, 9}) {
    const geometry g(5, m);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const necklace_state s = random_state(g, seed);
      REQUIRE(step_inverse(step(s)) == s);
      REQUIRE(step(step_inverse(s)) == s);
    }
  }
}

TEST_CASE("in-place stepping matches the allocating form") {
  const geometry g(6, 9);
  necklace_state s = random_state(g, 4);
  necklace_state t = s;
  step_scratch scratch;
  for (int n = 0; n < 10; ++n) {
    step_in_place(s, scratch);
    t = step(t);
    REQUIRE(s == t);
  }
  for (int n = 0; n < 10; ++n) {
    step_inverse_in_place(s, scratch);
  }
  CHECK(s == random_state(g, 4));
}

TEST_CASE("scaled mixing exponents") {
  const geometry g7(3, 7);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const necklace_state s = random_state(g7, seed);
    // mu = 0 turns the mixing off: the tick is pure transport.
    CHECK(step(s, 0) == kinematic_shift(s));
    // 1 + mu^2 = 5 is a unit mod 7, so mu = 2 stays reversible.
    CHECK(step_inverse(step(s, 2), 2) == s);
    CHECK(step(s, 2) != step(s, 1));
  }
  // 1 + mu^2 = 5 shares a factor with M = 5: no inverse exists.
  const geometry g5(3, 5);
  const necklace_state s5 = random_state(g5, 1);
  CHECK_NOTHROW(step(s5, 2));
  CHECK_THROWS_AS(step_inverse(s5, 2), noninvertible_error);
  CHECK_THROWS_AS(step_inverse(s5, 3), noninvertible_error);  // 1+9 = 10
}

TEST_CASE("two-step window residual flags any corruption") {
  const geometry g(3, 5);
  trajectory t = run(encode(field(g, {2, -1, 0, 1, -2, 1})), 5);
  CHECK(second_order_residual(t) == 0);

  trajectory corrupt = t;
  corrupt.snapshots[2].set(3, g.wrap(corrupt.snapshots[2].at(3) + 1));
  CHECK(second_order_residual(corrupt) == 2);

  const trajectory t2 = run(random_state(geometry(4, 7), 11), 8, 2);
  CHECK(second_order_residual(t2, 2) == 0);
  CHECK(second_order_residual(t2, 1) != 0);  // wrong mass parameter shows up

  trajectory tiny{g, {t.snapshots[0], t.snapshots[1]}};
  CHECK_THROWS_AS(second_order_residual(tiny), state_error);
}

TEST_CASE("mixed-radix state indexing") {
  const geometry g(2, 3);
  CHECK(state_count(g) == 81);
  CHECK(state_count(geometry(1, 3)) == 9);
  for (std::uint64_t idx = 0; idx < 81; ++idx) {
    REQUIRE(state_index(state_from_index(g, idx)) == idx);
  }
  CHECK(state_from_index(g, 0) == necklace_state(g, {-1, -1, -1, -1}));
  CHECK(state_from_index(g, 80) == necklace_state(g, {1, 1, 1, 1}));
  CHECK_THROWS_AS(state_from_index(g, 81), state_error);
  CHECK_THROWS_AS(state_count(geometry(11, 9)), geometry_error);  // 9^22
}

TEST_CASE("trajectory CSV round trip is byte-identical") {
  const trajectory t = run(random_state(geometry(3, 7), 21), 6);
  const std::string csv = to_trajectory_csv(t);
  const trajectory back = parse_trajectory_csv(csv);
  CHECK(back.geo == t.geo);
  CHECK(back.snapshots == t.snapshots);
  CHECK(to_trajectory_csv(back) == csv);

  CHECK_THROWS_AS(parse_trajectory_csv(""), io_error);
  CHECK_THROWS_AS(parse_trajectory_csv("n,k,value\n"), io_error);
  CHECK_THROWS_AS(
      parse_trajectory_csv("# pairs=1 transverse=3 time_step=1\nn,k,value\n"),
      io_error);  // no rows
  CHECK_THROWS_AS(
      parse_trajectory_csv(
          "# pairs=1 transverse=3 time_step=1\nn,k,value\n0,2,0\n"),
      io_error);  // rows out of order
}

TEST_CASE("spacetime image layout") {
  const trajectory t = run(random_state(geometry(3, 7), 3), 10);
  const std::string pgm = to_spacetime_pgm(t);
  const std::string header = "P5\n6 11\n6\n";
  REQUIRE(pgm.substr(0, header.size()) == header);
  CHECK(pgm.size() == header.size() + 6 * 11);
  // First pixel row is the initial snapshot, gray = value + half width.
  for (int i = 0; i < 6; ++i) {
    CHECK(static_cast<unsigned char>(pgm[header.size() + i]) ==
          t.snapshots[0].values[i] + 3);
  }
  const trajectory one{t.geo, {t.snapshots[0]}};
  CHECK(to_spacetime_pgm(one).substr(0, 7) == "P5\n6 1\n");
  CHECK_THROWS_AS(to_spacetime_pgm(run(random_state(geometry(1, 257), 0), 1)),
                  io_error);
}
