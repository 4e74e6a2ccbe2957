#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstddef>
#include <string>
#include <vector>

#include "nin/geometry.hpp"
#include "nin/kernels.hpp"
#include "nin/rng.hpp"

using namespace nin;
using kernels::backend;

namespace {

std::vector<spin_t> random_lane(std::size_t n, int m, splitmix64& rng) {
  std::vector<spin_t> v(n);
  const int half = (m - 1) / 2;
  for (auto& x : v) {
    x = static_cast<spin_t>(static_cast<int>(rng.bounded(
            static_cast<std::uint64_t>(m))) - half);
  }
  return v;
}

// Restores whichever backend was active on entry.
struct backend_guard {
  std::string name;
  backend_guard() : name(kernels::active_backend().name) {}
  ~backend_guard() { kernels::force_backend(name); }
};

}  // namespace

TEST_CASE("the scalar backend always exists") {
  const backend& scalar = kernels::scalar_backend();
  CHECK(std::string(scalar.name) == "scalar");
  CHECK(scalar.max_transverse == max_transverse);
  CHECK(!kernels::available_backends().empty());
}

TEST_CASE("mix output values on a fixed lane") {
  const std::vector<spin_t> x{3, -3, 2};
  const std::vector<spin_t> y{3, -2, -3};
  for (const backend* b : kernels::available_backends()) {
    std::vector<spin_t> a(3), s(3);
    b->mix(x.data(), y.data(), a.data(), s.data(), 3, 7);
    CHECK(a == std::vector<spin_t>{-1, 2, -1});
    CHECK(s == std::vector<spin_t>{0, 1, 2});
  }
}

TEST_CASE("unmix inverts mix on every backend") {
  splitmix64 rng{2024};
  for (const backend* b : kernels::available_backends()) {
    for (int m : {3, 5, 7, 9, 101, 16383}) {
      if (m > b->max_transverse) continue;
      for (std::size_t n : {std::size_t{1}, std::size_t{3}, std::size_t{16},
                            std::size_t{33}, std::size_t{70}}) {
        const auto x = random_lane(n, m, rng);
        const auto y = random_lane(n, m, rng);
        std::vector<spin_t> a(n), s(n), rx(n), ry(n);
        b->mix(x.data(), y.data(), a.data(), s.data(), n, m);
        b->unmix(a.data(), s.data(), rx.data(), ry.data(), n, m);
        REQUIRE(rx == x);
        REQUIRE(ry == y);
      }
    }
  }
}

TEST_CASE("vector and scalar backends agree lane by lane") {
  const backend& scalar = kernels::scalar_backend();
  for (const backend* b : kernels::available_backends()) {
    if (b == &scalar) continue;
    splitmix64 rng{77};
    for (int m : {3, 7, 9, 4095, 16383}) {
      for (std::size_t n = 1; n <= 70; ++n) {
        const auto x = random_lane(n, m, rng);
        const auto y = random_lane(n, m, rng);
        std::vector<spin_t> a1(n), s1(n), a2(n), s2(n);
        scalar.mix(x.data(), y.data(), a1.data(), s1.data(), n, m);
        b->mix(x.data(), y.data(), a2.data(), s2.data(), n, m);
        REQUIRE(a1 == a2);
        REQUIRE(s1 == s2);
        std::vector<spin_t> x1(n), y1(n), x2(n), y2(n);
        scalar.unmix(a1.data(), s1.data(), x1.data(), y1.data(), n, m);
        b->unmix(a1.data(), s1.data(), x2.data(), y2.data(), n, m);
        REQUIRE(x1 == x2);
        REQUIRE(y1 == y2);
      }
    }
  }
}

TEST_CASE("backend selection and fallback") {
  const backend_guard guard;
  kernels::force_backend("scalar");
  CHECK(std::string(kernels::active_backend().name) == "scalar");
  CHECK(&kernels::backend_for(32767) == &kernels::scalar_backend());

  kernels::force_backend("auto");
  const backend& best = kernels::active_backend();
  CHECK(&kernels::backend_for(7) == &best);
  // Sizes beyond a vector backend's headroom fall back to the scalar path.
  CHECK(kernels::backend_for(max_transverse).max_transverse >=
        max_transverse);

  CHECK_THROWS_AS(kernels::force_backend("sse9"), error);
  CHECK(&kernels::active_backend() == &best);  // failed switch changes nothing
}
