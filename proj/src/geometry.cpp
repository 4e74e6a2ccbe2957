#include "nin/geometry.hpp"

#include <string>

namespace nin {

void require_transverse(int transverse) {
  if (transverse < 3 || transverse % 2 == 0 || transverse > max_transverse) {
    throw geometry_error("transverse ring size must be odd, >= 3, <= " +
                         std::to_string(max_transverse) + "; got " +
                         std::to_string(transverse));
  }
}

int wrap_value(long long v, int transverse) {
  require_transverse(transverse);
  const int half = (transverse - 1) / 2;
  long long r = v % transverse;  // (-M, M)
  if (r > half) r -= transverse;
  if (r < -half) r += transverse;
  return static_cast<int>(r);
}

int half_inverse(int transverse) {
  require_transverse(transverse);
  return (transverse + 1) / 2;
}

geometry::geometry(int pairs_, int transverse_, double time_step_)
    : pairs(pairs_), transverse(transverse_), time_step(time_step_) {
  if (pairs < 1) {
    throw geometry_error("pair count must be >= 1; got " +
                         std::to_string(pairs));
  }
  require_transverse(transverse);
  if (!(time_step > 0.0)) {
    throw geometry_error("time step must be positive");
  }
}

}  // namespace nin
