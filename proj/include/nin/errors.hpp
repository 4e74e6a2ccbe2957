#pragma once

#include <stdexcept>

namespace nin {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid sizes: even transverse ring, pair count < 1, bad time scale, ...
struct geometry_error : error {
  using error::error;
};

// Malformed content: out-of-range values, rows without exactly one up spin,
// inconsistent block fields.
struct state_error : error {
  using error::error;
};

// A requested exact inverse does not exist.
struct noninvertible_error : error {
  using error::error;
};

// A numerical check ran and exceeded its bound.
struct verification_error : error {
  using error::error;
};

struct io_error : error {
  using error::error;
};

}  // namespace nin
