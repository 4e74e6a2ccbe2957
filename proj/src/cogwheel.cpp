#include "nin/cogwheel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace nin {

namespace {

constexpr double pi = std::numbers::pi;
const std::complex<double> i_unit{0.0, 1.0};

void require_dimension(std::size_t dim) {
  if (dim < 1 || dim > max_permutation_dimension) {
    throw geometry_error("dimension " + std::to_string(dim) +
                         " outside [1, " +
                         std::to_string(max_permutation_dimension) + "]");
  }
}

// Standard-basis generator block for one pure N-cycle; see
// hamiltonian_standard for the entries.
dense_matrix cycle_block(int n, double t) {
  dense_matrix h(n, n);
  const double diag = pi * (n - 1) / (n * t);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (r == c) {
        h(r, c) = diag;
      } else {
        h(r, c) = (pi / (n * t)) *
                  std::complex<double>(-1.0, -1.0 / std::tan(pi * (r - c) / n));
      }
    }
  }
  return h;
}

// exp(-i H T) of one pure N-cycle block in its Fourier eigenbasis:
// sum_m e^{-2 pi i m / N} |v_m><v_m|, (v_m)_j = w^{mj} / sqrt(N).
dense_matrix cycle_block_exponential(int n) {
  dense_matrix x = dense_matrix::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    const double em = 2.0 * pi * m / n;
    const std::complex<double> scale = std::exp(-i_unit * em) / double(n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        x(r, c) += scale * std::exp(i_unit * (2.0 * pi * m * (r - c) / n));
      }
    }
  }
  return x;
}

}  // namespace

cogwheel::cogwheel(int N, double T, std::vector<double> ph)
    : states(N), time_scale(T), phases(std::move(ph)) {
  require_dimension(static_cast<std::size_t>(N < 0 ? 0 : N));
  if (!(T > 0.0)) {
    throw geometry_error("time scale must be positive");
  }
  if (phases.empty()) {
    phases.assign(states, 0.0);
  }
  if (static_cast<int>(phases.size()) != states) {
    throw geometry_error("phase count " + std::to_string(phases.size()) +
                         " != state count " + std::to_string(states));
  }
}

double cogwheel::phase_sum() const {
  double sum = 0.0;
  for (double p : phases) sum += p;
  return sum;
}

bool cogwheel::zero_phases() const {
  for (double p : phases) {
    if (p != 0.0) return false;
  }
  return true;
}

dense_matrix permutation_unitary(const cogwheel& w) {
  dense_matrix u = dense_matrix::Zero(w.states, w.states);
  for (int k = 0; k < w.states; ++k) {
    u((k + 1) % w.states, k) = std::exp(i_unit * w.phases[k]);
  }
  return u;
}

dense_matrix hamiltonian_standard(const cogwheel& w) {
  if (!w.zero_phases()) {
    throw state_error(
        "the closed-form generator assumes zero phases; diagonalize instead");
  }
  return cycle_block(w.states, w.time_scale);
}

std::vector<double> hamiltonian_diagonal(const cogwheel& w) {
  std::vector<double> e(w.states);
  const double sum = w.phase_sum();
  for (int n = 1; n <= w.states; ++n) {
    e[n - 1] = (2.0 * pi * (n - 1) - sum) / (w.states * w.time_scale);
  }
  return e;
}

dense_matrix cogwheel_exponential(const cogwheel& w) {
  if (!w.zero_phases()) {
    throw state_error("the Fourier eigenbasis route assumes zero phases");
  }
  return cycle_block_exponential(w.states);
}

dense_matrix generic_exponential(const dense_matrix& a) { return a.exp(); }

double verify_exponential(const cogwheel& w, double tol) {
  const dense_matrix u = permutation_unitary(w);
  const dense_matrix h = hamiltonian_standard(w);
  const dense_matrix via_fourier = cogwheel_exponential(w);
  const dense_matrix via_generic =
      generic_exponential(-i_unit * w.time_scale * h);
  double worst = 0.0;
  int worst_r = 0, worst_c = 0;
  for (int r = 0; r < w.states; ++r) {
    for (int c = 0; c < w.states; ++c) {
      const double dev = std::max(std::abs(via_fourier(r, c) - u(r, c)),
                                  std::abs(via_generic(r, c) - u(r, c)));
      if (dev > worst) {
        worst = dev;
        worst_r = r;
        worst_c = c;
      }
    }
  }
  if (!(worst <= tol)) {
    throw verification_error(
        "exp(-iHT) deviates from the hop matrix by " + std::to_string(worst) +
        " at entry (" + std::to_string(worst_r) + ", " +
        std::to_string(worst_c) + ")");
  }
  return worst;
}

namespace {

void require_permutation(const std::vector<int>& perm) {
  require_dimension(perm.size());
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(perm.size(), 0);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) {
      throw state_error("not a permutation of 0.." + std::to_string(n - 1));
    }
    seen[v] = 1;
  }
}

}  // namespace

dense_matrix permutation_matrix(const std::vector<int>& perm) {
  require_permutation(perm);
  const int n = static_cast<int>(perm.size());
  dense_matrix p = dense_matrix::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    p(perm[s], s) = 1.0;
  }
  return p;
}

std::vector<std::vector<int>> permutation_cycles(const std::vector<int>& perm) {
  require_permutation(perm);
  std::vector<std::vector<int>> cycles;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    std::vector<int> cycle{static_cast<int>(s)};
    seen[s] = 1;
    for (int c = perm[s]; c != static_cast<int>(s); c = perm[c]) {
      cycle.push_back(c);
      seen[c] = 1;
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

dense_matrix cycle_hamiltonian(const std::vector<int>& perm,
                               double time_scale) {
  if (!(time_scale > 0.0)) {
    throw geometry_error("time scale must be positive");
  }
  const auto cycles = permutation_cycles(perm);
  dense_matrix h = dense_matrix::Zero(perm.size(), perm.size());
  for (const auto& cycle : cycles) {
    const int nc = static_cast<int>(cycle.size());
    if (nc == 1) continue;  // fixed point: zero generator entry
    const dense_matrix block = cycle_block(nc, time_scale);
    for (int r = 0; r < nc; ++r) {
      for (int c = 0; c < nc; ++c) {
        h(cycle[r], cycle[c]) = block(r, c);
      }
    }
  }
  return h;
}

dense_matrix cycle_exponential(const std::vector<int>& perm,
                               double time_scale) {
  if (!(time_scale > 0.0)) {
    throw geometry_error("time scale must be positive");
  }
  const auto cycles = permutation_cycles(perm);
  dense_matrix x = dense_matrix::Zero(perm.size(), perm.size());
  for (const auto& cycle : cycles) {
    const int nc = static_cast<int>(cycle.size());
    const dense_matrix block = cycle_block_exponential(nc);
    for (int r = 0; r < nc; ++r) {
      for (int c = 0; c < nc; ++c) {
        x(cycle[r], cycle[c]) = block(r, c);
      }
    }
  }
  return x;
}

pauli_report exchange_pauli_check() {
  using m2 = Eigen::Matrix2cd;
  m2 sx, sy, sz, id;
  sx << 0, 1, 1, 0;
  sy << 0, -i_unit, i_unit, 0;
  sz << 1, 0, 0, -1;
  id.setIdentity();

  const auto kron = [](const dense_matrix& a, const dense_matrix& b) {
    dense_matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int r = 0; r < a.rows(); ++r) {
      for (int c = 0; c < a.cols(); ++c) {
        out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
      }
    }
    return out;
  };

  const dense_matrix dot =
      kron(sx, sx) + kron(sy, sy) + kron(sz, sz);
  const dense_matrix exchange =
      (dot + dense_matrix::Identity(4, 4)) / 2.0;

  // the exchange operator permutes the two-spin basis: |ab> -> |ba>
  dense_matrix swap_matrix = dense_matrix::Zero(4, 4);
  swap_matrix(0, 0) = 1.0;
  swap_matrix(1, 2) = 1.0;
  swap_matrix(2, 1) = 1.0;
  swap_matrix(3, 3) = 1.0;

  double dev = (exchange - swap_matrix).cwiseAbs().maxCoeff();
  dev = std::max(dev, (exchange * exchange - dense_matrix::Identity(4, 4))
                          .cwiseAbs()
                          .maxCoeff());

  const dense_matrix id2 = dense_matrix::Identity(2, 2);
  const dense_matrix p12 = kron(exchange, id2);
  const dense_matrix p23 = kron(id2, exchange);
  const double comm = (p12 * p23 - p23 * p12).cwiseAbs().maxCoeff();

  return {dev, comm};
}

}  // namespace nin
