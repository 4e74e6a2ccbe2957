#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nin/errors.hpp"

namespace nin {

using dense_matrix = Eigen::MatrixXcd;

inline constexpr int max_permutation_dimension = 4096;

// N states cyclically advanced one hop per tick of length T, one phase per
// hop. The closed-form generator below assumes zero phases.
struct cogwheel {
  int states;
  double time_scale;
  std::vector<double> phases;  // size N

  explicit cogwheel(int N, double T = 1.0, std::vector<double> ph = {});

  double phase_sum() const;
  bool zero_phases() const;
};

// U[(k+1) % N][k] = e^{i phi_k}, zero elsewhere.
dense_matrix permutation_unitary(const cogwheel& w);

// Standard-basis generator (zero phases): diagonal pi(N-1)/(NT), off-diagonal
// (pi/NT) * (-1 - i*cot(pi(n-m)/N)). Hermitian; exp(-iHT) equals the hop
// matrix above.
dense_matrix hamiltonian_standard(const cogwheel& w);

// Eigenvalues (2 pi (n-1) - sum phi) / (N T), n = 1..N.
std::vector<double> hamiltonian_diagonal(const cogwheel& w);

// exp(-i H T) assembled in the discrete-Fourier eigenbasis, where the ladder
// spectrum is known exactly (zero phases).
dense_matrix cogwheel_exponential(const cogwheel& w);

// exp(a) by scaling-and-squaring; the independent cross-check route.
dense_matrix generic_exponential(const dense_matrix& a);

// max-entry |exp(-i H T) - U| via both exponential routes; throws
// verification_error (naming the worst entry) when above tol.
double verify_exponential(const cogwheel& w, double tol = 1e-9);

// perm[i] = image of state i; must be a bijection on 0..dim-1, dim <= 4096.
dense_matrix permutation_matrix(const std::vector<int>& perm);
std::vector<std::vector<int>> permutation_cycles(const std::vector<int>& perm);

// Hermitian generator for an arbitrary permutation: each cycle of length N_c
// gets the standard-basis block above (fixed points get a zero entry), so
// exp(-i H T) is the permutation matrix.
dense_matrix cycle_hamiltonian(const std::vector<int>& perm, double time_scale);
// The matching exponential assembled cycle by cycle in the Fourier basis.
dense_matrix cycle_exponential(const std::vector<int>& perm, double time_scale);

struct pauli_report {
  double exchange_deviation;    // max of |P - (sigma.sigma + 1)/2| and |P^2 - 1|
  double commutator_max_entry;  // max |[P12, P23]| on three spins; nonzero
};
pauli_report exchange_pauli_check();

}  // namespace nin
