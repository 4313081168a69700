#pragma once

#include <cstddef>
#include <vector>

#include "ontca/linalg.hpp"

namespace ontca {

/// N states permuted cyclically, one per time step T.
struct CogwheelSpec {
  std::size_t n = 1;
  double t = 1.0;
  /// Optional phase per nonzero entry; empty means all zero. Only
  /// step_matrix honours nonzero phases.
  std::vector<double> phases;
};

/// Throws ValidationError for N == 0, T <= 0 or a phase array of wrong length.
void validate(const CogwheelSpec &spec);

/// Unitary cyclic shift with entry (n, n+1 mod N) = exp(i phi_n).
///
/// The superdiagonal layout is the one for which
/// exp(-i hamiltonian_standard_basis(spec) T) reproduces this matrix.
ComplexMatrix step_matrix(const CogwheelSpec &spec);

/// 2 pi (n-1) / (N T), n = 1..N, ascending. Requires zero phases.
std::vector<double> eigenvalues_h(const CogwheelSpec &spec);

/// Diagonal form of the Hamiltonian (the eigenvalues above).
ComplexMatrix hamiltonian_diagonal(const CogwheelSpec &spec);

/// Single standard-basis element H(n, m), 0-based. Diagonal pi(N-1)/(NT),
/// off-diagonal (pi/(NT)) (-1 + i cot(pi (n-m)/N)).
Complex hamiltonian_element(std::size_t n_states, double t, long long n, long long m);

/// Dense standard-basis Hamiltonian; Hermitian by construction (the upper
/// triangle is the conjugate of the lower one).
ComplexMatrix hamiltonian_standard_basis(const CogwheelSpec &spec);

/// Unitary DFT with kernel exp(-2 pi i j k / N) / sqrt(N).
ComplexMatrix dft_matrix(std::size_t n);

} // namespace ontca
