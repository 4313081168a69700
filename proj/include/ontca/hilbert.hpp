#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ontca/linalg.hpp"
#include "ontca/permutation.hpp"
#include "ontca/spin_chain.hpp"

namespace ontca {

/// Largest number of sites whose 2^sites basis states are enumerated.
inline constexpr int kMaxEnumeratedSites = 24;
/// Largest dimension assembled as a dense matrix (2S = 12).
inline constexpr std::size_t kMaxDenseDim = 4096;

/// Bijection between ChainState and [0, 2^(2S)): bit k is set iff site k+1
/// holds +1.
class BasisIndexer {
public:
  explicit BasisIndexer(int s);

  int s() const { return s_; }
  std::uint64_t dim() const { return std::uint64_t{1} << (2 * s_); }
  std::uint64_t encode(const ChainState &state) const;
  ChainState decode(std::uint64_t index) const;

private:
  int s_;
};

/// Normalized complex amplitudes over the ontological basis.
struct StateVector {
  ComplexVector amps;

  std::size_t dim() const { return static_cast<std::size_t>(amps.size()); }
  static StateVector basis(std::size_t dim, std::size_t index);
};

/// Permutation of the 2^n basis states induced by a permutation of n sites.
Permutation induced_basis_permutation(const Permutation &site_perm);

/// Dense 0/1 matrix with L(p(i), i) = 1, so L e_i = e_{p(i)}.
ComplexMatrix lift(const Permutation &p);

/// The chain update acting on all 2^(2S) basis indices. BoundError when
/// 2S > kMaxEnumeratedSites.
Permutation chain_update_on_basis(int s);

/// One Hamiltonian block on a single orbit, listed forward: b, Ub, U^2 b, ...
struct OrbitBlock {
  std::vector<Index> orbit;
  ComplexMatrix block;

  std::size_t length() const { return orbit.size(); }
};

/// Generator G of a basis permutation with exp(-i G step) = lift(p), built
/// orbit by orbit from cogwheel blocks with eigenvalues in [0, 2 pi / step).
/// Fixed points carry 0.
class OrbitGenerator {
public:
  OrbitGenerator(const Permutation &basis_perm, double step);

  std::size_t dim() const { return dim_; }
  double step() const { return step_; }
  const std::vector<std::vector<Index>> &orbits() const { return orbits_; }
  std::size_t fixed_point_count() const;

  /// Block for orbits of length L (transpose of the L-state cogwheel
  /// Hamiltonian because orbits are listed forward).
  const ComplexMatrix &block_for_length(std::size_t length) const;
  OrbitBlock block(std::size_t orbit_index) const;

  ComplexVector apply(const ComplexVector &v) const;
  /// BoundError when dim > kMaxDenseDim.
  ComplexMatrix to_dense() const;
  /// exp(-i G t) assembled blockwise; BoundError when dim > kMaxDenseDim.
  ComplexMatrix exp_dense(double t) const;

  /// Max over orbits of |exp(-i block step) - forward shift|.
  double max_orbit_roundtrip_error() const;

private:
  std::size_t dim_;
  double step_;
  std::vector<std::vector<Index>> orbits_;
  std::map<std::size_t, ComplexMatrix> blocks_;
};

/// Chain Hamiltonian over all 2^(2S) basis states, orbit form.
OrbitGenerator extract_hamiltonian(int s, double t);

/// Dense evaluation of the cotangent series
///   (pi/step) (1 - (i/(2 period)) sum_{n=1}^{period-1} cot(pi n/period) (P^n - P^-n))
/// for a basis permutation P with P^period = 1. `literal_sign` flips the sign
/// of the series term (the form that generates P^dagger).
ComplexMatrix cot_series_generator(const Permutation &basis_perm, int period, double step,
                                   bool literal_sign = false);

/// max |Q (A - B) Q| with Q the projector onto the complement of the
/// P-invariant vectors, Q = 1 - (1/period) sum_{m<period} P^m.
double noninvariant_deviation(const ComplexMatrix &a, const ComplexMatrix &b,
                              const Permutation &basis_perm, int period);

struct SeriesCheck {
  double deviation = 0.0;               ///< sign-corrected series vs orbit form
  double literal_sign_deviation = 0.0;  ///< printed-sign series vs orbit form
  double full_space_deviation = 0.0;    ///< without projecting out invariant vectors
};

/// Compares the dense cotangent series with extract_hamiltonian on the
/// non-invariant subspace. BoundError when 2S > 12.
SeriesCheck verify_series_form(int s, double t);

/// (sigma_i . sigma_j + 1)/2 on n_qubits, assembled from Kronecker products.
ComplexMatrix pauli_exchange(int i, int j, int n_qubits);

/// Permutation of the 2^n basis states that swaps the spins of sites i and j.
Permutation exchange_on_basis(int i, int j, int n_qubits);

/// i exp(-i (pi/2)(1+eps) P_ij) = i cos((pi/2)(1+eps)) 1 + sin((pi/2)(1+eps)) P_ij.
ComplexMatrix perturbed_exchange(int i, int j, int n_qubits, double eps);

/// 1 - max |amp|^2. ValidationError when |norm^2 - 1| > 1e-12.
double superposition_measure(const StateVector &v);

/// "len=<L> rep=<basis index>" per orbit, in orbit order.
std::string orbit_report(const OrbitGenerator &g);

} // namespace ontca
