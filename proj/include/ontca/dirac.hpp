#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ontca/permutation.hpp"
#include "ontca/trace.hpp"

namespace ontca {

/// Representative of x in {-M..M} modulo 2M+1 (M+1 == -M).
std::int64_t wrap(std::int64_t x, std::int64_t m);

enum class TableKind { Add, Sub };

/// Mass-term arithmetic on (2M+1)-valued spins. Row = value of the mass term,
/// column = value of the mover; Add gives wrap(row + col), Sub wrap(col - row).
struct ArithmeticTable {
  std::int64_t m = 1;
  TableKind kind = TableKind::Add;
  /// table[r][c] for r, c indexing the values -M..M in ascending order.
  std::vector<std::vector<std::int64_t>> table;

  std::int64_t at(std::int64_t row_value, std::int64_t col_value) const;
  /// The permutation that rearranges the symbol list s^1..s^(2M+1) into the
  /// row: each symbol moves to the column where it appears in the row.
  Permutation row_permutation(std::int64_t row_value) const;
  /// A transposition sequence (application order) realizing row_permutation.
  std::vector<Transposition> row_transpositions(std::int64_t row_value) const;
};

ArithmeticTable build_table(std::int64_t m, TableKind kind);

/// Text grid in symbol form (s1 = -M, ..., s(2M+1) = +M) with the mover label
/// on the header row and the mass-term label below the last row.
std::string format_table(const ArithmeticTable &table);

struct DiracSpec {
  int s = 1;
  std::int64_t m = 1;
  std::int64_t mu = 1;
};

void validate(const DiracSpec &spec);

/// 2S values in {-M..M}; odd sites (index 0, 2, ...) carry left-movers, even
/// sites right-movers.
class GenChainState {
public:
  GenChainState(int s, std::int64_t m, std::vector<std::int64_t> values);

  static GenChainState zero(int s, std::int64_t m);

  int s() const { return s_; }
  std::int64_t m() const { return m_; }
  std::span<const std::int64_t> values() const { return values_; }

  friend bool operator==(const GenChainState &, const GenChainState &) = default;

private:
  int s_;
  std::int64_t m_;
  std::vector<std::int64_t> values_;
};

/// One synchronous update:
///   L'(2j-1) = L(2j+1) - mu R(2j),  R'(2j) = R(2j-2) + mu L(2j-1),
/// sites modulo 2S, results wrapped into {-M..M}.
GenChainState dirac_step(const GenChainState &state, const DiracSpec &spec);

/// Same update without wrapping, on real values (the real-valued counterpart).
std::vector<double> dirac_step_real(std::span<const double> values, double mu);

SpacetimeTrace evolve_dirac(const GenChainState &state, const DiracSpec &spec,
                            std::size_t steps);

/// Configuration index in base 2M+1; site k is digit k.
std::uint64_t encode_config(std::span<const std::int64_t> values, std::int64_t m);
std::vector<std::int64_t> decode_config(std::uint64_t index, int s, std::int64_t m);

/// Largest configuration space enumerated exhaustively.
inline constexpr std::uint64_t kMaxDiracConfigs = 10'000'000;

struct BijectivityReport {
  bool bijective = false;
  std::uint64_t domain_size = 0;
  std::uint64_t image_size = 0;
  bool exhaustive = false;
  std::optional<Permutation> certificate; ///< exhaustive mode, when bijective
  std::int64_t determinant_mod = 0;       ///< modular mode
};

/// Configuration count (2M+1)^(2S), or nullopt on overflow.
std::optional<std::uint64_t> config_count(const DiracSpec &spec);

/// Exhaustive when the configuration space fits kMaxDiracConfigs; otherwise
/// falls back to the modular determinant if `allow_modular`, else BoundError.
BijectivityReport verify_bijective(const DiracSpec &spec, bool allow_modular = true);
BijectivityReport verify_bijective_exhaustive(const DiracSpec &spec);
BijectivityReport verify_bijective_modular(const DiracSpec &spec);

/// The 2S x 2S integer matrix of the update (acting on the site-value vector).
std::vector<std::vector<std::int64_t>> update_matrix(const DiracSpec &spec);

/// Determinant of a square integer matrix modulo n (any n >= 2), by Euclidean
/// row reduction. Result in [0, n).
std::int64_t determinant_mod(std::vector<std::vector<std::int64_t>> a, std::int64_t n);

/// Cycle decomposition of the configuration-space permutation.
/// BoundError when not exhaustively checkable; ValidationError when the
/// update is not bijective.
CycleDecomposition dirac_orbit_structure(const DiracSpec &spec);

/// cycle length -> number of cycles
std::map<std::size_t, std::size_t> cycle_length_histogram(const CycleDecomposition &cycles);

struct DispersionReport {
  bool wrapped = false;              ///< a value left {-M..M}; continuum comparison invalid
  double integer_vs_real = 0.0;      ///< max |integer scheme - real-valued scheme|
  double continuum_deviation = 0.0;  ///< final max |lattice - continuum| / max |continuum|
  double max_step_deviation = 0.0;   ///< largest relative deviation over all slices
  double kappa = 0.0;
  double omega = 0.0;                ///< sqrt(kappa^2 + mu^2)
};

/// Evolves the profile L_j = round(A cos(kappa j)), R_j = 0 with kappa = 2 pi
/// mode / S, both on the integer automaton and on its real-valued
/// counterpart, and compares with the band-limited continuum solution of
///   d_t psi1 = d_x psi1 - mu psi2,  d_t psi2 = -d_x psi2 + mu psi1
/// through the same samples (lattice units T = D = 1).
DispersionReport dispersion_check(const DiracSpec &spec, int mode, double amplitude,
                                  std::size_t steps);

/// log2(err(S) / err(2S)) with the mode number fixed, so kappa halves with
/// doubled resolution; the step count is held fixed.
double continuum_convergence_order(const DiracSpec &spec, int mode, double amplitude,
                                   std::size_t steps);

} // namespace ontca
