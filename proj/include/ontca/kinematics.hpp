#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ontca/hilbert.hpp"
#include "ontca/linalg.hpp"
#include "ontca/permutation.hpp"
#include "ontca/spin_chain.hpp"
#include "ontca/trace.hpp"

namespace ontca {

enum class Side { Left, Right };
enum class SlowdownMode { CaseA, CaseB };

/// Per cycle: k0 forward updates, then l0 reversed updates (Case A) or l0
/// paired sublattice translations (Case B).
struct SlowdownSpec {
  int k0 = 1;
  int l0 = 0;
  SlowdownMode mode = SlowdownMode::CaseA;
  double t = 1.0;
  double d = 1.0;

  int cycle_length() const { return k0 + l0; }
  int net_shift() const { return k0 - l0; }
};

/// Throws ValidationError: k0 >= 1, l0 >= 0, Case B needs l0 <= k0, T, D > 0.
void validate(const SlowdownSpec &spec);

/// Shifts the even-site contents two sites left; odd sites fixed.
Permutation translation_left(int s);
/// Shifts the odd-site contents two sites right; even sites fixed.
Permutation translation_right(int s);

/// The transposition sequences behind the translations (application order).
std::vector<Transposition> translation_left_transpositions(int s);
std::vector<Transposition> translation_right_transpositions(int s);

Permutation translation(int s, Side side);

/// Orbit generator Theta with exp(-i Theta D) = lift(T(2)) on basis states.
OrbitGenerator theta_generator(int s, double d, Side side);

struct EffectiveHamiltonian {
  ComplexMatrix generator;
  /// Exponent scale: exp(-i generator * time) with time = T_eff in Case A
  /// (units of time) and 1 in Case B (dimensionless generator).
  double time = 1.0;
};

/// Case A: H (k0-l0)/(k0+l0) with T_eff = (k0+l0) T.
/// Case B: k0 H T + l0 (Theta_L + Theta_R) D.
/// BoundError when 2^(2S) exceeds the dense limit.
EffectiveHamiltonian effective_hamiltonian(const SlowdownSpec &spec, int s);

/// Site permutation of one effective cycle: U^(k0-l0) in Case A and
/// U^k0 T_L^l0 T_R^l0 in Case B.
Permutation cycle_permutation(const SlowdownSpec &spec, int s);

/// Case A cycle order: +1 forward, -1 reversed. Must contain k0 entries +1
/// and l0 entries -1.
using Schedule = std::vector<int>;

Schedule default_schedule(const SlowdownSpec &spec);
Schedule random_schedule(const SlowdownSpec &spec, std::mt19937_64 &rng);
Permutation schedule_permutation(const Schedule &schedule, int s);

/// cycles * (k0 + l0) steps. Case A uses `schedule` (default: k0 forward then
/// l0 reversed); Case B records each of the l0 translations as its own slice.
SpacetimeTrace evolve_slowdown(const ChainState &state, const SlowdownSpec &spec,
                               std::size_t cycles, const Schedule &schedule = {});

struct Velocity {
  /// Signed sublattice displacement of the defect per whole cycle (positive
  /// to the right).
  long long displacement_per_cycle = 0;
  int steps_per_cycle = 1;

  double value() const {
    return static_cast<double>(displacement_per_cycle) / steps_per_cycle;
  }
};

/// Tracks the single site that differs from the uniform background at
/// cycle boundaries. ValidationError when the trace does not contain exactly
/// one defect per slice or the displacement is not constant.
Velocity measure_velocity(const SpacetimeTrace &trace);

struct WeylFields {
  std::vector<std::int64_t> plus;  ///< S^L + S^R per sublattice site
  std::vector<std::int64_t> minus; ///< S^L - S^R

  std::vector<std::int64_t> left() const;
  std::vector<std::int64_t> right() const;
};

WeylFields weyl_fields(std::span<const std::int64_t> slice);

struct TransportResidual {
  std::int64_t left = 0;
  std::int64_t right = 0;
  std::int64_t plus = 0;
  std::int64_t minus = 0;

  std::int64_t max() const;
};

/// Residuals of the discrete transport equations at cycle-aligned sampling:
/// L_{n+1}(j) = L_n(j + shift), R_{n+1}(j) = R_n(j - shift), and the same
/// relations written for S+ and S-. Exact integer arithmetic.
/// ValidationError when the trace length is not a whole number of cycles.
TransportResidual check_weyl_combination(const SpacetimeTrace &trace);

/// Mirrors site numbering (site k -> 2S+1-k), which exchanges the roles of
/// odd and even sites.
SpacetimeTrace mirror_sites(const SpacetimeTrace &trace);

/// Eigenvalue of the one-cycle transfer matrix of the given mover sublattice,
/// evaluated on the plane wave exp(i kappa j), kappa = 2 pi mode / S. The
/// transfer matrix is read off the actual cycle permutation.
Complex transfer_eigenvalue(const SlowdownSpec &spec, int s, Side movers, int mode);

} // namespace ontca
