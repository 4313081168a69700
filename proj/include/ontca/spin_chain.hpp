#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ontca/permutation.hpp"
#include "ontca/trace.hpp"

namespace ontca {

/// One ontological state of the Ising ring: 2S spins, each +1 or -1.
/// Index k holds the spin of site k+1; site 2S+1 is site 1.
class ChainState {
public:
  /// Throws ValidationError unless spins has even, nonzero length of +-1 values.
  explicit ChainState(std::vector<int> spins);

  static ChainState uniform(int s, int value = +1);
  /// Uniform +1 background with a single -1 at 1-based `site`.
  static ChainState with_defect(int s, int site);

  int s() const { return static_cast<int>(spins_.size() / 2); }
  std::size_t sites() const { return spins_.size(); }
  std::span<const int> spins() const { return spins_; }
  /// 1-based site access with periodic wrap.
  int at_site(long long site) const;

  friend bool operator==(const ChainState &, const ChainState &) = default;

private:
  std::vector<int> spins_;
};

/// The exchange pairs of one update, in application order: first the
/// even pairs (2l, 2l+1) including the wrap pair (2S, 1), then the odd pairs
/// (2k-1, 2k). 0-based site indices.
std::vector<Transposition> update_transpositions(int s);

/// Site permutation of one chain update.
Permutation update_permutation(int s);

ChainState apply(const Permutation &site_perm, const ChainState &state);

/// steps+1 slices, each obtained from the previous by one update.
SpacetimeTrace evolve(const ChainState &state, std::size_t steps);

struct Movers {
  std::vector<int> left;  ///< spins on odd sites 1, 3, ..., 2S-1
  std::vector<int> right; ///< spins on even sites 2, 4, ..., 2S
};

Movers movers(const ChainState &state);
ChainState interleave(std::span<const int> left, std::span<const int> right);

/// Converts a +-1 trace slice back into a state.
ChainState state_from_slice(std::span<const std::int64_t> slice);

} // namespace ontca
