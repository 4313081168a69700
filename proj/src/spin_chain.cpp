#include "ontca/spin_chain.hpp"

#include <string>

#include "ontca/error.hpp"

namespace ontca {

ChainState::ChainState(std::vector<int> spins) : spins_(std::move(spins)) {
  if (spins_.empty() || spins_.size() % 2 != 0)
    throw ValidationError("ChainState: need 2S > 0 sites, got " +
                          std::to_string(spins_.size()));
  for (int v : spins_)
    if (v != 1 && v != -1)
      throw ValidationError("ChainState: spin value " + std::to_string(v) + " is not +-1");
}

ChainState ChainState::uniform(int s, int value) {
  if (s < 1)
    throw ValidationError("ChainState: S must be positive");
  return ChainState(std::vector<int>(2 * static_cast<std::size_t>(s), value));
}

ChainState ChainState::with_defect(int s, int site) {
  if (s < 1 || site < 1 || site > 2 * s)
    throw ValidationError("ChainState: defect site " + std::to_string(site) +
                          " outside 1.." + std::to_string(2 * s));
  std::vector<int> spins(2 * static_cast<std::size_t>(s), +1);
  spins[site - 1] = -1;
  return ChainState(std::move(spins));
}

int ChainState::at_site(long long site) const {
  const long long n = static_cast<long long>(spins_.size());
  return spins_[static_cast<std::size_t>((((site - 1) % n) + n) % n)];
}

std::vector<Transposition> update_transpositions(int s) {
  if (s < 1)
    throw ValidationError("update_transpositions: S must be positive");
  const Index n = 2 * static_cast<Index>(s);
  std::vector<Transposition> seq;
  seq.reserve(n);
  for (Index l = 1; l <= static_cast<Index>(s); ++l) // P_{2l,2l+1}
    seq.push_back({2 * l - 1, (2 * l) % n});
  for (Index k = 1; k <= static_cast<Index>(s); ++k) // P_{2k-1,2k}
    seq.push_back({2 * k - 2, 2 * k - 1});
  return seq;
}

Permutation update_permutation(int s) {
  const auto seq = update_transpositions(s);
  return from_transpositions(2 * static_cast<std::size_t>(s), seq);
}

ChainState apply(const Permutation &site_perm, const ChainState &state) {
  return ChainState(permute_contents(site_perm, state.spins()));
}

SpacetimeTrace evolve(const ChainState &state, std::size_t steps) {
  SpacetimeTrace trace;
  trace.s = state.s();
  trace.op = "chain-update";
  trace.events.assign(steps, 'U');
  const Permutation u = update_permutation(state.s());
  ChainState current = state;
  trace.slices.reserve(steps + 1);
  for (std::size_t n = 0;; ++n) {
    trace.slices.emplace_back(current.spins().begin(), current.spins().end());
    if (n == steps)
      break;
    current = apply(u, current);
  }
  return trace;
}

Movers movers(const ChainState &state) {
  Movers m;
  const auto spins = state.spins();
  m.left.reserve(spins.size() / 2);
  m.right.reserve(spins.size() / 2);
  for (std::size_t k = 0; k < spins.size(); k += 2) {
    m.left.push_back(spins[k]);
    m.right.push_back(spins[k + 1]);
  }
  return m;
}

ChainState interleave(std::span<const int> left, std::span<const int> right) {
  if (left.size() != right.size())
    throw ValidationError("interleave: mover arrays differ in length");
  std::vector<int> spins;
  spins.reserve(2 * left.size());
  for (std::size_t j = 0; j < left.size(); ++j) {
    spins.push_back(left[j]);
    spins.push_back(right[j]);
  }
  return ChainState(std::move(spins));
}

ChainState state_from_slice(std::span<const std::int64_t> slice) {
  return ChainState(std::vector<int>(slice.begin(), slice.end()));
}

} // namespace ontca
