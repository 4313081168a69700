#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "ontca/error.hpp"

namespace ontca {

using Index = std::uint32_t;

struct Transposition {
  Index i;
  Index j;
};

/// Bijection on {0, ..., size-1}. map()[i] is the image of i.
///
/// When a permutation acts on site contents, the content of site i moves to
/// site map()[i]. Composition follows function composition: compose(p, q)
/// applies q first.
class Permutation {
public:
  Permutation() = default;

  /// Throws ValidationError unless `map` is a bijection.
  explicit Permutation(std::vector<Index> map);

  static Permutation identity(std::size_t size);

  std::size_t size() const { return map_.size(); }
  Index operator()(Index i) const { return map_[i]; }
  std::span<const Index> map() const { return map_; }

  bool is_identity() const;

  friend bool operator==(const Permutation &, const Permutation &) = default;

private:
  struct Unchecked {};
  Permutation(std::vector<Index> map, Unchecked) : map_(std::move(map)) {}

  std::vector<Index> map_;

  friend Permutation compose(const Permutation &, const Permutation &);
  friend Permutation inverse(const Permutation &);
  friend Permutation from_transpositions(std::size_t, std::span<const Transposition>);
  friend Permutation power(const Permutation &, long long);
};

/// Transpositions are given in application order: seq[0] acts first.
/// Operator products written rightmost-factor-first must be reversed by
/// the caller.
Permutation from_transpositions(std::size_t size, std::span<const Transposition> seq);

/// q first, then p.
Permutation compose(const Permutation &p, const Permutation &q);
Permutation inverse(const Permutation &p);
/// Negative n gives powers of the inverse; power(p, 0) is the identity.
Permutation power(const Permutation &p, long long n);

struct CycleDecomposition {
  std::size_t size = 0;
  /// Each cycle lists c0, p(c0), p(p(c0)), ... starting at its smallest index.
  /// Fixed points are singleton cycles. Cycles are ordered by first element.
  std::vector<std::vector<Index>> cycles;
};

CycleDecomposition cycle_decompose(const Permutation &p);
/// Inverse of cycle_decompose. Throws ValidationError if the cycles do not
/// partition [0, size).
Permutation from_cycles(const CycleDecomposition &cycles);

/// Least common multiple of the cycle lengths.
std::uint64_t order(const Permutation &p);

/// A transposition sequence (application order) whose product is p; at most
/// size-1 swaps.
std::vector<Transposition> to_transpositions(const Permutation &p);

/// Moves contents: out[p(i)] = in[i].
template <typename T>
std::vector<T> permute_contents(const Permutation &p, std::span<const T> in) {
  if (in.size() != p.size())
    throw ValidationError("permute_contents: size mismatch");
  std::vector<T> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i)
    out[p(static_cast<Index>(i))] = in[i];
  return out;
}

std::ostream &operator<<(std::ostream &os, const Permutation &p);

} // namespace ontca
