#include "ontca/permutation.hpp"

#include <numeric>
#include <string>

#include "ontca/error.hpp"

namespace ontca {

Permutation::Permutation(std::vector<Index> map) : map_(std::move(map)) {
  std::vector<bool> seen(map_.size(), false);
  for (Index image : map_) {
    if (image >= map_.size() || seen[image])
      throw ValidationError("Permutation: map is not a bijection (image " +
                            std::to_string(image) + ")");
    seen[image] = true;
  }
}

Permutation Permutation::identity(std::size_t size) {
  std::vector<Index> map(size);
  std::iota(map.begin(), map.end(), Index{0});
  return Permutation(std::move(map), Unchecked{});
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < map_.size(); ++i)
    if (map_[i] != i)
      return false;
  return true;
}

Permutation from_transpositions(std::size_t size, std::span<const Transposition> seq) {
  // Track where each original index currently sits and who sits at each site.
  std::vector<Index> position(size);
  std::vector<Index> occupant(size);
  std::iota(position.begin(), position.end(), Index{0});
  std::iota(occupant.begin(), occupant.end(), Index{0});
  for (const auto &t : seq) {
    if (t.i >= size)
      throw ValidationError("from_transpositions: index " + std::to_string(t.i) +
                            " out of range");
    if (t.j >= size)
      throw ValidationError("from_transpositions: index " + std::to_string(t.j) +
                            " out of range");
    if (t.i == t.j)
      throw ValidationError("from_transpositions: degenerate pair at index " +
                            std::to_string(t.i));
    std::swap(occupant[t.i], occupant[t.j]);
    position[occupant[t.i]] = t.i;
    position[occupant[t.j]] = t.j;
  }
  return Permutation(std::move(position), Permutation::Unchecked{});
}

Permutation compose(const Permutation &p, const Permutation &q) {
  if (p.size() != q.size())
    throw ValidationError("compose: size mismatch " + std::to_string(p.size()) + " vs " +
                          std::to_string(q.size()));
  std::vector<Index> map(p.size());
  for (std::size_t i = 0; i < map.size(); ++i)
    map[i] = p.map_[q.map_[i]];
  return Permutation(std::move(map), Permutation::Unchecked{});
}

Permutation inverse(const Permutation &p) {
  std::vector<Index> map(p.size());
  for (std::size_t i = 0; i < map.size(); ++i)
    map[p.map_[i]] = static_cast<Index>(i);
  return Permutation(std::move(map), Permutation::Unchecked{});
}

Permutation power(const Permutation &p, long long n) {
  // Walk each cycle once; the image of c[k] under p^n is c[(k + n) mod L].
  std::vector<Index> map(p.size());
  std::vector<bool> done(p.size(), false);
  std::vector<Index> cycle;
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (done[start])
      continue;
    cycle.clear();
    Index cur = static_cast<Index>(start);
    do {
      cycle.push_back(cur);
      done[cur] = true;
      cur = p.map_[cur];
    } while (cur != start);
    const long long len = static_cast<long long>(cycle.size());
    const long long shift = ((n % len) + len) % len;
    for (long long k = 0; k < len; ++k)
      map[cycle[k]] = cycle[(k + shift) % len];
  }
  return Permutation(std::move(map), Permutation::Unchecked{});
}

CycleDecomposition cycle_decompose(const Permutation &p) {
  CycleDecomposition result;
  result.size = p.size();
  std::vector<bool> done(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (done[start])
      continue;
    std::vector<Index> cycle;
    Index cur = static_cast<Index>(start);
    do {
      cycle.push_back(cur);
      done[cur] = true;
      cur = p(cur);
    } while (cur != start);
    result.cycles.push_back(std::move(cycle));
  }
  return result;
}

Permutation from_cycles(const CycleDecomposition &cycles) {
  std::vector<Index> map(cycles.size);
  std::vector<bool> covered(cycles.size, false);
  for (const auto &cycle : cycles.cycles) {
    if (cycle.empty())
      throw ValidationError("from_cycles: empty cycle");
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const Index from = cycle[k];
      if (from >= cycles.size || covered[from])
        throw ValidationError("from_cycles: cycles do not partition the index set");
      covered[from] = true;
      map[from] = cycle[(k + 1) % cycle.size()];
    }
  }
  for (bool c : covered)
    if (!c)
      throw ValidationError("from_cycles: index not covered by any cycle");
  return Permutation(std::move(map));
}

std::uint64_t order(const Permutation &p) {
  std::uint64_t result = 1;
  for (const auto &cycle : cycle_decompose(p).cycles)
    result = std::lcm(result, static_cast<std::uint64_t>(cycle.size()));
  return result;
}

std::vector<Transposition> to_transpositions(const Permutation &p) {
  // Target arrangement: the content originally at i ends up at p(i).
  const std::size_t n = p.size();
  std::vector<Index> target(n);
  for (std::size_t i = 0; i < n; ++i)
    target[p(static_cast<Index>(i))] = static_cast<Index>(i);
  std::vector<Index> current(n);
  std::vector<Index> where(n);
  std::iota(current.begin(), current.end(), Index{0});
  std::iota(where.begin(), where.end(), Index{0});

  std::vector<Transposition> seq;
  for (std::size_t k = 0; k < n; ++k) {
    if (current[k] == target[k])
      continue;
    const Index j = where[target[k]];
    seq.push_back({static_cast<Index>(k), j});
    std::swap(current[k], current[j]);
    where[current[k]] = static_cast<Index>(k);
    where[current[j]] = j;
  }
  return seq;
}

std::ostream &operator<<(std::ostream &os, const Permutation &p) {
  os << '[';
  for (std::size_t i = 0; i < p.size(); ++i)
    os << (i ? " " : "") << p(static_cast<Index>(i));
  return os << ']';
}

} // namespace ontca
