#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ontca {

/// Time-ordered chain configurations, one row per slice, sites in order 1..2S.
/// Ising traces hold +-1, Dirac traces hold values in {-M..M}.
struct SpacetimeTrace {
  int s = 0;
  std::optional<long long> m; ///< set for generalized (2M+1)-valued chains
  double dt = 1.0;
  std::string op;             ///< description of the generating operator
  /// Slices per whole cycle and the sublattice displacement per cycle used by
  /// the cycle-aligned transport check. Plain evolution has 1 and 1.
  int cycle_length = 1;
  int cycle_shift = 1;
  /// One character per step ('U' forward update, 'D' reversed update,
  /// 'T' translation, 'F' Dirac step); empty when not tracked.
  std::string events;
  std::vector<std::vector<std::int64_t>> slices;

  std::size_t steps() const { return slices.empty() ? 0 : slices.size() - 1; }
};

/// Text format: header "S=<int> M=<int|na> steps=<int>", optional "# key=value"
/// metadata lines, then one line per slice of space-separated integers.
void write_trace(std::ostream &os, const SpacetimeTrace &trace);
/// Throws ValidationError on malformed input.
SpacetimeTrace read_trace(std::istream &is);

} // namespace ontca
