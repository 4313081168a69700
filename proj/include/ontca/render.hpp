#pragma once

#include <string>

#include "ontca/trace.hpp"

namespace ontca {

/// Spacetime diagram with time running upwards (last slice on the first
/// line). One character per site: '.' for the background value (the most
/// common value of the first slice), 'L'/'R' for other values on odd/even
/// sites of an Ising trace, and '+', '-', '0' by sign for generalized traces.
std::string render_ascii(const SpacetimeTrace &trace);

/// Static SVG with one rect per cell, time running upwards.
std::string render_svg(const SpacetimeTrace &trace, int cell_size = 10);

} // namespace ontca
