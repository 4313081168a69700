#include "ontca/render.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

#include "ontca/error.hpp"

namespace ontca {

namespace {

std::int64_t most_common(const std::vector<std::int64_t> &slice) {
  std::map<std::int64_t, std::size_t> counts;
  for (auto v : slice)
    ++counts[v];
  std::int64_t best = slice.front();
  std::size_t best_count = 0;
  for (const auto &[value, count] : counts)
    if (count > best_count) {
      best = value;
      best_count = count;
    }
  return best;
}

void require_slices(const SpacetimeTrace &trace) {
  if (trace.slices.empty())
    throw ValidationError("render: trace has no slices");
}

} // namespace

std::string render_ascii(const SpacetimeTrace &trace) {
  require_slices(trace);
  const std::int64_t background = most_common(trace.slices.front());
  std::ostringstream os;
  for (std::size_t n = trace.slices.size(); n-- > 0;) {
    const auto &slice = trace.slices[n];
    for (std::size_t k = 0; k < slice.size(); ++k) {
      const auto v = slice[k];
      char c = '.';
      if (v != background) {
        if (!trace.m)
          c = k % 2 == 0 ? 'L' : 'R';
        else
          c = v > 0 ? '+' : (v < 0 ? '-' : '0');
      }
      os << c;
    }
    os << '\n';
  }
  return os.str();
}

std::string render_svg(const SpacetimeTrace &trace, int cell_size) {
  require_slices(trace);
  if (cell_size < 1)
    throw ValidationError("render_svg: cell size must be positive");
  const std::int64_t background = most_common(trace.slices.front());
  const std::size_t rows = trace.slices.size();
  const std::size_t cols = trace.slices.front().size();
  const std::int64_t scale = trace.m ? std::max<std::int64_t>(*trace.m, 1) : 1;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * cell_size
     << "\" height=\"" << rows * cell_size << "\">\n";
  for (std::size_t n = 0; n < rows; ++n) {
    const std::size_t y = (rows - 1 - n) * static_cast<std::size_t>(cell_size);
    for (std::size_t k = 0; k < cols; ++k) {
      const auto v = trace.slices[n][k];
      std::string fill;
      if (v == background) {
        fill = k % 2 == 0 ? "#f4f4f4" : "#e4e4e4";
      } else if (!trace.m) {
        fill = k % 2 == 0 ? "#1f5fbf" : "#c0392b";
      } else {
        // Shade by magnitude: positive red, negative blue.
        const int level = static_cast<int>(200 - 160 * std::min<std::int64_t>(
                                                          std::abs(v), scale) / scale);
        std::ostringstream col;
        col << "rgb(" << (v > 0 ? 220 : level) << ',' << level << ','
            << (v < 0 ? 220 : level) << ')';
        fill = col.str();
      }
      os << "  <rect x=\"" << k * cell_size << "\" y=\"" << y << "\" width=\"" << cell_size
         << "\" height=\"" << cell_size << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

} // namespace ontca
