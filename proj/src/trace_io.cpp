#include "ontca/trace.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "ontca/error.hpp"
#include "ontca/linalg.hpp"

namespace ontca {

namespace {

template <typename T>
T parse_number(std::string_view text, const char *what) {
  T value{};
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ValidationError(std::string("trace: bad ") + what + " '" + std::string(text) + "'");
  return value;
}

std::string_view value_of(std::string_view token, std::string_view key) {
  if (token.substr(0, key.size()) != key || token.size() <= key.size() ||
      token[key.size()] != '=')
    throw ValidationError("trace: expected '" + std::string(key) + "=' in header");
  return token.substr(key.size() + 1);
}

} // namespace

void write_trace(std::ostream &os, const SpacetimeTrace &trace) {
  os << "S=" << trace.s << " M=";
  if (trace.m)
    os << *trace.m;
  else
    os << "na";
  os << " steps=" << trace.steps() << '\n';
  if (!trace.op.empty())
    os << "# op=" << trace.op << '\n';
  os << "# dt=" << format_double(trace.dt) << '\n';
  if (trace.cycle_length != 1 || trace.cycle_shift != 1)
    os << "# cycle=" << trace.cycle_length << " shift=" << trace.cycle_shift << '\n';
  if (!trace.events.empty())
    os << "# events=" << trace.events << '\n';
  for (const auto &slice : trace.slices) {
    for (std::size_t k = 0; k < slice.size(); ++k)
      os << (k ? " " : "") << slice[k];
    os << '\n';
  }
}

SpacetimeTrace read_trace(std::istream &is) {
  SpacetimeTrace trace;
  std::string line;
  std::size_t declared_steps = 0;
  if (!std::getline(is, line))
    throw ValidationError("trace: empty input");
  {
    std::istringstream header(line);
    std::string s_tok, m_tok, steps_tok;
    if (!(header >> s_tok >> m_tok >> steps_tok))
      throw ValidationError("trace: malformed header");
    trace.s = parse_number<int>(value_of(s_tok, "S"), "S");
    const auto m_text = value_of(m_tok, "M");
    if (m_text != "na")
      trace.m = parse_number<long long>(m_text, "M");
    declared_steps = parse_number<std::size_t>(value_of(steps_tok, "steps"), "steps");
  }
  if (trace.s <= 0)
    throw ValidationError("trace: S must be positive");

  const std::size_t width = 2 * static_cast<std::size_t>(trace.s);
  while (std::getline(is, line)) {
    if (line.empty())
      continue;
    if (line.front() == '#') {
      std::istringstream meta(line.substr(1));
      std::string tok;
      while (meta >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
          continue;
        const std::string_view key(tok.data(), eq);
        const std::string_view val(tok.data() + eq + 1, tok.size() - eq - 1);
        if (key == "op")
          trace.op = std::string(val);
        else if (key == "dt")
          trace.dt = parse_number<double>(val, "dt");
        else if (key == "cycle")
          trace.cycle_length = parse_number<int>(val, "cycle");
        else if (key == "shift")
          trace.cycle_shift = parse_number<int>(val, "shift");
        else if (key == "events")
          trace.events = std::string(val);
      }
      continue;
    }
    std::vector<std::int64_t> slice;
    slice.reserve(width);
    std::istringstream row(line);
    std::string tok;
    while (row >> tok)
      slice.push_back(parse_number<std::int64_t>(tok, "site value"));
    if (slice.size() != width)
      throw ValidationError("trace: slice has " + std::to_string(slice.size()) +
                            " sites, expected " + std::to_string(width));
    for (auto v : slice) {
      if (trace.m ? (v < -*trace.m || v > *trace.m) : (v != 1 && v != -1))
        throw ValidationError("trace: site value " + std::to_string(v) + " out of range");
    }
    trace.slices.push_back(std::move(slice));
  }
  if (trace.slices.size() != declared_steps + 1)
    throw ValidationError("trace: header declares " + std::to_string(declared_steps) +
                          " steps but " + std::to_string(trace.slices.size()) +
                          " slices follow");
  return trace;
}

} // namespace ontca
