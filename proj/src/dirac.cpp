#include "ontca/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <numbers>
#include <sstream>

#include "ontca/error.hpp"

namespace ontca {

namespace {

void check_m(std::int64_t m) {
  if (m < 1)
    throw ValidationError("M must be positive");
}

std::size_t symbol_index(std::int64_t value, std::int64_t m) {
  return static_cast<std::size_t>(value + m);
}

/// Unwrapped update; shared by the integer and real schemes.
template <typename T, typename Mu>
std::vector<T> raw_step(std::span<const T> v, Mu mu) {
  const std::size_t n = v.size();
  std::vector<T> out(n);
  for (std::size_t a = 0; a < n; a += 2) {
    const std::size_t b = a + 1;
    out[a] = v[(a + 2) % n] - mu * v[b];
    out[b] = v[(b + n - 2) % n] + mu * v[a];
  }
  return out;
}

} // namespace

std::int64_t wrap(std::int64_t x, std::int64_t m) {
  check_m(m);
  const std::int64_t period = 2 * m + 1;
  return (((x + m) % period) + period) % period - m;
}

std::int64_t ArithmeticTable::at(std::int64_t row_value, std::int64_t col_value) const {
  if (row_value < -m || row_value > m || col_value < -m || col_value > m)
    throw ValidationError("ArithmeticTable::at: value outside -M..M");
  return table[symbol_index(row_value, m)][symbol_index(col_value, m)];
}

Permutation ArithmeticTable::row_permutation(std::int64_t row_value) const {
  if (row_value < -m || row_value > m)
    throw ValidationError("ArithmeticTable: row value outside -M..M");
  const auto &row = table[symbol_index(row_value, m)];
  std::vector<Index> map(row.size());
  for (std::size_t c = 0; c < row.size(); ++c)
    map[symbol_index(row[c], m)] = static_cast<Index>(c);
  return Permutation(std::move(map));
}

std::vector<Transposition> ArithmeticTable::row_transpositions(std::int64_t row_value) const {
  return to_transpositions(row_permutation(row_value));
}

ArithmeticTable build_table(std::int64_t m, TableKind kind) {
  check_m(m);
  ArithmeticTable t{m, kind, {}};
  for (std::int64_t r = -m; r <= m; ++r) {
    std::vector<std::int64_t> row;
    for (std::int64_t c = -m; c <= m; ++c)
      row.push_back(kind == TableKind::Add ? wrap(r + c, m) : wrap(c - r, m));
    t.table.push_back(std::move(row));
  }
  return t;
}

std::string format_table(const ArithmeticTable &table) {
  const std::int64_t m = table.m;
  auto symbol = [m](std::int64_t v) { return "s" + std::to_string(v + m + 1); };
  const std::string col_label = table.kind == TableKind::Add ? "SR" : "SL";
  const std::string row_label = table.kind == TableKind::Add ? "SL" : "SR";
  const std::size_t width = symbol(m).size();
  auto pad = [width](std::string s) {
    s.resize(std::max(width, s.size()), ' ');
    return s;
  };

  std::ostringstream os;
  os << (table.kind == TableKind::Add ? "S+" : "S-") << " (M=" << m << ")\n";
  os << pad("") << " |";
  for (std::int64_t c = -m; c <= m; ++c)
    os << ' ' << pad(symbol(c));
  os << ' ' << col_label << '\n';
  os << std::string(width + 1, '-') << '+'
     << std::string(static_cast<std::size_t>(2 * m + 1) * (width + 1) + 3, '-') << '\n';
  for (std::int64_t r = -m; r <= m; ++r) {
    os << pad(symbol(r)) << " |";
    for (std::int64_t c = -m; c <= m; ++c)
      os << ' ' << pad(symbol(table.at(r, c)));
    os << '\n';
  }
  os << pad(row_label) << " |\n";
  return os.str();
}

void validate(const DiracSpec &spec) {
  if (spec.s < 1)
    throw ValidationError("Dirac: S must be positive");
  check_m(spec.m);
}

GenChainState::GenChainState(int s, std::int64_t m, std::vector<std::int64_t> values)
    : s_(s), m_(m), values_(std::move(values)) {
  if (s < 1)
    throw ValidationError("GenChainState: S must be positive");
  check_m(m);
  if (values_.size() != 2 * static_cast<std::size_t>(s))
    throw ValidationError("GenChainState: expected " + std::to_string(2 * s) + " values");
  for (auto v : values_)
    if (v < -m || v > m)
      throw ValidationError("GenChainState: value " + std::to_string(v) + " outside -M..M");
}

GenChainState GenChainState::zero(int s, std::int64_t m) {
  return GenChainState(s, m, std::vector<std::int64_t>(2 * static_cast<std::size_t>(s), 0));
}

GenChainState dirac_step(const GenChainState &state, const DiracSpec &spec) {
  validate(spec);
  if (state.s() != spec.s || state.m() != spec.m)
    throw ValidationError("dirac_step: state (S, M) does not match spec");
  auto next = raw_step(state.values(), spec.mu);
  for (auto &v : next)
    v = wrap(v, spec.m);
  return GenChainState(spec.s, spec.m, std::move(next));
}

std::vector<double> dirac_step_real(std::span<const double> values, double mu) {
  if (values.empty() || values.size() % 2 != 0)
    throw ValidationError("dirac_step_real: need 2S values");
  return raw_step(values, mu);
}

SpacetimeTrace evolve_dirac(const GenChainState &state, const DiracSpec &spec,
                            std::size_t steps) {
  SpacetimeTrace trace;
  trace.s = spec.s;
  trace.m = spec.m;
  trace.op = "dirac:mu=" + std::to_string(spec.mu);
  trace.events.assign(steps, 'F');
  GenChainState current = state;
  for (std::size_t n = 0;; ++n) {
    trace.slices.emplace_back(current.values().begin(), current.values().end());
    if (n == steps)
      break;
    current = dirac_step(current, spec);
  }
  return trace;
}

std::uint64_t encode_config(std::span<const std::int64_t> values, std::int64_t m) {
  const auto base = static_cast<std::uint64_t>(2 * m + 1);
  std::uint64_t index = 0;
  for (std::size_t k = values.size(); k-- > 0;)
    index = index * base + static_cast<std::uint64_t>(values[k] + m);
  return index;
}

std::vector<std::int64_t> decode_config(std::uint64_t index, int s, std::int64_t m) {
  const auto base = static_cast<std::uint64_t>(2 * m + 1);
  std::vector<std::int64_t> values(2 * static_cast<std::size_t>(s));
  for (auto &v : values) {
    v = static_cast<std::int64_t>(index % base) - m;
    index /= base;
  }
  return values;
}

std::optional<std::uint64_t> config_count(const DiracSpec &spec) {
  validate(spec);
  const auto base = static_cast<std::uint64_t>(2 * spec.m + 1);
  std::uint64_t count = 1;
  for (int k = 0; k < 2 * spec.s; ++k) {
    if (count > std::numeric_limits<std::uint64_t>::max() / base)
      return std::nullopt;
    count *= base;
  }
  return count;
}

BijectivityReport verify_bijective_exhaustive(const DiracSpec &spec) {
  const auto count = config_count(spec);
  if (!count || *count > kMaxDiracConfigs)
    throw BoundError("verify_bijective: configuration space exceeds exhaustive bound");
  std::vector<Index> image(*count);
  std::vector<bool> hit(*count, false);
  std::uint64_t distinct = 0;
  for (std::uint64_t idx = 0; idx < *count; ++idx) {
    const GenChainState state(spec.s, spec.m, decode_config(idx, spec.s, spec.m));
    const auto next = encode_config(dirac_step(state, spec).values(), spec.m);
    image[idx] = static_cast<Index>(next);
    if (!hit[next]) {
      hit[next] = true;
      ++distinct;
    }
  }
  BijectivityReport report;
  report.exhaustive = true;
  report.domain_size = *count;
  report.image_size = distinct;
  report.bijective = distinct == *count;
  if (report.bijective)
    report.certificate = Permutation(std::move(image));
  return report;
}

std::vector<std::vector<std::int64_t>> update_matrix(const DiracSpec &spec) {
  validate(spec);
  const std::size_t n = 2 * static_cast<std::size_t>(spec.s);
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t l = 0; l < n; l += 2) {
    const std::size_t r = l + 1;
    a[l][(l + 2) % n] += 1;
    a[l][r] -= spec.mu;
    a[r][(r + n - 2) % n] += 1;
    a[r][l] += spec.mu;
  }
  return a;
}

std::int64_t determinant_mod(std::vector<std::vector<std::int64_t>> a, std::int64_t n) {
  if (n < 2)
    throw ValidationError("determinant_mod: modulus must be >= 2");
  const std::size_t size = a.size();
  for (auto &row : a) {
    if (row.size() != size)
      throw ValidationError("determinant_mod: matrix is not square");
    for (auto &v : row)
      v = ((v % n) + n) % n;
  }
  std::int64_t det = 1;
  for (std::size_t c = 0; c < size; ++c) {
    for (std::size_t r = c + 1; r < size; ++r) {
      while (a[r][c] != 0) {
        const std::int64_t q = a[c][c] / a[r][c];
        for (std::size_t k = c; k < size; ++k)
          a[c][k] = (((a[c][k] - q * a[r][k]) % n) + n) % n;
        std::swap(a[c], a[r]);
        det = n - det;
      }
    }
    det = (det * a[c][c]) % n;
  }
  return det % n;
}

BijectivityReport verify_bijective_modular(const DiracSpec &spec) {
  BijectivityReport report;
  const std::int64_t modulus = 2 * spec.m + 1;
  report.determinant_mod = determinant_mod(update_matrix(spec), modulus);
  report.bijective = std::gcd(report.determinant_mod, modulus) == 1;
  if (auto count = config_count(spec)) {
    report.domain_size = *count;
    report.image_size = report.bijective ? *count : 0;
  }
  return report;
}

BijectivityReport verify_bijective(const DiracSpec &spec, bool allow_modular) {
  const auto count = config_count(spec);
  if (count && *count <= kMaxDiracConfigs)
    return verify_bijective_exhaustive(spec);
  if (!allow_modular)
    throw BoundError("verify_bijective: configuration space exceeds exhaustive bound");
  return verify_bijective_modular(spec);
}

CycleDecomposition dirac_orbit_structure(const DiracSpec &spec) {
  auto report = verify_bijective_exhaustive(spec);
  if (!report.bijective)
    throw ValidationError("dirac_orbit_structure: update is not bijective");
  return cycle_decompose(*report.certificate);
}

std::map<std::size_t, std::size_t> cycle_length_histogram(const CycleDecomposition &cycles) {
  std::map<std::size_t, std::size_t> histogram;
  for (const auto &cycle : cycles.cycles)
    ++histogram[cycle.size()];
  return histogram;
}

DispersionReport dispersion_check(const DiracSpec &spec, int mode, double amplitude,
                                  std::size_t steps) {
  validate(spec);
  using C = std::complex<double>;
  const int s = spec.s;
  const double mu = static_cast<double>(spec.mu);
  const auto ns = static_cast<std::size_t>(s);

  DispersionReport report;
  report.kappa = 2.0 * std::numbers::pi * mode / s;
  report.omega = std::hypot(report.kappa, mu);

  std::vector<std::int64_t> ints(2 * ns, 0);
  for (std::size_t j = 0; j < ns; ++j) {
    const auto v = static_cast<std::int64_t>(
        std::llround(amplitude * std::cos(report.kappa * static_cast<double>(j))));
    if (v < -spec.m || v > spec.m)
      report.wrapped = true;
    ints[2 * j] = wrap(v, spec.m);
  }
  std::vector<double> reals(ints.begin(), ints.end());

  // Fourier coefficients of the initial samples, per component.
  std::vector<C> left_hat(ns), right_hat(ns);
  for (std::size_t q = 0; q < ns; ++q) {
    C l{}, r{};
    for (std::size_t j = 0; j < ns; ++j) {
      const C phase = std::polar(1.0, -2.0 * std::numbers::pi *
                                          static_cast<double>((q * j) % ns) / s);
      l += reals[2 * j] * phase;
      r += reals[2 * j + 1] * phase;
    }
    left_hat[q] = l / static_cast<double>(s);
    right_hat[q] = r / static_cast<double>(s);
  }
  auto wavenumber = [s](std::size_t q) {
    const long long qq = static_cast<long long>(q);
    const long long signed_q = 2 * qq > s ? qq - s : qq;
    return 2.0 * std::numbers::pi * static_cast<double>(signed_q) / s;
  };
  auto continuum_at = [&](double t) {
    std::vector<double> field(2 * ns, 0.0);
    std::vector<C> l_t(ns), r_t(ns);
    for (std::size_t q = 0; q < ns; ++q) {
      const double k = wavenumber(q);
      const double w = std::hypot(k, mu);
      const double c = std::cos(w * t);
      const double sinc = w == 0.0 ? t : std::sin(w * t) / w;
      // exp(G t) with G = [[i k, -mu], [mu, -i k]].
      l_t[q] = (c + sinc * C(0, k)) * left_hat[q] - sinc * mu * right_hat[q];
      r_t[q] = sinc * mu * left_hat[q] + (c - sinc * C(0, k)) * right_hat[q];
    }
    for (std::size_t j = 0; j < ns; ++j) {
      C l{}, r{};
      for (std::size_t q = 0; q < ns; ++q) {
        const C phase = std::polar(1.0, 2.0 * std::numbers::pi *
                                            static_cast<double>((q * j) % ns) / s);
        l += l_t[q] * phase;
        r += r_t[q] * phase;
      }
      field[2 * j] = l.real();
      field[2 * j + 1] = r.real();
    }
    return field;
  };

  for (std::size_t n = 1; n <= steps; ++n) {
    auto raw = raw_step(std::span<const std::int64_t>(ints), spec.mu);
    for (auto &v : raw) {
      if (v < -spec.m || v > spec.m) {
        report.wrapped = true;
        v = wrap(v, spec.m);
      }
    }
    ints = std::move(raw);
    reals = dirac_step_real(reals, mu);

    const auto cont = continuum_at(static_cast<double>(n));
    double diff = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < ints.size(); ++k) {
      report.integer_vs_real =
          std::max(report.integer_vs_real, std::abs(static_cast<double>(ints[k]) - reals[k]));
      diff = std::max(diff, std::abs(reals[k] - cont[k]));
      scale = std::max(scale, std::abs(cont[k]));
    }
    const double rel = scale > 0.0 ? diff / scale : diff;
    report.max_step_deviation = std::max(report.max_step_deviation, rel);
    report.continuum_deviation = rel;
  }
  return report;
}

double continuum_convergence_order(const DiracSpec &spec, int mode, double amplitude,
                                   std::size_t steps) {
  DiracSpec fine = spec;
  fine.s = 2 * spec.s;
  const auto coarse_report = dispersion_check(spec, mode, amplitude, steps);
  const auto fine_report = dispersion_check(fine, mode, amplitude, steps);
  return std::log2(coarse_report.continuum_deviation / fine_report.continuum_deviation);
}

} // namespace ontca
