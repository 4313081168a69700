#include "ontca/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ontca/error.hpp"

namespace ontca {

namespace {

void require_translatable(int s) {
  if (s < 2)
    throw ValidationError("translations need S >= 2, got S=" + std::to_string(s));
}

long long wrap_signed(long long x, long long n) {
  long long r = ((x % n) + n) % n;
  if (2 * r > n)
    r -= n;
  return r;
}

std::int64_t background_value(std::span<const std::int64_t> slice) {
  // The value shared by at least two of the first three sites.
  if (slice.size() < 3)
    throw ValidationError("measure_velocity: chain too short to identify a background");
  if (slice[0] == slice[1] || slice[0] == slice[2])
    return slice[0];
  return slice[1];
}

long long defect_site(std::span<const std::int64_t> slice, std::int64_t background) {
  long long site = -1;
  for (std::size_t k = 0; k < slice.size(); ++k) {
    if (slice[k] == background)
      continue;
    if (site >= 0)
      throw ValidationError("measure_velocity: more than one defect in a slice");
    site = static_cast<long long>(k);
  }
  if (site < 0)
    throw ValidationError("measure_velocity: no defect in slice");
  return site;
}

} // namespace

void validate(const SlowdownSpec &spec) {
  if (spec.k0 < 1)
    throw ValidationError("slowdown: k0 must be positive");
  if (spec.l0 < 0)
    throw ValidationError("slowdown: l0 must be non-negative");
  if (spec.mode == SlowdownMode::CaseB && spec.l0 > spec.k0)
    throw ValidationError("slowdown: Case B requires l0 <= k0");
  if (!(spec.t > 0.0) || !(spec.d > 0.0))
    throw ValidationError("slowdown: T and D must be positive");
}

std::vector<Transposition> translation_left_transpositions(int s) {
  require_translatable(s);
  // P_{2j+2,2j}, rightmost factor j=1 acts first.
  std::vector<Transposition> seq;
  for (Index j = 1; j < static_cast<Index>(s); ++j)
    seq.push_back({2 * j + 1, 2 * j - 1});
  return seq;
}

std::vector<Transposition> translation_right_transpositions(int s) {
  require_translatable(s);
  // P_{2j-1,2j+1}, leftmost factor j=1 acts last.
  std::vector<Transposition> seq;
  for (Index j = static_cast<Index>(s) - 1; j >= 1; --j)
    seq.push_back({2 * j - 2, 2 * j});
  return seq;
}

Permutation translation_left(int s) {
  return from_transpositions(2 * static_cast<std::size_t>(s), translation_left_transpositions(s));
}

Permutation translation_right(int s) {
  return from_transpositions(2 * static_cast<std::size_t>(s),
                             translation_right_transpositions(s));
}

Permutation translation(int s, Side side) {
  return side == Side::Left ? translation_left(s) : translation_right(s);
}

OrbitGenerator theta_generator(int s, double d, Side side) {
  if (2 * s > kMaxEnumeratedSites)
    throw BoundError("theta_generator: 2S exceeds enumeration bound");
  return OrbitGenerator(induced_basis_permutation(translation(s, side)), d);
}

EffectiveHamiltonian effective_hamiltonian(const SlowdownSpec &spec, int s) {
  validate(spec);
  const ComplexMatrix h = extract_hamiltonian(s, spec.t).to_dense();
  if (spec.mode == SlowdownMode::CaseA) {
    const double ratio = static_cast<double>(spec.net_shift()) / spec.cycle_length();
    return {ratio * h, spec.cycle_length() * spec.t};
  }
  ComplexMatrix g = (spec.k0 * spec.t) * h;
  if (spec.l0 > 0) {
    const ComplexMatrix thetas = theta_generator(s, spec.d, Side::Left).to_dense() +
                                 theta_generator(s, spec.d, Side::Right).to_dense();
    g += (spec.l0 * spec.d) * thetas;
  }
  return {std::move(g), 1.0};
}

Permutation cycle_permutation(const SlowdownSpec &spec, int s) {
  validate(spec);
  const Permutation u = update_permutation(s);
  if (spec.mode == SlowdownMode::CaseA)
    return power(u, spec.net_shift());
  if (spec.l0 == 0)
    return power(u, spec.k0);
  const Permutation moves =
      compose(power(translation_left(s), spec.l0), power(translation_right(s), spec.l0));
  return compose(moves, power(u, spec.k0));
}

Schedule default_schedule(const SlowdownSpec &spec) {
  Schedule schedule(static_cast<std::size_t>(spec.k0), +1);
  schedule.insert(schedule.end(), static_cast<std::size_t>(spec.l0), -1);
  return schedule;
}

Schedule random_schedule(const SlowdownSpec &spec, std::mt19937_64 &rng) {
  Schedule schedule = default_schedule(spec);
  std::shuffle(schedule.begin(), schedule.end(), rng);
  return schedule;
}

Permutation schedule_permutation(const Schedule &schedule, int s) {
  const Permutation u = update_permutation(s);
  const Permutation u_inv = inverse(u);
  Permutation total = Permutation::identity(2 * static_cast<std::size_t>(s));
  for (int step : schedule)
    total = compose(step > 0 ? u : u_inv, total);
  return total;
}

SpacetimeTrace evolve_slowdown(const ChainState &state, const SlowdownSpec &spec,
                               std::size_t cycles, const Schedule &schedule) {
  validate(spec);
  const int s = state.s();
  Schedule plan = schedule.empty() ? default_schedule(spec) : schedule;
  if (spec.mode == SlowdownMode::CaseA) {
    const auto fwd = std::count(plan.begin(), plan.end(), +1);
    const auto rev = std::count(plan.begin(), plan.end(), -1);
    if (fwd != spec.k0 || rev != spec.l0 || plan.size() != static_cast<std::size_t>(fwd + rev))
      throw ValidationError("evolve_slowdown: schedule must hold k0 entries +1 and l0 entries -1");
  }

  const Permutation u = update_permutation(s);
  const Permutation u_inv = inverse(u);
  Permutation shift = Permutation::identity(2 * static_cast<std::size_t>(s));
  if (spec.mode == SlowdownMode::CaseB && spec.l0 > 0)
    shift = compose(translation_left(s), translation_right(s));

  SpacetimeTrace trace;
  trace.s = s;
  trace.dt = spec.t;
  trace.op = std::string(spec.mode == SlowdownMode::CaseA ? "slowdown:A" : "slowdown:B") +
             ":k0=" + std::to_string(spec.k0) + ":l0=" + std::to_string(spec.l0);
  trace.cycle_length = spec.cycle_length();
  trace.cycle_shift = spec.net_shift();

  ChainState current = state;
  trace.slices.emplace_back(current.spins().begin(), current.spins().end());
  for (std::size_t c = 0; c < cycles; ++c) {
    for (int k = 0; k < spec.cycle_length(); ++k) {
      if (spec.mode == SlowdownMode::CaseA) {
        const bool forward = plan[static_cast<std::size_t>(k)] > 0;
        current = apply(forward ? u : u_inv, current);
        trace.events.push_back(forward ? 'U' : 'D');
      } else if (k < spec.k0) {
        current = apply(u, current);
        trace.events.push_back('U');
      } else {
        current = apply(shift, current);
        trace.events.push_back('T');
      }
      trace.slices.emplace_back(current.spins().begin(), current.spins().end());
    }
  }
  return trace;
}

Velocity measure_velocity(const SpacetimeTrace &trace) {
  if (trace.cycle_length < 1 || trace.slices.size() < 2)
    throw ValidationError("measure_velocity: need at least one whole cycle");
  const auto cycle = static_cast<std::size_t>(trace.cycle_length);
  if ((trace.slices.size() - 1) % cycle != 0)
    throw ValidationError("measure_velocity: trace is not cycle-aligned");
  const std::int64_t background = background_value(trace.slices.front());
  const long long sublattice = trace.s;

  Velocity v;
  v.steps_per_cycle = trace.cycle_length;
  bool first = true;
  long long prev = defect_site(trace.slices.front(), background);
  for (std::size_t n = cycle; n < trace.slices.size(); n += cycle) {
    const long long site = defect_site(trace.slices[n], background);
    if ((site - prev) % 2 != 0)
      throw ValidationError("measure_velocity: defect changed sublattice");
    const long long step = wrap_signed((site - prev) / 2, sublattice);
    if (!first && step != v.displacement_per_cycle)
      throw ValidationError("measure_velocity: displacement varies between cycles");
    v.displacement_per_cycle = step;
    first = false;
    prev = site;
  }
  return v;
}

std::vector<std::int64_t> WeylFields::left() const {
  std::vector<std::int64_t> out(plus.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = (plus[j] + minus[j]) / 2;
  return out;
}

std::vector<std::int64_t> WeylFields::right() const {
  std::vector<std::int64_t> out(plus.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = (plus[j] - minus[j]) / 2;
  return out;
}

WeylFields weyl_fields(std::span<const std::int64_t> slice) {
  if (slice.size() % 2 != 0)
    throw ValidationError("weyl_fields: odd number of sites");
  WeylFields f;
  for (std::size_t k = 0; k < slice.size(); k += 2) {
    f.plus.push_back(slice[k] + slice[k + 1]);
    f.minus.push_back(slice[k] - slice[k + 1]);
  }
  return f;
}

std::int64_t TransportResidual::max() const {
  return std::max({left, right, plus, minus});
}

TransportResidual check_weyl_combination(const SpacetimeTrace &trace) {
  if (trace.cycle_length < 1 || trace.slices.empty() ||
      (trace.slices.size() - 1) % static_cast<std::size_t>(trace.cycle_length) != 0)
    throw ValidationError("check_weyl_combination: trace is not cycle-aligned");
  const auto cycle = static_cast<std::size_t>(trace.cycle_length);
  const long long n = trace.s;
  const long long shift = trace.cycle_shift;
  auto at = [n](const std::vector<std::int64_t> &v, long long j) {
    return v[static_cast<std::size_t>(((j % n) + n) % n)];
  };

  TransportResidual r;
  for (std::size_t k = 0; k + cycle < trace.slices.size(); k += cycle) {
    const WeylFields now = weyl_fields(trace.slices[k]);
    const WeylFields next = weyl_fields(trace.slices[k + cycle]);
    const auto l_now = now.left(), r_now = now.right();
    const auto l_next = next.left(), r_next = next.right();
    for (long long j = 0; j < n; ++j) {
      const std::int64_t l_src = at(l_now, j + shift);
      const std::int64_t r_src = at(r_now, j - shift);
      const auto ju = static_cast<std::size_t>(j);
      r.left = std::max(r.left, std::abs(l_next[ju] - l_src));
      r.right = std::max(r.right, std::abs(r_next[ju] - r_src));
      r.plus = std::max(r.plus, std::abs(next.plus[ju] - (l_src + r_src)));
      r.minus = std::max(r.minus, std::abs(next.minus[ju] - (l_src - r_src)));
    }
  }
  return r;
}

SpacetimeTrace mirror_sites(const SpacetimeTrace &trace) {
  SpacetimeTrace out = trace;
  for (auto &slice : out.slices)
    std::reverse(slice.begin(), slice.end());
  return out;
}

Complex transfer_eigenvalue(const SlowdownSpec &spec, int s, Side movers, int mode) {
  const Permutation cycle = cycle_permutation(spec, s);
  const Index offset = movers == Side::Left ? 0 : 1;
  const auto n = static_cast<Eigen::Index>(s);
  ComplexMatrix transfer = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < static_cast<Index>(s); ++j) {
    const Index target = cycle(2 * j + offset);
    if (target % 2 != offset)
      throw ValidationError("transfer_eigenvalue: cycle mixes sublattices");
    transfer(target / 2, j) = 1.0;
  }
  const double kappa = 2.0 * std::numbers::pi * mode / s;
  ComplexVector wave(n);
  for (Eigen::Index j = 0; j < n; ++j)
    wave(j) = std::polar(1.0, kappa * static_cast<double>(j));
  const ComplexVector moved = transfer * wave;
  return wave.dot(moved) / wave.squaredNorm();
}

} // namespace ontca
