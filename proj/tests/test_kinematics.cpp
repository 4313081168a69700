#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ontca/cogwheel.hpp"
#include "ontca/error.hpp"
#include "ontca/kinematics.hpp"

using namespace ontca;
using std::numbers::pi;

namespace {

ChainState random_state(int s, std::mt19937_64 &rng) {
  std::vector<int> spins(2 * s);
  for (auto &v : spins)
    v = (rng() & 1) ? 1 : -1;
  return ChainState(spins);
}

SlowdownSpec case_a(int k0, int l0) { return {k0, l0, SlowdownMode::CaseA, 1.0, 1.0}; }
SlowdownSpec case_b(int k0, int l0) { return {k0, l0, SlowdownMode::CaseB, 1.0, 1.0}; }

} // namespace

TEST_CASE("translations") {
  const std::vector<char> abcd{'a', 'b', 'c', 'd'};
  CHECK(permute_contents<char>(translation_left(2), abcd) == std::vector<char>{'a', 'd', 'c', 'b'});
  CHECK(permute_contents<char>(translation_right(2), abcd) == std::vector<char>{'c', 'b', 'a', 'd'});

  const std::vector<char> six{'a', 'b', 'c', 'd', 'e', 'f'};
  // Even sites (b, d, f) move two sites left; odd sites (a, c, e) two right.
  CHECK(permute_contents<char>(translation_left(3), six) ==
        std::vector<char>{'a', 'd', 'c', 'f', 'e', 'b'});
  CHECK(permute_contents<char>(translation_right(3), six) ==
        std::vector<char>{'e', 'b', 'a', 'd', 'c', 'f'});

  for (int s = 2; s <= 16; ++s) {
    const auto tl = translation_left(s), tr = translation_right(s), u = update_permutation(s);
    CHECK(power(tl, s).is_identity());
    CHECK(power(tr, s).is_identity());
    CHECK(order(tl) == static_cast<std::uint64_t>(s));
    CHECK(from_transpositions(2 * s, translation_left_transpositions(s)) == tl);
    CHECK(from_transpositions(2 * s, translation_right_transpositions(s)) == tr);
    CHECK(compose(tl, tr) == compose(tr, tl));
    CHECK(compose(u, tl) == compose(tl, u));
    CHECK(compose(u, tr) == compose(tr, u));
    for (Index k = 0; k < Index(2 * s); k += 2)
      CHECK(tl(k) == k);
    for (Index k = 1; k < Index(2 * s); k += 2)
      CHECK(tr(k) == k);
  }
  CHECK_THROWS_AS(translation_left(1), ValidationError);
}

TEST_CASE("theta generators") {
  const double d = 0.6;
  for (int s = 2; s <= 5; ++s)
    for (Side side : {Side::Left, Side::Right}) {
      CAPTURE(s);
      const auto theta = theta_generator(s, d, side);
      const auto dense = theta.to_dense();
      CHECK(is_hermitian_exact(dense));
      const auto basis_t = induced_basis_permutation(translation(s, side));
      CHECK(max_abs_diff(expm_hermitian(dense, d), lift(basis_t)) < 1e-9);
      const auto all_up = StateVector::basis(theta.dim(), theta.dim() - 1).amps;
      CHECK(max_abs(theta.apply(all_up)) == 0.0);

      // Dense cotangent series over powers of the translation.
      const auto series = cot_series_generator(basis_t, s, d);
      CHECK(noninvariant_deviation(series, dense, basis_t, s) < 1e-10);
    }

  const auto theta2 = theta_generator(2, d, Side::Left);
  const auto cog = hamiltonian_standard_basis(CogwheelSpec{2, d, {}});
  CHECK(max_abs_diff(theta2.block_for_length(2), cog.transpose()) < 1e-15);
}

TEST_CASE("effective Hamiltonian, Case A") {
  const int s = 3;
  const auto h = extract_hamiltonian(s, 1.0).to_dense();

  const auto unit = effective_hamiltonian(case_a(1, 0), s);
  CHECK(max_abs_diff(unit.generator, h) < 1e-15);
  CHECK(unit.time == 1.0);

  const auto frozen = effective_hamiltonian(case_a(2, 2), s);
  CHECK(max_abs(frozen.generator) == 0.0);
  CHECK(cycle_permutation(case_a(2, 2), s).is_identity());

  const auto slow = effective_hamiltonian(case_a(5, 3), s);
  CHECK(slow.time == 8.0);
  const auto u = chain_update_on_basis(s);
  CHECK(max_abs_diff(expm_hermitian(slow.generator, slow.time), lift(power(u, 2))) < 1e-9);
}

TEST_CASE("effective Hamiltonian, Case B") {
  for (auto [k0, l0] : {std::pair{1, 0}, {2, 1}, {3, 3}, {5, 3}}) {
    for (int s = 2; s <= 4; ++s) {
      CAPTURE(k0);
      CAPTURE(l0);
      CAPTURE(s);
      SlowdownSpec spec{k0, l0, SlowdownMode::CaseB, 0.7, 1.9};
      const auto eff = effective_hamiltonian(spec, s);
      CHECK(eff.time == 1.0);
      CHECK(is_hermitian_exact(eff.generator));
      const auto expected = lift(induced_basis_permutation(cycle_permutation(spec, s)));
      CHECK(max_abs_diff(expm_hermitian(eff.generator, 1.0), expected) < 1e-9);
    }
  }
}

TEST_CASE("slowdown validation") {
  CHECK_THROWS_AS(validate(case_a(0, 0)), ValidationError);
  CHECK_THROWS_AS(validate(case_a(1, -1)), ValidationError);
  CHECK_THROWS_AS(validate(case_b(2, 3)), ValidationError);
  CHECK_NOTHROW(validate(case_a(2, 3)));
}

TEST_CASE("Case A composite does not depend on the interleaving") {
  std::mt19937_64 rng(12);
  for (int k0 = 1; k0 <= 6; ++k0)
    for (int l0 = 0; l0 <= k0; ++l0) {
      const auto spec = case_a(k0, l0);
      for (int s : {3, 5, 8}) {
        const auto expected = power(update_permutation(s), k0 - l0);
        CHECK(cycle_permutation(spec, s) == expected);
        CHECK(schedule_permutation(default_schedule(spec), s) == expected);
        for (int trial = 0; trial < 3; ++trial)
          CHECK(schedule_permutation(random_schedule(spec, rng), s) == expected);
      }
    }
}

TEST_CASE("velocity") {
  SUBCASE("plain update") {
    const auto v = measure_velocity(evolve_slowdown(ChainState::with_defect(6, 2), case_a(1, 0), 6));
    CHECK(v.displacement_per_cycle == 1);
    CHECK(v.steps_per_cycle == 1);
    CHECK(v.value() == 1.0);
  }
  SUBCASE("Case A, k0=2 l0=1") {
    const auto v = measure_velocity(evolve_slowdown(ChainState::with_defect(6, 4), case_a(2, 1), 4));
    CHECK(v.displacement_per_cycle == 1);
    CHECK(v.steps_per_cycle == 3);
  }
  SUBCASE("Case B, k0=5 l0=3") {
    const auto trace = evolve_slowdown(ChainState::with_defect(8, 4), case_b(5, 3), 3);
    CHECK(trace.events == std::string("UUUUUTTT").append("UUUUUTTT").append("UUUUUTTT"));
    const auto v = measure_velocity(trace);
    CHECK(v.displacement_per_cycle == 2);
    CHECK(v.steps_per_cycle == 8);
  }
  SUBCASE("left movers go the other way") {
    const auto v = measure_velocity(evolve_slowdown(ChainState::with_defect(8, 3), case_b(5, 3), 2));
    CHECK(v.displacement_per_cycle == -2);
  }
  SUBCASE("velocity is c' for all small pairs") {
    for (int k0 = 1; k0 <= 6; ++k0)
      for (int l0 = 0; l0 <= k0; ++l0)
        for (auto spec : {case_a(k0, l0), case_b(k0, l0)}) {
          const auto v = measure_velocity(evolve_slowdown(ChainState::with_defect(16, 6), spec, 3));
          CHECK(v.displacement_per_cycle == k0 - l0);
          CHECK(v.steps_per_cycle == k0 + l0);
        }
  }
  SUBCASE("uniform state has no defect") {
    CHECK_THROWS_AS(measure_velocity(evolve(ChainState::uniform(3), 2)), ValidationError);
  }
}

TEST_CASE("Weyl fields") {
  const std::vector<std::int64_t> slice{1, -1, -1, -1, 1, 1};
  const auto w = weyl_fields(slice);
  CHECK(w.plus == std::vector<std::int64_t>{0, -2, 2});
  CHECK(w.minus == std::vector<std::int64_t>{2, 0, 0});
  CHECK(w.left() == std::vector<std::int64_t>{1, -1, 1});
  CHECK(w.right() == std::vector<std::int64_t>{-1, -1, 1});
}

TEST_CASE("discrete transport is exact") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int s = 2 + static_cast<int>(rng() % 10);
    const int k0 = 1 + static_cast<int>(rng() % 4);
    const int l0 = static_cast<int>(rng() % (k0 + 1));
    const auto state = random_state(s, rng);
    for (auto spec : {case_a(k0, l0), case_b(k0, l0)}) {
      const auto trace = evolve_slowdown(state, spec, 3);
      CHECK(check_weyl_combination(trace).max() == 0);
      CHECK(check_weyl_combination(mirror_sites(trace)).max() == 0);
    }
  }
  CHECK(check_weyl_combination(evolve(ChainState::uniform(4), 3)).max() == 0);

  auto corrupted = evolve(random_state(6, rng), 4);
  corrupted.slices[2][5] = -corrupted.slices[2][5];
  CHECK(check_weyl_combination(corrupted).max() >= 2);

  auto truncated = evolve_slowdown(ChainState::uniform(3), case_a(2, 1), 2);
  truncated.slices.pop_back();
  CHECK_THROWS_AS(check_weyl_combination(truncated), ValidationError);
}

TEST_CASE("mirroring exchanges left and right movers") {
  for (int s = 2; s <= 6; ++s)
    for (int site = 1; site <= 2 * s; ++site) {
      const auto mirrored = mirror_sites(evolve(ChainState::with_defect(s, site), 2 * s));
      const auto direct = evolve(ChainState::with_defect(s, 2 * s + 1 - site), 2 * s);
      CHECK(mirrored.slices == direct.slices);
    }
}

TEST_CASE("transfer eigenvalues are pure phases") {
  for (int k0 = 1; k0 <= 4; ++k0)
    for (int l0 = 0; l0 <= k0; ++l0)
      for (int mode = 0; mode < 6; ++mode)
        for (auto spec : {case_a(k0, l0), case_b(k0, l0)}) {
          const int s = 6;
          const double kappa = 2 * pi * mode / s;
          const Complex left = transfer_eigenvalue(spec, s, Side::Left, mode);
          const Complex right = transfer_eigenvalue(spec, s, Side::Right, mode);
          CHECK(std::abs(left - std::exp(kI * kappa * double(k0 - l0))) < 1e-12);
          CHECK(std::abs(right - std::exp(-kI * kappa * double(k0 - l0))) < 1e-12);
        }
}
