#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "ontca/dirac.hpp"
#include "ontca/error.hpp"
#include "ontca/kinematics.hpp"
#include "ontca/spin_chain.hpp"

using namespace ontca;

namespace {

// Oracle: the update written with 1-based site labels and an explicit
// modulus, independent of the library's index bookkeeping.
std::vector<std::int64_t> oracle_step(const std::vector<std::int64_t> &v, std::int64_t mu,
                                      std::int64_t m) {
  const int n = static_cast<int>(v.size());
  auto at = [&](int site) { return v[((site - 1) % n + n) % n]; };
  auto md = [&](std::int64_t x) {
    const std::int64_t q = 2 * m + 1;
    return ((x + m) % q + q) % q - m;
  };
  std::vector<std::int64_t> out(n);
  for (int j = 1; 2 * j <= n; ++j) {
    out[2 * j - 2] = md(at(2 * j + 1) - mu * at(2 * j));
    out[2 * j - 1] = md(at(2 * j - 2) + mu * at(2 * j - 1));
  }
  return out;
}

std::vector<std::int64_t> random_values(int s, std::int64_t m, std::mt19937_64 &rng) {
  std::uniform_int_distribution<std::int64_t> d(-m, m);
  std::vector<std::int64_t> v(2 * s);
  for (auto &x : v)
    x = d(rng);
  return v;
}

// Oracle: follow every configuration around its cycle with oracle_step.
std::map<std::size_t, std::size_t> oracle_histogram(int s, std::int64_t m, std::int64_t mu) {
  const std::int64_t q = 2 * m + 1;
  std::uint64_t total = 1;
  for (int k = 0; k < 2 * s; ++k)
    total *= q;
  auto decode = [&](std::uint64_t idx) {
    std::vector<std::int64_t> v(2 * s);
    for (auto &x : v) {
      x = static_cast<std::int64_t>(idx % q) - m;
      idx /= q;
    }
    return v;
  };
  auto encode = [&](const std::vector<std::int64_t> &v) {
    std::uint64_t idx = 0;
    for (auto it = v.rbegin(); it != v.rend(); ++it)
      idx = idx * q + static_cast<std::uint64_t>(*it + m);
    return idx;
  };
  std::vector<bool> seen(total, false);
  std::map<std::size_t, std::size_t> hist;
  for (std::uint64_t start = 0; start < total; ++start) {
    if (seen[start])
      continue;
    std::size_t len = 0;
    std::uint64_t cur = start;
    do {
      seen[cur] = true;
      cur = encode(oracle_step(decode(cur), mu, m));
      ++len;
    } while (cur != start);
    ++hist[len];
  }
  return hist;
}

} // namespace

TEST_CASE("wrap") {
  CHECK(wrap(0, 3) == 0);
  for (std::int64_t m = 1; m <= 5; ++m) {
    CHECK(wrap(m + 1, m) == -m);
    CHECK(wrap(-m - 1, m) == m);
    CHECK(wrap(3 * (2 * m + 1) + 1, m) == 1);
  }
  CHECK(wrap(2, 1) == -1);
  CHECK(wrap(-7, 1) == -1);
}

TEST_CASE("M=1 tables match the published grids") {
  // Symbols s1, s2, s3 stand for -1, 0, +1.
  const std::vector<std::vector<std::int64_t>> add{{1, -1, 0}, {-1, 0, 1}, {0, 1, -1}};
  const std::vector<std::vector<std::int64_t>> sub{{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};
  CHECK(build_table(1, TableKind::Add).table == add);
  CHECK(build_table(1, TableKind::Sub).table == sub);

  const auto plus = build_table(1, TableKind::Add);
  CHECK(plus.at(-1, 1) == 0);
  CHECK(plus.at(1, 1) == -1);

  CHECK(format_table(plus) == "S+ (M=1)\n"
                              "   | s1 s2 s3 SR\n"
                              "---+------------\n"
                              "s1 | s3 s1 s2\n"
                              "s2 | s1 s2 s3\n"
                              "s3 | s2 s3 s1\n"
                              "SL |\n");
  CHECK(format_table(build_table(1, TableKind::Sub)) == "S- (M=1)\n"
                                                        "   | s1 s2 s3 SL\n"
                                                        "---+------------\n"
                                                        "s1 | s2 s3 s1\n"
                                                        "s2 | s1 s2 s3\n"
                                                        "s3 | s3 s1 s2\n"
                                                        "SR |\n");
}

TEST_CASE("rows read as permutations of the symbol list") {
  const auto plus = build_table(1, TableKind::Add);
  // Row s3 rearranges (s1 s2 s3) into (s2 s3 s1).
  const std::vector<std::int64_t> symbols{-1, 0, 1};
  CHECK(permute_contents<std::int64_t>(plus.row_permutation(1), symbols) ==
        std::vector<std::int64_t>{0, 1, -1});
  for (std::int64_t m = 1; m <= 4; ++m)
    for (auto kind : {TableKind::Add, TableKind::Sub}) {
      const auto t = build_table(m, kind);
      std::vector<std::int64_t> syms(2 * m + 1);
      std::iota(syms.begin(), syms.end(), -m);
      for (std::int64_t r = -m; r <= m; ++r) {
        const auto row = t.table[r + m];
        CHECK(permute_contents<std::int64_t>(t.row_permutation(r), syms) == row);
        const auto seq = t.row_transpositions(r);
        CHECK(permute_contents<std::int64_t>(from_transpositions(syms.size(), seq), syms) == row);
      }
    }
}

TEST_CASE("table invariants up to M=16") {
  for (std::int64_t m = 1; m <= 16; ++m) {
    const auto n = static_cast<std::size_t>(2 * m + 1);
    const auto add = build_table(m, TableKind::Add).table;
    const auto sub = build_table(m, TableKind::Sub).table;
    for (const auto *t : {&add, &sub})
      for (std::size_t k = 0; k < n; ++k) {
        std::set<std::int64_t> row, col;
        for (std::size_t l = 0; l < n; ++l) {
          row.insert((*t)[k][l]);
          col.insert((*t)[l][k]);
          CHECK(std::abs((*t)[k][l]) <= m);
        }
        CHECK(row.size() == n);
        CHECK(col.size() == n);
      }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        CHECK(add[a][b] == add[b][a]);
        CHECK(sub[a][b] == wrap(-sub[b][a], m));
      }
  }
}

TEST_CASE("GenChainState validation") {
  CHECK_THROWS_AS(GenChainState(2, 1, {0, 0, 2, 0}), ValidationError);
  CHECK_THROWS_AS(GenChainState(2, 1, {0, 0, 0}), ValidationError);
  CHECK_THROWS_AS(validate(DiracSpec{0, 1, 1}), ValidationError);
  CHECK_THROWS_AS(validate(DiracSpec{2, 0, 1}), ValidationError);
  CHECK_THROWS_AS(dirac_step(GenChainState::zero(2, 1), DiracSpec{3, 1, 1}), ValidationError);
  CHECK_THROWS_AS(dirac_step(GenChainState::zero(2, 1), DiracSpec{2, 2, 1}), ValidationError);
}

TEST_CASE("dirac step") {
  const DiracSpec spec{2, 1, 1};
  CHECK(dirac_step(GenChainState(2, 1, {1, 0, 0, 0}), spec) == GenChainState(2, 1, {0, 1, 1, 0}));
  CHECK(dirac_step(GenChainState::zero(3, 2), DiracSpec{3, 2, 3}) == GenChainState::zero(3, 2));

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int s = 1 + static_cast<int>(rng() % 6);
    const std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 5);
    const std::int64_t mu = static_cast<std::int64_t>(rng() % 7) - 3;
    const auto v = random_values(s, m, rng);
    const auto out = dirac_step(GenChainState(s, m, v), DiracSpec{s, m, mu});
    CHECK(std::vector<std::int64_t>(out.values().begin(), out.values().end()) ==
          oracle_step(v, mu, m));
  }
}

TEST_CASE("boundary: the first right mover reads the last site") {
  // Only R at site 2S is nonzero; after one step it must sit on site 2.
  const DiracSpec spec{3, 2, 1};
  const auto out = dirac_step(GenChainState(3, 2, {0, 0, 0, 0, 0, 1}), spec);
  CHECK(out.values()[1] == 1);
  // And L at site 1 is fed by site 3, with the wrap at the top end.
  const auto top = dirac_step(GenChainState(3, 2, {0, 0, 1, 0, 0, 0}), spec);
  CHECK(top.values()[0] == 1);
  const auto wrapped = dirac_step(GenChainState(3, 2, {0, 2, 0, 0, 0, 0}), DiracSpec{3, 2, 2});
  // L(1) = L(3) - 2 R(2) = -4 -> 1 (mod 5).
  CHECK(wrapped.values()[0] == 1);
}

TEST_CASE("linearity modulo 2M+1") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int s = 1 + static_cast<int>(rng() % 4);
    const std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 3);
    const DiracSpec spec{s, m, 1 + static_cast<std::int64_t>(rng() % 3)};
    const auto a = random_values(s, m, rng), b = random_values(s, m, rng);
    std::vector<std::int64_t> sum(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
      sum[k] = wrap(a[k] + b[k], m);
    const auto fa = dirac_step(GenChainState(s, m, a), spec);
    const auto fb = dirac_step(GenChainState(s, m, b), spec);
    const auto fs = dirac_step(GenChainState(s, m, sum), spec);
    for (std::size_t k = 0; k < a.size(); ++k)
      CHECK(fs.values()[k] == wrap(fa.values()[k] + fb.values()[k], m));
  }
}

TEST_CASE("real-valued counterpart agrees on integer input without wrap") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const int s = 2 + static_cast<int>(rng() % 5);
    const std::int64_t m = 1000;
    const auto v = random_values(s, 10, rng);
    const auto out = dirac_step(GenChainState(s, m, v), DiracSpec{s, m, 1});
    const std::vector<double> real(v.begin(), v.end());
    const auto rout = dirac_step_real(real, 1.0);
    for (std::size_t k = 0; k < v.size(); ++k)
      CHECK(rout[k] == static_cast<double>(out.values()[k]));
  }
}

TEST_CASE("massless reduction equals the Ising movers") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const int s = 2 + static_cast<int>(rng() % 8);
    std::vector<int> spins(2 * s);
    for (auto &x : spins)
      x = (rng() & 1) ? 1 : -1;
    const std::vector<std::int64_t> values(spins.begin(), spins.end());
    const auto massless = evolve_dirac(GenChainState(s, 1, values), DiracSpec{s, 1, 0}, 2 * s);
    const auto ising = evolve(ChainState(spins), 2 * s);
    CHECK(massless.slices == ising.slices);
  }
  // General values, not just +-1: left movers go one sublattice site left.
  const std::vector<std::int64_t> v{3, -2, 1, 0, -3, 2};
  const auto out = dirac_step(GenChainState(3, 3, v), DiracSpec{3, 3, 0});
  CHECK(std::vector<std::int64_t>(out.values().begin(), out.values().end()) ==
        std::vector<std::int64_t>{1, 2, -3, -2, 3, 0});
}

TEST_CASE("mass coupling mixes movers") {
  std::mt19937_64 rng(14);
  int changed = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = random_values(4, 3, rng);
    const auto out = dirac_step(GenChainState(4, 3, v), DiracSpec{4, 3, 1});
    std::multiset<std::int64_t> before, after;
    for (std::size_t k = 0; k < v.size(); k += 2) {
      before.insert(v[k]);
      after.insert(out.values()[k]);
    }
    changed += before != after;
  }
  CHECK(changed > 10);
}

TEST_CASE("bijectivity") {
  const auto r = verify_bijective(DiracSpec{2, 1, 1});
  CHECK(r.bijective);
  CHECK(r.exhaustive);
  CHECK(r.domain_size == 81);
  CHECK(r.image_size == 81);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->size() == 81);

  CHECK(verify_bijective(DiracSpec{3, 2, 1}).bijective);
  CHECK(verify_bijective(DiracSpec{2, 1, 0}).bijective);

  const auto broken = verify_bijective(DiracSpec{2, 2, 2});
  CHECK_FALSE(broken.bijective);
  CHECK(broken.image_size < broken.domain_size);
  CHECK_FALSE(broken.certificate.has_value());

  const auto big = verify_bijective(DiracSpec{8, 3, 1});
  CHECK_FALSE(big.exhaustive);
  CHECK(big.bijective);
  CHECK_THROWS_AS(verify_bijective(DiracSpec{8, 3, 1}, false), BoundError);
}

TEST_CASE("modular determinant agrees with enumeration") {
  for (int s = 1; s <= 3; ++s)
    for (std::int64_t m = 1; m <= 3; ++m)
      for (std::int64_t mu = -3; mu <= 4; ++mu) {
        const DiracSpec spec{s, m, mu};
        if (*config_count(spec) > 200'000)
          continue;
        CAPTURE(s);
        CAPTURE(m);
        CAPTURE(mu);
        const auto ex = verify_bijective_exhaustive(spec);
        const auto mod = verify_bijective_modular(spec);
        CHECK(ex.bijective == mod.bijective);
        // det = (1 + mu^2)^S
        std::int64_t det = 1;
        for (int k = 0; k < s; ++k)
          det = det * (1 + mu * mu) % (2 * m + 1);
        CHECK(mod.determinant_mod == det);
      }
}

TEST_CASE("determinant_mod") {
  CHECK(determinant_mod({{2, 1}, {1, 1}}, 7) == 1);
  CHECK(determinant_mod({{2, 0}, {0, 3}}, 6) == 0);
  CHECK(determinant_mod({{0, 1}, {1, 0}}, 5) == 4);
  CHECK(determinant_mod({{4, 3, 1}, {2, 5, 7}, {1, 1, 6}}, 9) == 74 % 9);
}

TEST_CASE("orbit structure") {
  const auto massless = cycle_length_histogram(dirac_orbit_structure(DiracSpec{2, 1, 0}));
  for (auto [len, count] : massless)
    CHECK(2 % len == 0);

  using Hist = std::map<std::size_t, std::size_t>;
  const Hist s2m1{{1, 1}, {8, 10}};
  const Hist s2m1mu0{{1, 9}, {2, 36}};
  const Hist s3m1{{1, 1}, {8, 10}, {24, 27}};
  const Hist s2m2{{1, 5}, {2, 10}, {4, 150}};
  CHECK(cycle_length_histogram(dirac_orbit_structure(DiracSpec{2, 1, 1})) == s2m1);
  CHECK(oracle_histogram(2, 1, 1) == s2m1);
  CHECK(cycle_length_histogram(dirac_orbit_structure(DiracSpec{2, 1, 0})) == s2m1mu0);
  CHECK(cycle_length_histogram(dirac_orbit_structure(DiracSpec{3, 1, 1})) == s3m1);
  CHECK(cycle_length_histogram(dirac_orbit_structure(DiracSpec{2, 2, 1})) == s2m2);
  CHECK(oracle_histogram(2, 2, 1) == s2m2);

  const auto cycles = dirac_orbit_structure(DiracSpec{2, 2, 1});
  const auto zero = encode_config(GenChainState::zero(2, 2).values(), 2);
  bool zero_fixed = false;
  for (const auto &c : cycles.cycles)
    zero_fixed |= c.size() == 1 && c[0] == zero;
  CHECK(zero_fixed);

  CHECK_THROWS_AS(dirac_orbit_structure(DiracSpec{2, 2, 2}), ValidationError);
  CHECK_THROWS_AS(dirac_orbit_structure(DiracSpec{8, 3, 1}), BoundError);
}

TEST_CASE("config encoding") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = random_values(3, 2, rng);
    CHECK(decode_config(encode_config(v, 2), 3, 2) == v);
  }
  CHECK(encode_config(std::vector<std::int64_t>{-1, -1}, 1) == 0);
  CHECK(encode_config(std::vector<std::int64_t>{0, -1}, 1) == 1);
  CHECK(encode_config(std::vector<std::int64_t>{-1, 0}, 1) == 3);
}

TEST_CASE("dispersion") {
  SUBCASE("massless profile is transported exactly") {
    const auto r = dispersion_check(DiracSpec{64, 1'000'000, 0}, 3, 1000.0, 40);
    CHECK_FALSE(r.wrapped);
    CHECK(r.integer_vs_real == 0.0);
    CHECK(r.continuum_deviation < 1e-9);
    CHECK(r.omega == doctest::Approx(r.kappa));
  }
  SUBCASE("massive run stays in range and matches its real counterpart") {
    // |det| of the one-step map is 1 + mu^2 = 2, so amplitudes can grow by
    // 2^16 over 32 steps; a small amplitude keeps them below M.
    const auto r = dispersion_check(DiracSpec{256, 1'000'000, 1}, 1, 10.0, 32);
    CHECK_FALSE(r.wrapped);
    CHECK(r.integer_vs_real == 0.0);
    CHECK(r.omega == doctest::Approx(std::sqrt(r.kappa * r.kappa + 1.0)));
  }
  SUBCASE("wrap is reported") {
    const auto r = dispersion_check(DiracSpec{16, 3, 1}, 1, 3.0, 8);
    CHECK(r.wrapped);
  }
}
