#include "ontca/hilbert.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ontca/cogwheel.hpp"
#include "ontca/error.hpp"

namespace ontca {

namespace {

void require_dense(std::size_t dim, const char *what) {
  if (dim > kMaxDenseDim)
    throw BoundError(std::string(what) + ": dimension " + std::to_string(dim) +
                     " exceeds dense limit " + std::to_string(kMaxDenseDim));
}

double cot_pi_fraction(int n, int period) {
  if (2 * n == period)
    return 0.0;
  const double angle = std::numbers::pi * n / period;
  return std::cos(angle) / std::sin(angle);
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

void check_qubit_pair(int i, int j, int n_qubits) {
  if (n_qubits < 2 || n_qubits > 12)
    throw ValidationError("exchange: n_qubits must lie in 2..12");
  if (i < 0 || j < 0 || i >= n_qubits || j >= n_qubits || i == j)
    throw ValidationError("exchange: need distinct qubits i, j < n_qubits");
}

} // namespace

BasisIndexer::BasisIndexer(int s) : s_(s) {
  if (s < 1 || 2 * s > 62)
    throw ValidationError("BasisIndexer: S must lie in 1..31");
}

std::uint64_t BasisIndexer::encode(const ChainState &state) const {
  if (state.s() != s_)
    throw ValidationError("BasisIndexer: state has S=" + std::to_string(state.s()) +
                          ", indexer S=" + std::to_string(s_));
  std::uint64_t index = 0;
  const auto spins = state.spins();
  for (std::size_t k = 0; k < spins.size(); ++k)
    if (spins[k] == +1)
      index |= std::uint64_t{1} << k;
  return index;
}

ChainState BasisIndexer::decode(std::uint64_t index) const {
  if (index >= dim())
    throw ValidationError("BasisIndexer: index out of range");
  std::vector<int> spins(2 * static_cast<std::size_t>(s_));
  for (std::size_t k = 0; k < spins.size(); ++k)
    spins[k] = (index >> k) & 1U ? +1 : -1;
  return ChainState(std::move(spins));
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim)
    throw ValidationError("StateVector::basis: index out of range");
  StateVector v{ComplexVector::Zero(static_cast<Eigen::Index>(dim))};
  v.amps(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

Permutation induced_basis_permutation(const Permutation &site_perm) {
  const std::size_t n = site_perm.size();
  if (n > static_cast<std::size_t>(kMaxEnumeratedSites))
    throw BoundError("basis enumeration over " + std::to_string(n) + " sites exceeds " +
                     std::to_string(kMaxEnumeratedSites));
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Index> map(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    Index image = 0;
    for (std::size_t k = 0; k < n; ++k)
      if ((b >> k) & 1U)
        image |= Index{1} << site_perm(static_cast<Index>(k));
    map[b] = image;
  }
  return Permutation(std::move(map));
}

ComplexMatrix lift(const Permutation &p) {
  require_dense(p.size(), "lift");
  const auto n = static_cast<Eigen::Index>(p.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    m(p(static_cast<Index>(i)), i) = 1.0;
  return m;
}

Permutation chain_update_on_basis(int s) {
  if (s < 1)
    throw ValidationError("chain_update_on_basis: S must be positive");
  if (2 * s > kMaxEnumeratedSites)
    throw BoundError("chain_update_on_basis: 2S=" + std::to_string(2 * s) +
                     " exceeds enumeration bound " + std::to_string(kMaxEnumeratedSites));
  return induced_basis_permutation(update_permutation(s));
}

OrbitGenerator::OrbitGenerator(const Permutation &basis_perm, double step)
    : dim_(basis_perm.size()), step_(step) {
  if (!(step > 0.0))
    throw ValidationError("OrbitGenerator: step must be positive");
  orbits_ = cycle_decompose(basis_perm).cycles;
  for (const auto &orbit : orbits_) {
    const std::size_t len = orbit.size();
    if (blocks_.contains(len))
      continue;
    const auto n = static_cast<Eigen::Index>(len);
    ComplexMatrix block(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index c = 0; c < n; ++c)
        block(a, c) = hamiltonian_element(len, step, c, a);
    blocks_.emplace(len, std::move(block));
  }
}

std::size_t OrbitGenerator::fixed_point_count() const {
  std::size_t count = 0;
  for (const auto &orbit : orbits_)
    count += orbit.size() == 1;
  return count;
}

const ComplexMatrix &OrbitGenerator::block_for_length(std::size_t length) const {
  auto it = blocks_.find(length);
  if (it == blocks_.end())
    throw ValidationError("OrbitGenerator: no orbit of length " + std::to_string(length));
  return it->second;
}

OrbitBlock OrbitGenerator::block(std::size_t orbit_index) const {
  const auto &orbit = orbits_.at(orbit_index);
  return {orbit, block_for_length(orbit.size())};
}

ComplexVector OrbitGenerator::apply(const ComplexVector &v) const {
  if (static_cast<std::size_t>(v.size()) != dim_)
    throw ValidationError("OrbitGenerator::apply: dimension mismatch");
  ComplexVector out = ComplexVector::Zero(v.size());
  for (const auto &orbit : orbits_) {
    const auto &b = blocks_.at(orbit.size());
    for (std::size_t a = 0; a < orbit.size(); ++a) {
      Complex acc{};
      for (std::size_t c = 0; c < orbit.size(); ++c)
        acc += b(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c)) * v(orbit[c]);
      out(orbit[a]) = acc;
    }
  }
  return out;
}

ComplexMatrix OrbitGenerator::to_dense() const {
  require_dense(dim_, "OrbitGenerator::to_dense");
  const auto n = static_cast<Eigen::Index>(dim_);
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (const auto &orbit : orbits_) {
    const auto &b = blocks_.at(orbit.size());
    for (std::size_t a = 0; a < orbit.size(); ++a)
      for (std::size_t c = 0; c < orbit.size(); ++c)
        h(orbit[a], orbit[c]) = b(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c));
  }
  return h;
}

ComplexMatrix OrbitGenerator::exp_dense(double t) const {
  require_dense(dim_, "OrbitGenerator::exp_dense");
  std::map<std::size_t, ComplexMatrix> exps;
  for (const auto &[len, b] : blocks_)
    exps.emplace(len, expm_hermitian(b, t));
  const auto n = static_cast<Eigen::Index>(dim_);
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  for (const auto &orbit : orbits_) {
    const auto &b = exps.at(orbit.size());
    for (std::size_t a = 0; a < orbit.size(); ++a)
      for (std::size_t c = 0; c < orbit.size(); ++c)
        e(orbit[a], orbit[c]) = b(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c));
  }
  return e;
}

double OrbitGenerator::max_orbit_roundtrip_error() const {
  double worst = 0.0;
  for (const auto &[len, b] : blocks_) {
    const auto n = static_cast<Eigen::Index>(len);
    ComplexMatrix shift = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
      shift((k + 1) % n, k) = 1.0;
    worst = std::max(worst, max_abs_diff(expm_hermitian(b, step_), shift));
  }
  return worst;
}

OrbitGenerator extract_hamiltonian(int s, double t) {
  return OrbitGenerator(chain_update_on_basis(s), t);
}

ComplexMatrix cot_series_generator(const Permutation &basis_perm, int period, double step,
                                   bool literal_sign) {
  require_dense(basis_perm.size(), "cot_series_generator");
  if (period < 1)
    throw ValidationError("cot_series_generator: period must be positive");
  const auto n = static_cast<Eigen::Index>(basis_perm.size());
  const double scale = std::numbers::pi / step;
  ComplexMatrix a = scale * ComplexMatrix::Identity(n, n);
  const Complex prefactor = (literal_sign ? kI : -kI) * scale / (2.0 * period);
  for (int k = 1; k < period; ++k) {
    const Complex c = prefactor * cot_pi_fraction(k, period);
    const Permutation fwd = power(basis_perm, k);
    const Permutation bwd = power(basis_perm, -k);
    for (Eigen::Index i = 0; i < n; ++i) {
      a(fwd(static_cast<Index>(i)), i) += c;
      a(bwd(static_cast<Index>(i)), i) -= c;
    }
  }
  return a;
}

double noninvariant_deviation(const ComplexMatrix &a, const ComplexMatrix &b,
                              const Permutation &basis_perm, int period) {
  if (a.rows() != b.rows() || a.cols() != b.cols() ||
      static_cast<std::size_t>(a.rows()) != basis_perm.size())
    throw ValidationError("noninvariant_deviation: shape mismatch");
  const Eigen::Index n = a.rows();
  const ComplexMatrix x = a - b;
  const double w = 1.0 / period;

  // Y = Q X: (P^m X)(r, c) = X(P^-m(r), c).
  ComplexMatrix y = x;
  for (int m = 0; m < period; ++m) {
    const Permutation back = power(basis_perm, -m);
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r)
        y(r, c) -= w * x(back(static_cast<Index>(r)), c);
  }
  // Z = Y Q: (Y P^m)(r, c) = Y(r, P^m(c)).
  ComplexMatrix z = y;
  for (int m = 0; m < period; ++m) {
    const Permutation fwd = power(basis_perm, m);
    for (Eigen::Index c = 0; c < n; ++c)
      z.col(c) -= w * y.col(fwd(static_cast<Index>(c)));
  }
  return max_abs(z);
}

SeriesCheck verify_series_form(int s, double t) {
  if (2 * s > 12)
    throw BoundError("verify_series_form: 2S must not exceed 12");
  const Permutation p = chain_update_on_basis(s);
  const ComplexMatrix h = OrbitGenerator(p, t).to_dense();
  SeriesCheck check;
  {
    const ComplexMatrix a = cot_series_generator(p, s, t);
    check.deviation = noninvariant_deviation(a, h, p, s);
    check.full_space_deviation = max_abs_diff(a, h);
  }
  const ComplexMatrix literal = cot_series_generator(p, s, t, true);
  check.literal_sign_deviation = noninvariant_deviation(literal, h, p, s);
  return check;
}

ComplexMatrix pauli_exchange(int i, int j, int n_qubits) {
  check_qubit_pair(i, j, n_qubits);
  ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, -kI, kI, 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;

  const auto dim = Eigen::Index{1} << n_qubits;
  ComplexMatrix sum = ComplexMatrix::Identity(dim, dim);
  for (const ComplexMatrix *sigma : std::array{&sx, &sy, &sz}) {
    ComplexMatrix term = ComplexMatrix::Identity(1, 1);
    // Most significant qubit first so that qubit k is bit k of the index.
    for (int q = n_qubits - 1; q >= 0; --q)
      term = kron(term, (q == i || q == j) ? *sigma : id2);
    sum += term;
  }
  return 0.5 * sum;
}

Permutation exchange_on_basis(int i, int j, int n_qubits) {
  check_qubit_pair(i, j, n_qubits);
  const std::array<Transposition, 1> swap{Transposition{static_cast<Index>(i),
                                                        static_cast<Index>(j)}};
  return induced_basis_permutation(
      from_transpositions(static_cast<std::size_t>(n_qubits), swap));
}

ComplexMatrix perturbed_exchange(int i, int j, int n_qubits, double eps) {
  const ComplexMatrix p = lift(exchange_on_basis(i, j, n_qubits));
  // cos((pi/2)(1+eps)) = -sin((pi/2) eps), exactly zero at eps = 0.
  const double half = 0.5 * std::numbers::pi * eps;
  const auto dim = p.rows();
  return -kI * std::sin(half) * ComplexMatrix::Identity(dim, dim) + std::cos(half) * p;
}

double superposition_measure(const StateVector &v) {
  if (v.dim() == 0)
    throw ValidationError("superposition_measure: empty state");
  const double norm2 = v.amps.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-12)
    throw ValidationError("superposition_measure: state is not normalized");
  return 1.0 - v.amps.cwiseAbs2().maxCoeff();
}

std::string orbit_report(const OrbitGenerator &g) {
  std::ostringstream os;
  for (const auto &orbit : g.orbits())
    os << "len=" << orbit.size() << " rep=" << orbit.front() << '\n';
  return os.str();
}

} // namespace ontca
