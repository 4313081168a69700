#include "ontca/cogwheel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ontca/error.hpp"

namespace ontca {

namespace {

void require_zero_phases(const CogwheelSpec &spec) {
  for (double phi : spec.phases)
    if (phi != 0.0)
      throw ValidationError("cogwheel Hamiltonian is defined for zero phases only");
}

} // namespace

void validate(const CogwheelSpec &spec) {
  if (spec.n == 0)
    throw ValidationError("cogwheel: N must be positive");
  if (!(spec.t > 0.0) || !std::isfinite(spec.t))
    throw ValidationError("cogwheel: T must be positive");
  if (!spec.phases.empty() && spec.phases.size() != spec.n)
    throw ValidationError("cogwheel: expected " + std::to_string(spec.n) + " phases, got " +
                          std::to_string(spec.phases.size()));
}

ComplexMatrix step_matrix(const CogwheelSpec &spec) {
  validate(spec);
  const auto n = static_cast<Eigen::Index>(spec.n);
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (Eigen::Index row = 0; row < n; ++row) {
    const double phi = spec.phases.empty() ? 0.0 : spec.phases[row];
    u(row, (row + 1) % n) = phi == 0.0 ? Complex{1.0, 0.0} : std::polar(1.0, phi);
  }
  return u;
}

std::vector<double> eigenvalues_h(const CogwheelSpec &spec) {
  validate(spec);
  require_zero_phases(spec);
  std::vector<double> values(spec.n);
  const double n = static_cast<double>(spec.n);
  for (std::size_t k = 0; k < spec.n; ++k)
    values[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / (n * spec.t);
  return values;
}

ComplexMatrix hamiltonian_diagonal(const CogwheelSpec &spec) {
  const auto values = eigenvalues_h(spec);
  ComplexMatrix h = ComplexMatrix::Zero(static_cast<Eigen::Index>(spec.n),
                                        static_cast<Eigen::Index>(spec.n));
  for (std::size_t k = 0; k < values.size(); ++k)
    h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = values[k];
  return h;
}

Complex hamiltonian_element(std::size_t n_states, double t, long long n, long long m) {
  const double nn = static_cast<double>(n_states);
  const double scale = std::numbers::pi / (nn * t);
  if (n == m)
    return {scale * (nn - 1.0), 0.0};
  const long long d = n - m;
  if (2 * d == static_cast<long long>(n_states) || -2 * d == static_cast<long long>(n_states))
    return {-scale, 0.0}; // cot(+-pi/2)
  const double angle = std::numbers::pi * static_cast<double>(d) / nn;
  return {-scale, scale * std::cos(angle) / std::sin(angle)};
}

ComplexMatrix hamiltonian_standard_basis(const CogwheelSpec &spec) {
  validate(spec);
  require_zero_phases(spec);
  const auto n = static_cast<Eigen::Index>(spec.n);
  ComplexMatrix h(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    h(c, c) = hamiltonian_element(spec.n, spec.t, c, c);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      h(r, c) = hamiltonian_element(spec.n, spec.t, r, c);
      h(c, r) = std::conj(h(r, c));
    }
  }
  return h;
}

ComplexMatrix dft_matrix(std::size_t n) {
  const auto size = static_cast<Eigen::Index>(n);
  ComplexMatrix f(size, size);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index j = 0; j < size; ++j)
    for (Eigen::Index k = 0; k < size; ++k) {
      const auto jk = (j * k) % size;
      f(j, k) = std::polar(norm, -2.0 * std::numbers::pi * static_cast<double>(jk) /
                                     static_cast<double>(n));
    }
  return f;
}

} // namespace ontca
