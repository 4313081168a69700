#pragma once

#include <complex>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace ontca {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// exp(-i H t) for Hermitian H, by spectral decomposition.
///
/// H is first split into the connected components of its nonzero pattern and
/// each component is diagonalized on its own, so block-sparse generators
/// (orbit Hamiltonians) exponentiate in time linear in their block sizes.
ComplexMatrix expm_hermitian(const ComplexMatrix &H, double t);

double max_abs(const ComplexMatrix &A);
double max_abs_diff(const ComplexMatrix &A, const ComplexMatrix &B);

/// max |U^dagger U - 1| entrywise.
double unitarity_deviation(const ComplexMatrix &U);

/// Exact entrywise check H(n,m) == conj(H(m,n)).
bool is_hermitian_exact(const ComplexMatrix &H);

/// Row-major CSV: one row per line, entries "re,im" separated by ';'.
/// Numbers use shortest round-trip formatting and never depend on locale.
void write_csv(std::ostream &os, const ComplexMatrix &A);
ComplexMatrix read_csv(std::istream &is);

/// Shortest round-trip decimal text for a double (locale independent).
std::string format_double(double x);

} // namespace ontca
