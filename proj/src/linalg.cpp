#include "ontca/linalg.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <vector>

#include "ontca/error.hpp"

namespace ontca {

namespace {

std::vector<std::vector<Eigen::Index>> nonzero_components(const ComplexMatrix &H) {
  const Eigen::Index n = H.rows();
  std::vector<Eigen::Index> parent(n);
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r)
      if (r != c && H(r, c) != Complex{})
        parent[find(r)] = find(c);

  std::vector<std::vector<Eigen::Index>> groups;
  std::vector<Eigen::Index> slot(n, -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<Eigen::Index>(groups.size());
      groups.emplace_back();
    }
    groups[slot[root]].push_back(i);
  }
  return groups;
}

} // namespace

ComplexMatrix expm_hermitian(const ComplexMatrix &H, double t) {
  if (H.rows() != H.cols())
    throw ValidationError("expm_hermitian: matrix is not square");
  ComplexMatrix result = ComplexMatrix::Zero(H.rows(), H.cols());
  for (const auto &group : nonzero_components(H)) {
    const auto k = static_cast<Eigen::Index>(group.size());
    if (k == 1) {
      const auto i = group.front();
      result(i, i) = std::exp(-kI * H(i, i).real() * t);
      continue;
    }
    ComplexMatrix block(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b)
        block(a, b) = H(group[a], group[b]);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(block);
    if (eig.info() != Eigen::Success)
      throw std::runtime_error("expm_hermitian: eigensolver failed");
    const ComplexVector phases =
        (-kI * t * eig.eigenvalues().cast<Complex>()).array().exp().matrix();
    const ComplexMatrix exp_block =
        eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b)
        result(group[a], group[b]) = exp_block(a, b);
  }
  return result;
}

double max_abs(const ComplexMatrix &A) {
  return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix &A, const ComplexMatrix &B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw ValidationError("max_abs_diff: shape mismatch");
  return max_abs(A - B);
}

double unitarity_deviation(const ComplexMatrix &U) {
  return max_abs(U.adjoint() * U - ComplexMatrix::Identity(U.cols(), U.cols()));
}

bool is_hermitian_exact(const ComplexMatrix &H) {
  if (H.rows() != H.cols())
    return false;
  for (Eigen::Index c = 0; c < H.cols(); ++c)
    for (Eigen::Index r = 0; r <= c; ++r)
      if (H(r, c) != std::conj(H(c, r)))
        return false;
  return true;
}

std::string format_double(double x) {
  if (x == 0.0)
    x = 0.0; // drop negative zero
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream &os, const ComplexMatrix &A) {
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
      if (c)
        os << ';';
      os << format_double(A(r, c).real()) << ',' << format_double(A(r, c).imag());
    }
    os << '\n';
  }
}

ComplexMatrix read_csv(std::istream &is) {
  std::vector<std::vector<Complex>> rows;
  std::string line;
  auto parse = [](std::string_view text) {
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
      throw ValidationError("read_csv: bad number '" + std::string(text) + "'");
    return v;
  };
  while (std::getline(is, line)) {
    if (line.empty())
      continue;
    std::vector<Complex> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ';')) {
      const auto comma = cell.find(',');
      if (comma == std::string::npos)
        throw ValidationError("read_csv: entry without ',' separator");
      std::string_view view(cell);
      row.emplace_back(parse(view.substr(0, comma)), parse(view.substr(comma + 1)));
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ValidationError("read_csv: ragged rows");
    rows.push_back(std::move(row));
  }
  ComplexMatrix A(static_cast<Eigen::Index>(rows.size()),
                  rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return A;
}

} // namespace ontca
