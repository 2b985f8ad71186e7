#include "homsol/derivations.hpp"

#include <algorithm>
#include <cmath>

namespace homsol {

Matrix nullspace(const Matrix& a, double rel_cutoff) {
  const int cols = static_cast<int>(a.cols());
  if (cols == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::Identity(cols, cols);
  // JacobiSVD rather than BDCSVD: the divide-and-conquer variant returned
  // vectors outside the nullspace on some ill-conditioned derivation systems.
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = rel_cutoff * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  int rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

std::vector<Matrix> derivation_algebra(const AlgebraTensor& mu,
                                       const std::function<bool(int, int)>& allowed,
                                       const Tolerance& tol) {
  const int n = mu.dim();
  std::vector<std::pair<int, int>> slots;
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      if (allowed(r, s)) slots.emplace_back(r, s);
  if (slots.empty()) return {};

  // Column for alpha = E_rs: the i<j components of pi(E_rs) mu.
  const int pairs = n * (n - 1) / 2;
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(pairs) * n, static_cast<Eigen::Index>(slots.size()));
  auto row = [n](int i, int j, int k) {
    // offset of pair (i, j), i < j, in lexicographic order
    const int p = i * n - i * (i + 1) / 2 + (j - i - 1);
    return static_cast<Eigen::Index>(p) * n + k;
  };
  for (int col = 0; col < static_cast<int>(slots.size()); ++col) {
    const auto [r, s] = slots[col];
    // E_rs e_i = delta_{si} e_r
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        a(row(i, j, r), col) += mu(i, j, s);
        for (int k = 0; k < n; ++k) {
          if (i == s) a(row(i, j, k), col) -= mu(r, j, k);
          if (j == s) a(row(i, j, k), col) -= mu(i, r, k);
        }
      }
  }
  const Matrix basis = nullspace(a, tol.rank);
  std::vector<Matrix> out;
  out.reserve(basis.cols());
  for (int b = 0; b < basis.cols(); ++b) {
    Matrix d = Matrix::Zero(n, n);
    for (int col = 0; col < static_cast<int>(slots.size()); ++col)
      d(slots[col].first, slots[col].second) = basis(col, b);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Matrix> derivation_algebra(const AlgebraTensor& mu, const Tolerance& tol) {
  return derivation_algebra(mu, [](int, int) { return true; }, tol);
}

double derivation_residual(const Matrix& d, const AlgebraTensor& mu) {
  return pi_action_norm(d, mu);
}

bool is_derivation(const Matrix& d, const AlgebraTensor& mu, const Tolerance& tol) {
  const double scale = std::max(1.0, mu.max_abs()) * std::max(1.0, d.norm());
  return tol.accepts(derivation_residual(d, mu), scale);
}

}  // namespace homsol
