#include "homsol/algebra_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace homsol {

namespace {

std::size_t idx(int n, int i, int j, int k) {
  return (static_cast<std::size_t>(i) * n + j) * n + k;
}

void require_same_dim(const AlgebraTensor& a, const AlgebraTensor& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw DimensionError(os.str());
  }
}

void require_square(const Matrix& m, int n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    std::ostringstream os;
    os << what << ": expected " << n << "x" << n << " matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionError(os.str());
  }
}

// Orthonormal basis for the column span of `a`.
Matrix column_span(const Matrix& a, double rel) {
  if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double cutoff = rel * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  int rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

AlgebraTensor::AlgebraTensor(int dim) : dim_(dim) {
  if (dim < 0) throw DimensionError("AlgebraTensor: negative dimension");
  rebuild_dense();
}

AlgebraTensor::AlgebraTensor(int dim, std::vector<StructureConstant> entries) : dim_(dim) {
  if (dim < 0) throw DimensionError("AlgebraTensor: negative dimension");
  for (const auto& e : entries) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= dim || e.j >= dim || e.k >= dim) {
      std::ostringstream os;
      os << "AlgebraTensor: index out of range in (" << e.i << "," << e.j << "," << e.k << ")";
      throw DimensionError(os.str());
    }
    if (e.i >= e.j) {
      std::ostringstream os;
      os << "AlgebraTensor: entries need i < j, got (" << e.i << "," << e.j << "," << e.k << ")";
      throw DimensionError(os.str());
    }
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  for (std::size_t t = 1; t < entries.size(); ++t) {
    const auto& a = entries[t - 1];
    const auto& b = entries[t];
    if (a.i == b.i && a.j == b.j && a.k == b.k) {
      std::ostringstream os;
      os << "AlgebraTensor: duplicate key (" << a.i << "," << a.j << "," << a.k << ")";
      throw DimensionError(os.str());
    }
  }
  std::erase_if(entries, [](const StructureConstant& e) { return e.c == 0.0; });
  entries_ = std::move(entries);
  rebuild_dense();
}

AlgebraTensor AlgebraTensor::from_dense(int dim, const std::vector<double>& dense) {
  if (dense.size() != static_cast<std::size_t>(dim) * dim * dim)
    throw DimensionError("AlgebraTensor::from_dense: wrong array size");
  std::vector<StructureConstant> entries;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        const double c = dense[idx(dim, i, j, k)];
        if (c != 0.0) entries.push_back({i, j, k, c});
      }
  return AlgebraTensor(dim, std::move(entries));
}

void AlgebraTensor::rebuild_dense() {
  dense_.assign(static_cast<std::size_t>(dim_) * dim_ * dim_, 0.0);
  for (const auto& e : entries_) {
    dense_[idx(dim_, e.i, e.j, e.k)] = e.c;
    dense_[idx(dim_, e.j, e.i, e.k)] = -e.c;
  }
}

double AlgebraTensor::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e.c));
  return m;
}

Vector AlgebraTensor::bracket(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw DimensionError("bracket: vector size mismatch");
  Vector out = Vector::Zero(dim_);
  for (const auto& e : entries_) out(e.k) += e.c * (x(e.i) * y(e.j) - x(e.j) * y(e.i));
  return out;
}

Matrix AlgebraTensor::ad(int i) const {
  Matrix a = Matrix::Zero(dim_, dim_);
  for (int j = 0; j < dim_; ++j)
    for (int k = 0; k < dim_; ++k) a(k, j) = (*this)(i, j, k);
  return a;
}

Matrix AlgebraTensor::ad(const Vector& x) const {
  if (x.size() != dim_) throw DimensionError("ad: vector size mismatch");
  Matrix a = Matrix::Zero(dim_, dim_);
  for (const auto& e : entries_) {
    a(e.k, e.j) += e.c * x(e.i);
    a(e.k, e.i) -= e.c * x(e.j);
  }
  return a;
}

AlgebraTensor AlgebraTensor::transformed(const Matrix& h) const {
  require_square(h, dim_, "transformed");
  const int n = dim_;
  const Matrix hinv = h.inverse();
  // Stage-wise contraction keeps this O(n^4).
  std::vector<double> t1(dense_.size(), 0.0), t2(dense_.size(), 0.0), t3(dense_.size(), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = dense_[idx(n, i, j, k)];
        if (v == 0.0) continue;
        for (int c = 0; c < n; ++c) t1[idx(n, i, j, c)] += h(c, k) * v;
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < n; ++c) {
        const double v = t1[idx(n, i, j, c)];
        if (v == 0.0) continue;
        for (int b = 0; b < n; ++b) t2[idx(n, i, b, c)] += hinv(j, b) * v;
      }
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const double v = t2[idx(n, i, b, c)];
        if (v == 0.0) continue;
        for (int a = 0; a < n; ++a) t3[idx(n, a, b, c)] += hinv(i, a) * v;
      }
  return from_dense(n, t3);
}

AlgebraTensor AlgebraTensor::restricted(std::span<const int> basis) const {
  const int m = static_cast<int>(basis.size());
  std::vector<StructureConstant> out;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        const double v = (*this)(basis[a], basis[b], basis[c]);
        if (v != 0.0) out.push_back({a, b, c, v});
      }
  return AlgebraTensor(m, std::move(out));
}

AlgebraTensor AlgebraTensor::operator+(const AlgebraTensor& other) const {
  require_same_dim(*this, other, "operator+");
  std::map<std::tuple<int, int, int>, double> acc;
  for (const auto& e : entries_) acc[{e.i, e.j, e.k}] += e.c;
  for (const auto& e : other.entries_) acc[{e.i, e.j, e.k}] += e.c;
  std::vector<StructureConstant> out;
  for (const auto& [key, c] : acc)
    if (c != 0.0) out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
  return AlgebraTensor(dim_, std::move(out));
}

AlgebraTensor AlgebraTensor::operator-(const AlgebraTensor& other) const {
  return *this + other * -1.0;
}

AlgebraTensor AlgebraTensor::operator*(double s) const {
  auto out = entries_;
  for (auto& e : out) e.c *= s;
  return AlgebraTensor(dim_, std::move(out));
}

double tensor_inner(const AlgebraTensor& mu, const AlgebraTensor& lambda) {
  require_same_dim(mu, lambda, "tensor_inner");
  double s = 0.0;
  for (const auto& e : mu.entries()) s += e.c * lambda(e.i, e.j, e.k);
  return 2.0 * s;
}

double tensor_norm_sq(const AlgebraTensor& mu) { return tensor_inner(mu, mu); }

namespace {

std::vector<double> pi_action_dense(const Matrix& alpha, const AlgebraTensor& mu) {
  const int n = mu.dim();
  require_square(alpha, n, "pi_action");
  const auto& c = mu.dense();
  std::vector<double> r(c.size(), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const double v = c[idx(n, i, j, l)];
        if (v == 0.0) continue;
        // alpha mu(e_i, e_j)
        for (int k = 0; k < n; ++k) r[idx(n, i, j, k)] += alpha(k, l) * v;
      }
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = c[idx(n, l, j, k)];
        if (v == 0.0) continue;
        // - mu(alpha e_i, e_j) - mu(e_j, alpha e_i) contributions
        for (int i = 0; i < n; ++i) {
          const double a = alpha(l, i);
          if (a == 0.0) continue;
          r[idx(n, i, j, k)] -= a * v;
          r[idx(n, j, i, k)] += a * v;
        }
      }
  return r;
}

}  // namespace

AlgebraTensor pi_action(const Matrix& alpha, const AlgebraTensor& mu) {
  return AlgebraTensor::from_dense(mu.dim(), pi_action_dense(alpha, mu));
}

double pi_action_norm(const Matrix& alpha, const AlgebraTensor& mu) {
  const auto r = pi_action_dense(alpha, mu);
  double s = 0.0;
  for (double v : r) s += v * v;
  return std::sqrt(s);
}

double jacobi_residual(const AlgebraTensor& mu) {
  const int n = mu.dim();
  const auto& c = mu.dense();
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) {
            s += c[idx(n, i, j, l)] * c[idx(n, l, k, m)];
            s += c[idx(n, j, k, l)] * c[idx(n, l, i, m)];
            s += c[idx(n, k, i, l)] * c[idx(n, l, j, m)];
          }
          total += s * s;
        }
  return std::sqrt(total);
}

std::optional<int> nilpotency_step(const AlgebraTensor& mu, const Tolerance& tol) {
  const double scale = mu.max_abs() * mu.max_abs();
  const double jac = jacobi_residual(mu);
  if (!tol.accepts(jac, scale)) {
    std::ostringstream os;
    os << "nilpotency_step: bracket violates the Jacobi identity (residual " << jac << ")";
    throw PreconditionError(os.str());
  }
  const int n = mu.dim();
  if (n == 0) return 0;
  Matrix current = Matrix::Identity(n, n);
  int step = 0;
  while (true) {
    Matrix next(n, n * current.cols());
    int col = 0;
    for (int i = 0; i < n; ++i) {
      const Matrix adi = mu.ad(i);
      for (int w = 0; w < current.cols(); ++w) next.col(col++) = adi * current.col(w);
    }
    Matrix span = column_span(next, tol.rank * std::max(1.0, mu.max_abs()));
    ++step;
    if (span.cols() == 0) return step;
    if (span.cols() >= current.cols()) return std::nullopt;
    current = std::move(span);
  }
}

Matrix moment_map(const AlgebraTensor& mu) {
  const double nsq = tensor_norm_sq(mu);
  if (mu.is_zero() || nsq == 0.0) throw PreconditionError("moment_map: undefined for mu = 0");
  return (4.0 / nsq) * mm_operator(mu);
}

Matrix mm_operator(const AlgebraTensor& bracket) {
  const int n = bracket.dim();
  const auto& c = bracket.dense();
  Matrix m = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      double first = 0.0, second = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          first += c[idx(n, a, i, j)] * c[idx(n, b, i, j)];
          second += c[idx(n, i, j, a)] * c[idx(n, i, j, b)];
        }
      m(a, b) = m(b, a) = -0.5 * first + 0.25 * second;
    }
  return m;
}

}  // namespace homsol
