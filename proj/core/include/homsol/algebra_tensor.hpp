#pragma once

#include "homsol/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace homsol {

/// mu(e_i, e_j) has component c along e_k. Canonical entries have i < j.
struct StructureConstant {
  int i = 0;
  int j = 0;
  int k = 0;
  double c = 0.0;

  friend bool operator==(const StructureConstant&, const StructureConstant&) = default;
};

/// A skew-symmetric bilinear map mu : R^n x R^n -> R^n on the canonical basis.
///
/// Entries are kept sorted by (i, j, k) with i < j and no zero coefficients;
/// skew-symmetry is implicit. A dense fully-skew copy is cached for the
/// contractions, so the object is immutable once built.
class AlgebraTensor {
 public:
  AlgebraTensor() = default;
  explicit AlgebraTensor(int dim);
  /// Throws DimensionError on out-of-range indices, i >= j, or duplicate keys.
  AlgebraTensor(int dim, std::vector<StructureConstant> entries);

  /// Builds from a dense dim^3 array indexed (i*dim + j)*dim + k. Only the
  /// i < j half is read.
  static AlgebraTensor from_dense(int dim, const std::vector<double>& dense);

  int dim() const { return dim_; }
  const std::vector<StructureConstant>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  double max_abs() const;

  /// Coefficient of e_k in mu(e_i, e_j), for any ordering of i and j.
  double operator()(int i, int j, int k) const {
    return dense_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
  }
  const std::vector<double>& dense() const { return dense_; }

  Vector bracket(const Vector& x, const Vector& y) const;
  /// Matrix of ad e_i = mu(e_i, .).
  Matrix ad(int i) const;
  Matrix ad(const Vector& x) const;

  /// h.mu = h mu(h^{-1} ., h^{-1} .).
  AlgebraTensor transformed(const Matrix& h) const;
  /// The bracket mu(e_a, e_b) projected onto span{e_c : c in basis}, with
  /// indices renumbered by position in `basis`.
  AlgebraTensor restricted(std::span<const int> basis) const;
  /// Keeps only the structure constants accepted by `keep(i, j, k)`.
  template <class Pred>
  AlgebraTensor filtered(Pred keep) const {
    std::vector<StructureConstant> out;
    for (const auto& e : entries_)
      if (keep(e.i, e.j, e.k)) out.push_back(e);
    return AlgebraTensor(dim_, std::move(out));
  }

  AlgebraTensor operator+(const AlgebraTensor& other) const;
  AlgebraTensor operator-(const AlgebraTensor& other) const;
  AlgebraTensor operator*(double s) const;

 private:
  void rebuild_dense();

  int dim_ = 0;
  std::vector<StructureConstant> entries_;
  std::vector<double> dense_;
};

/// <mu, lambda> summed over ALL ordered pairs (i, j): 2 sum_{i<j,k} mu_ij^k lambda_ij^k.
double tensor_inner(const AlgebraTensor& mu, const AlgebraTensor& lambda);
double tensor_norm_sq(const AlgebraTensor& mu);

/// pi(alpha) mu = alpha mu(.,.) - mu(alpha ., .) - mu(., alpha .).
AlgebraTensor pi_action(const Matrix& alpha, const AlgebraTensor& mu);

/// ||pi(alpha) mu|| without materializing a sparse tensor.
double pi_action_norm(const Matrix& alpha, const AlgebraTensor& mu);

/// Euclidean norm of the Jacobiator over all triples i < j < k.
double jacobi_residual(const AlgebraTensor& mu);

/// Number of steps k with C^{k+1}(g) = 0 in the lower central series, or
/// nullopt if the series stabilizes at a nonzero subspace. Throws
/// PreconditionError when mu violates the Jacobi identity.
std::optional<int> nilpotency_step(const AlgebraTensor& mu, const Tolerance& tol = {});

/// m(mu) with <m(mu), alpha> = <pi(alpha) mu, mu> / ||mu||^2. Throws on mu = 0.
Matrix moment_map(const AlgebraTensor& mu);

/// The symmetric operator M with
///   <MX,Y> = -1/2 sum <[X,e_i],e_j><[Y,e_i],e_j> + 1/4 sum <[e_i,e_j],X><[e_i,e_j],Y>.
Matrix mm_operator(const AlgebraTensor& bracket);

}  // namespace homsol
