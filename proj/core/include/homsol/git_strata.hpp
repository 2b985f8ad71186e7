#pragma once

#include "homsol/algebra_tensor.hpp"
#include "homsol/check.hpp"
#include "homsol/metric_decomposition.hpp"

#include <array>
#include <vector>

namespace homsol {

/// Diagonal of alpha_ij^k = E_kk - E_ii - E_jj. Requires i < j.
Vector weight(int i, int j, int k, int dim);

struct MinNormPoint {
  Vector point;
  /// Convex coefficients, one per input point.
  Vector coefficients;
  /// Indices of the points with positive coefficient.
  std::vector<int> active;
  int iterations = 0;
};

struct MinNormOptions {
  int max_iterations = 1000;
  /// Relative to the largest squared norm among the points.
  double tolerance = 1e-12;
};

/// The point of minimal norm in the convex hull of `points` (Wolfe's
/// active-set method). Throws ConvergenceError at the iteration cap.
MinNormPoint min_norm_point(const std::vector<Vector>& points, const MinNormOptions& opts = {});

struct StratumData {
  std::vector<std::array<int, 3>> support;
  /// Weights of the support, deduplicated; `beta` is their min-norm point.
  std::vector<Vector> weights;
  Vector beta;
  double beta_norm_sq = 0.0;
  /// min over the support of <beta, alpha_ij^k>.
  double min_pairing = 0.0;
  bool nice_position = false;
  /// Support cutoff actually used (absolute).
  double support_cutoff = 0.0;
};

/// beta_mu for mu != 0 (throws PreconditionError on mu = 0).
StratumData beta_mu(const AlgebraTensor& mu, const Tolerance& tol = {});

/// beta + ||beta||^2 I placed on the n block of p, zero on h.
Matrix e_beta(const MetricDecomposition& d, const StratumData& s);
/// The same operator on g (zero on k).
Matrix e_beta_g(const MetricDecomposition& d, const StratumData& s);

struct StrataReport {
  double adbeta_min_eigenvalue = 0.0;
  double betapos_min_eigenvalue = 0.0;
  double beta_norm = 0.0;
  double m_norm = 0.0;
  double spectra_gap = 0.0;
  double betaort_max = 0.0;
  double delta_value = 0.0;
  bool delta_derivation = false;
  std::vector<Check> checks;
};

/// The stratum inequalities for a nonzero nilpotent mu with its beta and
/// derivation basis. The equalities that need nice position are recorded as
/// informational when it fails.
StrataReport strata_properties(const AlgebraTensor& mu, const std::vector<Matrix>& der_basis,
                               const StratumData& stratum, const Tolerance& tol = {});

struct PieReport {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double eta = 0.0;
  double mu = 0.0;
  double total = 0.0;
  /// 2 sum_i <[beta, ad_eta Y_i], ad_eta Y_i>, the closed form of `eta`.
  double eta_closed_form = 0.0;
  std::vector<Check> checks;
};

/// <pi(E_beta)[.,.]_p, [.,.]_p> and its four block contributions. Throws
/// PreconditionError when mu = 0 or mu is not in nice position.
PieReport lemma_pie(const MetricDecomposition& d, const Tolerance& tol = {});

/// beta with entries sorted ascending, and the permutation used
/// (sorted(i) = beta(perm[i])).
std::pair<Vector, std::vector<int>> weyl_normalize(const Vector& beta);

/// ||beta_mu|| = ||m(mu)||. For a nilsoliton m(mu) is conjugate to the beta of
/// its stratum, so this detects a basis in which beta_mu is that beta; the
/// pairing criterion of `nice_position` holds in every basis.
bool beta_matches_moment_map(const AlgebraTensor& mu, const StratumData& s, const Tolerance& tol = {});

}  // namespace homsol
