#pragma once

#include "homsol/check.hpp"
#include "homsol/metric_decomposition.hpp"
#include "homsol/soliton.hpp"

#include <optional>
#include <vector>

namespace homsol {

/// Input of the semidirect construction g = u + n.
///
/// All matrices are in the user bases: n has basis X_1..X_n with inner
/// product `nil_ip`, u has basis Z_1..Z_k, Y_1..Y_h with inner product
/// `reductive_ip` on the h part only. theta[a] is the n x n matrix of the
/// action of the a-th basis vector of u.
struct ConstructionData {
  AlgebraTensor nil;
  Matrix nil_ip;
  double c = 0.0;
  /// Nilsoliton derivation of n; fitted with c fixed when absent.
  std::optional<Matrix> d1;

  AlgebraTensor reductive;
  int dim_k = 0;
  Matrix reductive_ip;

  std::vector<Matrix> theta;
};

/// Residuals of every hypothesis of the construction, each with its check.
std::vector<Check> construction_checks(const ConstructionData& data, const Tolerance& tol = {});

struct ConstructionResult {
  MetricDecomposition decomposition;
  SolitonCertificate certificate;
  /// Predicted Ricci operator in the user basis of p.
  Matrix predicted_ric;
  std::vector<Check> checks;
};

/// Assembles [Y, X] = theta(Y) X on u + n with h orthogonal to n and checks
/// the predicted Ricci operator against the direct one. Throws
/// ValidationError listing the failed hypotheses.
ConstructionResult build_semidirect(const ConstructionData& data, const Tolerance& tol = {});

/// Einstein metric obtained by replacing ad H with a multiple of
/// S(ad H) + D. The bracket on the orthogonal complement of H and the inner
/// product are kept. Throws PreconditionError when H = 0 or the certificate
/// is not algebraic.
ConstructionResult einstein_from_nonunimodular(const MetricDecomposition& d,
                                               const SolitonCertificate& cert);

/// The codimension one ideal g0 = H^perp with certificate
/// (c, D|g0 + S(ad H)|g0). The result is expressed in an orthonormal basis of
/// p0 whose n part is the working basis of n.
ConstructionResult restrict_to_unimodular_kernel(const MetricDecomposition& d,
                                                 const SolitonCertificate& cert);

/// R A + g with ad A = D / sqrt(tr D1), A a unit vector orthogonal to p and
/// placed first in h. Requires H = 0 and tr D1 > 0.
ConstructionResult einstein_extension_unimodular(const MetricDecomposition& d,
                                                 const SolitonCertificate& cert);

}  // namespace homsol
