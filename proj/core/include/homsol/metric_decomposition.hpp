#pragma once

#include "homsol/algebra_tensor.hpp"
#include "homsol/check.hpp"

#include <string>
#include <vector>

namespace homsol {

/// Sizes of the k, h and n blocks. The basis of g is ordered k, h, n and
/// p = h + n.
struct BlockDims {
  int k = 0;
  int h = 0;
  int n = 0;

  int p() const { return h + n; }
  int g() const { return k + h + n; }
  int h_begin() const { return k; }
  int n_begin() const { return k + h; }

  friend bool operator==(const BlockDims&, const BlockDims&) = default;
};

enum class Block { K, H, N };

/// g = k + h + n with an inner product on p = h + n.
///
/// All curvature quantities are computed in an orthonormal working frame of
/// p obtained from the Cholesky factor of `ip`; the k block is left as is.
/// The frame is block diagonal because h and n must be orthogonal, so the
/// working basis still splits as k, h, n. `to_user` converts an operator on
/// p back to the caller's basis.
class MetricDecomposition {
 public:
  /// Validates every structural invariant and throws ValidationError listing
  /// all violations found. An empty `ip` means the identity.
  MetricDecomposition(AlgebraTensor bracket, BlockDims dims, Matrix ip = {},
                      const Tolerance& tol = {});

  /// The invariant checks run by the constructor, without throwing.
  static std::vector<Violation> violations(const AlgebraTensor& bracket, BlockDims dims,
                                           const Matrix& ip, const Tolerance& tol = {});

  const AlgebraTensor& bracket() const { return bracket_; }
  BlockDims dims() const { return dims_; }
  const Matrix& ip() const { return ip_; }
  const Tolerance& tolerance() const { return tol_; }

  /// Columns are the working orthonormal basis of p in user coordinates.
  const Matrix& frame() const { return frame_; }
  /// diag(I_k, frame): working basis of g in user coordinates.
  Matrix full_frame() const;
  /// The bracket in the working basis of g.
  const AlgebraTensor& working() const { return working_; }

  Matrix to_user(const Matrix& op_p) const;
  Matrix from_user(const Matrix& op_p) const;
  Vector vector_to_user(const Vector& x_p) const { return frame_ * x_p; }

  Block block_of(int index) const;

  /// [.,.]_p on p in the working frame (the k components are dropped).
  AlgebraTensor p_bracket() const;
  /// mu = [.,.] restricted to n, working frame.
  AlgebraTensor n_bracket() const;
  /// nu0 + nu1 + lambda2 + lambda0 on u = k + h, working frame.
  AlgebraTensor u_bracket() const;

  /// ad x restricted to the rows and columns of p, x given in working
  /// coordinates of g.
  Matrix ad_p(const Vector& x_g) const;
  /// ad x restricted to n.
  Matrix ad_n(const Vector& x_g) const;
  /// Embeds a working-frame vector of p into g.
  Vector embed_p(const Vector& x_p) const;

 private:
  AlgebraTensor bracket_;
  BlockDims dims_;
  Matrix ip_;
  Tolerance tol_;
  Matrix frame_;
  AlgebraTensor working_;
};

enum class OperatorRole { Ricci, MomentMap, Killing, Ch, EBeta, F };

std::string to_string(OperatorRole role);

/// A symmetric operator on p (or a block of it), in the working frame.
struct SymOperator {
  OperatorRole role = OperatorRole::Ricci;
  Matrix matrix;

  double asymmetry() const { return (matrix - matrix.transpose()).norm(); }
};

struct KillingData {
  /// tr(ad X_a ad X_b) over the working basis of g.
  Matrix gram;
  SymOperator p;
  Matrix k_block;
  Matrix kp_block;
  bool k_negative_definite = true;
  bool nondegenerate = false;
};

KillingData killing_operator(const MetricDecomposition& d);

struct MeanCurvature {
  /// Working-frame coordinates on p.
  Vector h;
  /// Norm of the n component of H (zero when H lies in h).
  double n_component = 0.0;
  /// max over Y in h of |<H,Y> - tr ad_eta Y|.
  double trace_eta_residual = 0.0;
  /// max over Z in k, Y in h of |<[Z,H],Y>|.
  double k_commutator = 0.0;
};

MeanCurvature mean_curvature(const MetricDecomposition& d);

struct RicciTerms {
  Matrix m;
  Matrix b_p;
  Matrix sym_ad_h;
  SymOperator ric;
  /// max over Z in k of ||[ad Z|_p, Ric]||.
  double k_invariance = 0.0;
};

/// Ric = M - 1/2 B_p - S(ad_p H) in the working frame.
RicciTerms ricci_terms(const MetricDecomposition& d);
SymOperator ricci_operator(const MetricDecomposition& d);

/// The eight bracket components, each on the full working index space of g.
struct BracketBlocks {
  AlgebraTensor lambda0, lambda1, eta, mu, nu0, nu1, nu2, lambda2;

  AlgebraTensor reassembled() const;
};

BracketBlocks block_decompose(const MetricDecomposition& d);

/// M assembled from M_lambda0, M_mu and the ad_eta corrections. Throws
/// PreconditionError when lambda1 != 0.
SymOperator mm_blocks(const MetricDecomposition& d);

struct LemmaDppReport {
  bool p_invariant = false;
  bool n_invariant = false;
  bool trace_equal = false;
  double trace_p = 0.0;
  double trace_n = 0.0;
  /// tr(B_p D_p), expected to vanish.
  double killing_trace = 0.0;
  std::vector<Check> checks;
};

/// `derivation` is a matrix on g in the working basis with D k in k. Throws
/// PreconditionError when it is not a derivation, does not preserve k, or
/// B(k, p) != 0.
LemmaDppReport check_lemma_Dpp(const MetricDecomposition& d, const Matrix& derivation);

}  // namespace homsol
