#pragma once

#include "homsol/check.hpp"
#include "homsol/git_strata.hpp"
#include "homsol/metric_decomposition.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace homsol {

enum class SolitonTag { Einstein, AlgebraicSoliton, SemiAlgebraicSoliton, NotDetected };

std::string to_string(SolitonTag tag);

/// Ric = cI + S(D_p) with D a derivation vanishing on k.
///
/// Matrices are in the working orthonormal basis of the decomposition they
/// were fitted on. `d` lives on g; `d1` is the nilsoliton derivation on n.
struct SolitonCertificate {
  double c = 0.0;
  Matrix d;
  Matrix d1;
  double residual = 0.0;
  double relative_residual = 0.0;
  SolitonTag tag = SolitonTag::NotDetected;
  /// D = -ad H + diag(0, 0, D1).
  bool canonical = false;
  bool solvsoliton_isometric = false;
  bool semisimple = false;

  bool detected() const { return tag != SolitonTag::NotDetected; }
  bool expanding() const { return c < 0.0; }
};

/// Certificate for a given (c, D): residual, tag and classifier flags. `dm` is
/// on g in the working basis and must vanish on k.
SolitonCertificate certify(const MetricDecomposition& d, double c, const Matrix& dm,
                           const Matrix& d1, bool canonical);

/// Least-squares fit of Ric(n) onto {cI + S(D) : D in Der(n)} for a bracket
/// given in an orthonormal basis. With `fixed_c` only D is fitted. `d` and
/// `d1` of the result both hold the fitted derivation.
SolitonCertificate nilsoliton_fit(const AlgebraTensor& mu, std::optional<double> fixed_c = {},
                                  const Tolerance& tol = {});

/// The canonical certificate when the structure allows it, otherwise the
/// least-squares fit over Der(g) with vanishing k block.
SolitonCertificate soliton_fit(const MetricDecomposition& d, std::optional<double> fixed_c = {});

struct MainTheoremReport {
  bool forward_applicable = false;
  std::string forward_note;
  /// Conditions (i) to (v).
  std::array<bool, 5> holds{};
  std::array<double, 5> residual{};
  Matrix c_h;
  Matrix ric_u;
  Matrix d1;
  /// -ad H + diag(0, 0, D1) on g.
  Matrix derivation;
  Matrix assembled_ric;
  std::vector<Check> checks;

  bool structure_holds() const { return holds[0] && holds[1] && holds[2] && holds[3]; }
};

MainTheoremReport main_theorem_battery(const MetricDecomposition& d, const SolitonCertificate& cert);

struct LeoReport {
  double lambda1_norm = 0.0;
  Matrix f;
  double t = 0.0;
  /// The same scalar from the norm and trace expression, for comparison.
  double t_trace_formula = 0.0;
  double f_residual = 0.0;
  double trace_identity = 0.0;
  bool abelian_branch = false;
  std::vector<Check> checks;
};

/// Consequences of an expanding certificate. Throws PreconditionError when
/// c >= 0 or the certificate was not detected.
LeoReport leo_consequences(const MetricDecomposition& d, const SolitonCertificate& cert);

struct AlgsolReport {
  std::array<bool, 7> holds{};
  std::array<double, 7> residual{};
  bool agree = false;
  std::vector<Check> checks;
};

/// The seven conditions equivalent to being an algebraic soliton. Throws
/// PreconditionError unless the certificate is expanding and detected.
AlgsolReport algsol_equivalences(const MetricDecomposition& d, const SolitonCertificate& cert);

struct ExtrasReport {
  bool skipped = false;
  std::string note;
  std::vector<Check> checks;
};

/// The extra identities for an expanding certificate with mu != 0 in nice
/// position; otherwise returns a skipped report.
ExtrasReport extras_check(const MetricDecomposition& d, const SolitonCertificate& cert);

/// sum_i [A_i, A_i^T] for A_i = ad Y_i|_n over the working basis of h.
Matrix normality_defect(const MetricDecomposition& d);

/// <C Y, Y'> = tr(S(ad Y|_n) S(ad Y'|_n)) on h.
Matrix c_h_operator(const MetricDecomposition& d);

}  // namespace homsol
