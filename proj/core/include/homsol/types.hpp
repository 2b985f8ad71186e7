#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace homsol {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Numerical thresholds shared by every check in the library.
///
/// `residual` is relative: a residual r against a quantity of size s is
/// accepted when r <= residual * max(1, s).
struct Tolerance {
  double residual = 1e-9;
  /// Soliton fits are accepted when residual / max(1, ||Ric||) is below this.
  double soliton = 1e-6;
  /// Structure constants with |c| <= support * max|c| are treated as zero.
  double support = 1e-12;
  /// Singular values below rank * sigma_max count as zero in nullspaces.
  double rank = 1e-9;

  bool accepts(double r, double scale = 1.0) const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Raised when an operation is called outside the hypotheses it needs.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

struct Violation {
  std::string code;
  std::string detail;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

inline Matrix sym(const Matrix& a) { return 0.5 * (a + a.transpose()); }
inline Matrix skew(const Matrix& a) { return 0.5 * (a - a.transpose()); }
inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace homsol
