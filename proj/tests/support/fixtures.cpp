#include "fixtures.hpp"

#include <limits>
#include <variant>

namespace homsol::fixture {

MetricDecomposition decomposition(const std::string& name) {
  const auto entry = io::catalog_entry(name);
  return io::validate(std::get<io::AlgebraDocument>(entry));
}

AlgebraTensor bracket(const std::string& name) { return decomposition(name).bracket(); }

double dist(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  return (a - b).norm();
}

Matrix diag(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v.asDiagonal();
}

}  // namespace homsol::fixture
