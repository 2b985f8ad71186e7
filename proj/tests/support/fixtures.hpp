#pragma once

#include "homsol/io/catalog.hpp"
#include "homsol/metric_decomposition.hpp"

#include <string>

namespace homsol::fixture {

/// A catalog algebra entry as a validated decomposition.
MetricDecomposition decomposition(const std::string& name);
/// The n bracket of a catalog algebra in its own (user) basis.
AlgebraTensor bracket(const std::string& name);

/// Frobenius distance; also compares shapes.
double dist(const Matrix& a, const Matrix& b);
Matrix diag(std::initializer_list<double> values);

}  // namespace homsol::fixture
