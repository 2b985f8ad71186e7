#pragma once

#include "homsol/algebra_tensor.hpp"

#include <functional>
#include <vector>

namespace homsol {

/// Frobenius-orthonormal basis of Der(mu) = { alpha : pi(alpha) mu = 0 }.
std::vector<Matrix> derivation_algebra(const AlgebraTensor& mu, const Tolerance& tol = {});

/// Derivations supported on the matrix entries (row, col) for which
/// `allowed(row, col)` holds; used for Der(g) with a vanishing k-block.
std::vector<Matrix> derivation_algebra(const AlgebraTensor& mu,
                                       const std::function<bool(int, int)>& allowed,
                                       const Tolerance& tol = {});

/// ||pi(d) mu||; zero iff d is a derivation.
double derivation_residual(const Matrix& d, const AlgebraTensor& mu);

bool is_derivation(const Matrix& d, const AlgebraTensor& mu, const Tolerance& tol = {});

/// Orthonormal basis of the nullspace of `a` (columns), via SVD.
Matrix nullspace(const Matrix& a, double rel_cutoff);

}  // namespace homsol
