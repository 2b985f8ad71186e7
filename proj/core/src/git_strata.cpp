#include "homsol/git_strata.hpp"

#include "homsol/derivations.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace homsol {

Vector weight(int i, int j, int k, int dim) {
  if (i < 0 || j < 0 || k < 0 || i >= dim || j >= dim || k >= dim || i >= j) {
    std::ostringstream os;
    os << "weight: invalid index triple (" << i << "," << j << "," << k << ") in dim " << dim;
    throw DimensionError(os.str());
  }
  Vector w = Vector::Zero(dim);
  w(k) += 1.0;
  w(i) -= 1.0;
  w(j) -= 1.0;
  return w;
}

namespace {

// Coefficients of the point of minimal norm in the affine hull of the columns
// of q (they sum to 1).
Vector affine_minimizer(const Matrix& q) {
  const int s = static_cast<int>(q.cols());
  Matrix kkt = Matrix::Zero(s + 1, s + 1);
  kkt.topLeftCorner(s, s) = q.transpose() * q;
  kkt.topRightCorner(s, 1).setOnes();
  kkt.bottomLeftCorner(1, s).setOnes();
  Vector rhs = Vector::Zero(s + 1);
  rhs(s) = 1.0;
  Vector sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  Vector w = sol.head(s);
  return w / w.sum();
}

}  // namespace

MinNormPoint min_norm_point(const std::vector<Vector>& points, const MinNormOptions& opts) {
  if (points.empty()) throw PreconditionError("min_norm_point: empty point set");
  const int m = static_cast<int>(points.size());
  const int dim = static_cast<int>(points.front().size());
  for (const auto& p : points)
    if (p.size() != dim) throw DimensionError("min_norm_point: points of different dimension");

  double scale = 0.0;
  int start = 0;
  for (int i = 0; i < m; ++i) {
    const double nsq = points[i].squaredNorm();
    scale = std::max(scale, nsq);
    if (nsq < points[start].squaredNorm()) start = i;
  }
  scale = std::max(scale, 1e-300);
  const double eps = opts.tolerance * scale;
  const double weight_eps = 1e-14;

  std::vector<int> active{start};
  Vector lambda = Vector::Ones(1);
  Vector x = points[start];
  int iterations = 0;

  auto active_matrix = [&]() {
    Matrix q(dim, static_cast<Eigen::Index>(active.size()));
    for (std::size_t a = 0; a < active.size(); ++a) q.col(a) = points[active[a]];
    return q;
  };

  while (true) {
    if (++iterations > opts.max_iterations)
      throw ConvergenceError("min_norm_point: iteration cap reached");
    int best = -1;
    double best_val = 0.0;
    for (int i = 0; i < m; ++i) {
      const double v = x.dot(points[i]);
      if (best < 0 || v < best_val) {
        best = i;
        best_val = v;
      }
    }
    if (best_val >= x.squaredNorm() - eps) break;
    if (std::find(active.begin(), active.end(), best) != active.end()) break;
    active.push_back(best);
    lambda.conservativeResize(lambda.size() + 1);
    lambda(lambda.size() - 1) = 0.0;

    while (true) {
      if (++iterations > opts.max_iterations)
        throw ConvergenceError("min_norm_point: iteration cap reached in minor cycle");
      const Vector w = affine_minimizer(active_matrix());
      if ((w.array() > weight_eps).all()) {
        lambda = w;
        break;
      }
      // Step from lambda towards w until the first coefficient hits zero.
      double theta = 1.0;
      int hit = -1;
      for (int a = 0; a < w.size(); ++a) {
        if (w(a) > weight_eps) continue;
        const double denom = lambda(a) - w(a);
        const double t = denom > 0.0 ? lambda(a) / denom : 0.0;
        if (hit < 0 || t < theta) {
          theta = t;
          hit = a;
        }
      }
      lambda = (1.0 - theta) * lambda + theta * w;
      lambda(hit) = 0.0;
      std::vector<int> keep_idx;
      std::vector<double> keep_w;
      for (int a = 0; a < lambda.size(); ++a)
        if (lambda(a) > weight_eps) {
          keep_idx.push_back(active[a]);
          keep_w.push_back(lambda(a));
        }
      active = std::move(keep_idx);
      lambda = Eigen::Map<Vector>(keep_w.data(), static_cast<Eigen::Index>(keep_w.size()));
      lambda /= lambda.sum();
    }
    x = active_matrix() * lambda;
  }

  MinNormPoint out;
  out.point = x;
  out.coefficients = Vector::Zero(m);
  for (std::size_t a = 0; a < active.size(); ++a) out.coefficients(active[a]) = lambda(a);
  out.active = active;
  std::sort(out.active.begin(), out.active.end());
  out.iterations = iterations;
  return out;
}

StratumData beta_mu(const AlgebraTensor& mu, const Tolerance& tol) {
  if (mu.is_zero()) throw PreconditionError("beta_mu: beta is undefined for mu = 0");
  const int n = mu.dim();
  StratumData s;
  s.support_cutoff = tol.support * mu.max_abs();
  for (const auto& e : mu.entries()) {
    if (std::abs(e.c) <= s.support_cutoff) continue;
    s.support.push_back({e.i, e.j, e.k});
    Vector w = weight(e.i, e.j, e.k, n);
    const bool seen = std::any_of(s.weights.begin(), s.weights.end(),
                                  [&](const Vector& v) { return v == w; });
    if (!seen) s.weights.push_back(std::move(w));
  }
  const MinNormPoint mnp = min_norm_point(s.weights);
  s.beta = mnp.point;
  s.beta_norm_sq = s.beta.squaredNorm();
  s.min_pairing = s.beta.dot(s.weights.front());
  for (const auto& w : s.weights) s.min_pairing = std::min(s.min_pairing, s.beta.dot(w));
  s.nice_position = std::abs(s.min_pairing - s.beta_norm_sq) <= 1e-9 * std::max(1.0, s.beta_norm_sq);
  return s;
}

Matrix e_beta(const MetricDecomposition& d, const StratumData& s) {
  const auto dims = d.dims();
  if (s.beta.size() != dims.n) throw DimensionError("e_beta: beta does not live on n");
  Matrix e = Matrix::Zero(dims.p(), dims.p());
  Vector diag = s.beta.array() + s.beta_norm_sq;
  e.bottomRightCorner(dims.n, dims.n) = diag.asDiagonal();
  return e;
}

Matrix e_beta_g(const MetricDecomposition& d, const StratumData& s) {
  const auto dims = d.dims();
  Matrix e = Matrix::Zero(dims.g(), dims.g());
  e.bottomRightCorner(dims.p(), dims.p()) = e_beta(d, s);
  return e;
}

StrataReport strata_properties(const AlgebraTensor& mu, const std::vector<Matrix>& der_basis,
                               const StratumData& st, const Tolerance& tol) {
  if (mu.is_zero()) throw PreconditionError("strata_properties: mu = 0");
  const int n = mu.dim();
  const Matrix beta = st.beta.asDiagonal();
  const double mu_sq = tensor_norm_sq(mu);
  StrataReport r;

  // (adbeta) as positive semidefiniteness of the quadratic form on Der(mu).
  const int nd = static_cast<int>(der_basis.size());
  if (nd > 0) {
    Matrix q(nd, nd);
    for (int a = 0; a < nd; ++a)
      for (int b = 0; b < nd; ++b)
        q(a, b) = commutator(beta, der_basis[a]).cwiseProduct(der_basis[b]).sum();
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym(q));
    r.adbeta_min_eigenvalue = es.eigenvalues().minCoeff();
  }
  const double scale_beta = std::max(1.0, st.beta.norm());
  const bool adbeta_ok = r.adbeta_min_eigenvalue >= -tol.residual * scale_beta;
  Check adbeta = make_check("strata.adbeta", "<[beta,D],D> >= 0 for D in Der(mu)",
                            r.adbeta_min_eigenvalue, tol.residual, adbeta_ok);
  if (!st.nice_position) {
    adbeta.informational = true;
    adbeta.note = "beta_mu is only the stratum label in nice position";
  }
  r.checks.push_back(adbeta);

  r.betapos_min_eigenvalue = st.beta.minCoeff() + st.beta_norm_sq;
  r.checks.push_back(make_check("strata.betapos", "beta + ||beta||^2 I > 0",
                                r.betapos_min_eigenvalue, 0.0, r.betapos_min_eigenvalue > 0.0));

  const Matrix m = moment_map(mu);
  r.beta_norm = st.beta.norm();
  r.m_norm = m.norm();
  Eigen::SelfAdjointEigenSolver<Matrix> em(sym(m));
  Vector spec_m = em.eigenvalues();
  Vector spec_b = st.beta;
  std::sort(spec_m.data(), spec_m.data() + n);
  std::sort(spec_b.data(), spec_b.data() + n);
  r.spectra_gap = (spec_m - spec_b).norm();
  const double bmu_tol = 1e-8 * std::max(1.0, r.m_norm);
  r.checks.push_back(make_check("strata.bmu", "||beta|| <= ||m(mu)||", r.beta_norm - r.m_norm,
                                bmu_tol, r.beta_norm <= r.m_norm + bmu_tol));
  // Equality in the norm bound should track equality of sorted spectra. The
  // two sides are square-root sensitive, hence the looser threshold.
  const bool norm_eq = std::abs(r.m_norm - r.beta_norm) <= bmu_tol;
  const bool spec_eq = r.spectra_gap <= 1e-6 * std::max(1.0, r.m_norm);
  r.checks.push_back(make_check("strata.bmu-equality",
                                "||beta|| = ||m(mu)|| iff m(mu) conjugate to beta",
                                std::abs(r.m_norm - r.beta_norm), bmu_tol, norm_eq == spec_eq));

  for (const auto& dmat : der_basis)
    r.betaort_max = std::max(r.betaort_max, std::abs((beta * dmat).trace()));
  Check betaort = make_check("strata.betaort", "tr(beta D) = 0 for D in Der(mu)", r.betaort_max,
                             tol.residual, tol.accepts(r.betaort_max, scale_beta));
  if (!st.nice_position) {
    betaort.informational = true;
    betaort.note = "requires nice position";
  }
  r.checks.push_back(betaort);

  const Matrix shifted = beta + st.beta_norm_sq * Matrix::Identity(n, n);
  r.delta_value = tensor_inner(pi_action(shifted, mu), mu);
  r.delta_derivation = is_derivation(shifted, mu, tol);
  Check delta = make_check("strata.delta", "<pi(beta + ||beta||^2 I) mu, mu> >= 0", r.delta_value,
                           tol.residual, r.delta_value >= -tol.residual * std::max(1.0, mu_sq));
  Check delta_eq = make_check("strata.delta-equality",
                              "equality in delta iff beta + ||beta||^2 I in Der(mu)",
                              std::abs(r.delta_value), tol.residual,
                              tol.accepts(std::abs(r.delta_value), mu_sq) == r.delta_derivation);
  if (!st.nice_position) {
    delta.informational = delta_eq.informational = true;
    delta.note = delta_eq.note = "requires nice position";
  }
  r.checks.push_back(delta);
  r.checks.push_back(delta_eq);
  return r;
}

PieReport lemma_pie(const MetricDecomposition& d, const Tolerance& tol) {
  const auto dims = d.dims();
  const AlgebraTensor mu = d.n_bracket();
  if (mu.is_zero()) throw PreconditionError("lemma_pie: requires mu != 0");
  const StratumData st = beta_mu(mu, tol);
  if (!st.nice_position) throw PreconditionError("lemma_pie: mu is not in nice position");

  const AlgebraTensor pb = d.p_bracket();
  auto in_h = [&](int i) { return i < dims.h; };
  const AlgebraTensor l0 = pb.filtered([&](int i, int j, int k) { return in_h(i) && in_h(j) && in_h(k); });
  const AlgebraTensor l1 = pb.filtered([&](int i, int j, int k) { return in_h(i) && in_h(j) && !in_h(k); });
  const AlgebraTensor eta = pb.filtered([&](int i, int j, int) { return in_h(i) && !in_h(j); });
  const AlgebraTensor mup = pb.filtered([&](int i, int, int) { return !in_h(i); });

  const Matrix e = e_beta(d, st);
  PieReport r;
  r.lambda0 = tensor_inner(pi_action(e, l0), l0);
  r.lambda1 = tensor_inner(pi_action(e, l1), l1);
  r.eta = tensor_inner(pi_action(e, eta), eta);
  r.mu = tensor_inner(pi_action(e, mup), mup);
  r.total = tensor_inner(pi_action(e, pb), pb);

  const Matrix beta = st.beta.asDiagonal();
  for (int i = 0; i < dims.h; ++i) {
    Vector y = Vector::Zero(dims.g());
    y(dims.k + i) = 1.0;
    const Matrix a = d.ad_n(y);
    r.eta_closed_form += 2.0 * commutator(beta, a).cwiseProduct(a).sum();
  }

  const double scale = std::max(1.0, tensor_norm_sq(pb));
  const double t = tol.residual;
  auto nonneg = [&](double v) { return v >= -t * scale; };
  r.checks.push_back(make_check("pie.total", "<pi(E_beta)[.,.]_p, [.,.]_p> >= 0", r.total, t, nonneg(r.total)));
  r.checks.push_back(make_check("pie.lambda0", "<pi(E_beta) lambda0, lambda0> = 0", std::abs(r.lambda0), t,
                                tol.accepts(std::abs(r.lambda0), scale)));
  r.checks.push_back(make_check("pie.lambda1", "<pi(E_beta) lambda1, lambda1> >= 0", r.lambda1, t, nonneg(r.lambda1)));
  r.checks.push_back(make_check("pie.eta", "<pi(E_beta) eta, eta> >= 0", r.eta, t, nonneg(r.eta)));
  r.checks.push_back(make_check("pie.eta-closed-form",
                                "<pi(E_beta) eta, eta> = 2 sum <[beta, ad_eta Y_i], ad_eta Y_i>",
                                std::abs(r.eta - r.eta_closed_form), t,
                                tol.accepts(std::abs(r.eta - r.eta_closed_form), scale)));
  r.checks.push_back(make_check("pie.mu", "<pi(E_beta) mu, mu> >= 0", r.mu, t, nonneg(r.mu)));
  const double split = std::abs(r.total - (r.lambda0 + r.lambda1 + r.eta + r.mu));
  r.checks.push_back(make_check("pie.orthogonal-split", "total = sum of the four block terms", split, t,
                                tol.accepts(split, scale)));
  return r;
}

bool beta_matches_moment_map(const AlgebraTensor& mu, const StratumData& s, const Tolerance& tol) {
  if (mu.is_zero()) return false;
  const double gap = std::abs(moment_map(mu).norm() - std::sqrt(s.beta_norm_sq));
  return gap <= std::sqrt(tol.residual) * std::max(1.0, std::sqrt(s.beta_norm_sq));
}

std::pair<Vector, std::vector<int>> weyl_normalize(const Vector& beta) {
  std::vector<int> perm(beta.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return beta(a) < beta(b); });
  Vector sorted(beta.size());
  for (int i = 0; i < beta.size(); ++i) sorted(i) = beta(perm[i]);
  return {sorted, perm};
}

}  // namespace homsol
