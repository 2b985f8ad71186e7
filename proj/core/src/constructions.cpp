#include "homsol/constructions.hpp"

#include "homsol/derivations.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <tuple>
#include <numeric>
#include <sstream>

namespace homsol {

namespace {

// Columns form an ip-orthonormal basis, ip = L L^T and frame = L^{-T}.
Matrix orthonormal_frame(const Matrix& ip, int dim) {
  if (dim == 0) return Matrix(0, 0);
  if (ip.size() == 0) return Matrix::Identity(dim, dim);
  if (ip.rows() != dim || ip.cols() != dim) throw DimensionError("inner product has the wrong size");
  Eigen::LLT<Matrix> llt(sym(ip));
  if (llt.info() != Eigen::Success) throw ValidationError(std::vector<Violation>{{"ip-not-pd", "Cholesky factorization failed"}});
  const Matrix l = llt.matrixL();
  return l.transpose().triangularView<Eigen::Upper>().solve(Matrix::Identity(dim, dim));
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool is_normal(const Matrix& a, double tol) {
  return commutator(a, a.transpose()).norm() <= tol * std::max(1.0, a.squaredNorm());
}

// theta and the brackets moved to orthonormal bases of h and n.
struct WorkingData {
  int k = 0, h = 0, n = 0;
  Matrix frame_h, frame_n;
  AlgebraTensor nil;
  AlgebraTensor reductive;
  std::vector<Matrix> theta;
};

WorkingData to_working(const ConstructionData& data) {
  WorkingData w;
  w.n = data.nil.dim();
  w.k = data.dim_k;
  w.h = data.reductive.dim() - data.dim_k;
  if (w.h < 0) throw DimensionError("dim_k exceeds the dimension of u");
  if (static_cast<int>(data.theta.size()) != data.reductive.dim())
    throw DimensionError("theta needs one matrix per basis vector of u");
  for (const auto& t : data.theta)
    if (t.rows() != w.n || t.cols() != w.n) throw DimensionError("theta matrices must be dim(n) square");
  w.frame_n = orthonormal_frame(data.nil_ip, w.n);
  w.frame_h = orthonormal_frame(data.reductive_ip, w.h);
  const Matrix pu = block_diag(Matrix::Identity(w.k, w.k), w.frame_h);
  w.nil = w.n > 0 ? data.nil.transformed(w.frame_n.inverse()) : data.nil;
  w.reductive = data.reductive.dim() > 0 ? data.reductive.transformed(pu.inverse()) : data.reductive;
  const int u = data.reductive.dim();
  const Matrix fn_inv = w.n > 0 ? Matrix(w.frame_n.inverse()) : Matrix(0, 0);
  for (int a = 0; a < u; ++a) {
    Matrix t = Matrix::Zero(w.n, w.n);
    for (int b = 0; b < u; ++b) t += pu(b, a) * data.theta[b];
    w.theta.push_back(w.n > 0 ? Matrix(fn_inv * t * w.frame_n) : t);
  }
  return w;
}

Matrix theta_of(const WorkingData& w, const Vector& y) {
  Matrix t = Matrix::Zero(w.n, w.n);
  for (int a = 0; a < static_cast<int>(w.theta.size()); ++a) t += y(a) * w.theta[a];
  return t;
}

// H in working coordinates of u: <H, Y_a> = tr theta(Y_a), zero on k.
Vector mean_vector(const WorkingData& w) {
  Vector hv = Vector::Zero(w.k + w.h);
  for (int a = w.k; a < w.k + w.h; ++a) hv(a) = w.theta[a].trace();
  return hv;
}

Matrix c_theta(const WorkingData& w) {
  Matrix c = Matrix::Zero(w.h, w.h);
  for (int a = 0; a < w.h; ++a)
    for (int b = 0; b < w.h; ++b)
      c(a, b) = (sym(w.theta[w.k + a]) * sym(w.theta[w.k + b])).trace();
  return c;
}

Matrix fitted_d1(const ConstructionData& data, const WorkingData& w, const Tolerance& tol) {
  if (data.d1) {
    if (data.d1->rows() != w.n || data.d1->cols() != w.n) throw DimensionError("d1 must be dim(n) square");
    return w.n > 0 ? Matrix(w.frame_n.inverse() * *data.d1 * w.frame_n) : *data.d1;
  }
  if (w.n == 0) return Matrix(0, 0);
  if (w.nil.is_zero()) return -data.c * Matrix::Identity(w.n, w.n);
  return nilsoliton_fit(w.nil, data.c, tol).d1;
}

// Dimension of the centre and of the radical of the Killing form of u.
std::pair<int, int> centre_and_radical(const AlgebraTensor& u, const Tolerance& tol) {
  const int m = u.dim();
  if (m == 0) return {0, 0};
  std::vector<Matrix> ads;
  for (int a = 0; a < m; ++a) ads.push_back(u.ad(a));
  Matrix gram(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) gram(a, b) = ads[a].cwiseProduct(ads[b].transpose()).sum();
  // z is central iff sum_a z_a ad(e_a) = 0.
  Matrix stack(m * m, m);
  for (int a = 0; a < m; ++a) stack.col(a) = ads[a].reshaped();
  return {static_cast<int>(nullspace(stack, tol.rank).cols()),
          static_cast<int>(nullspace(gram, tol.rank).cols())};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

// Orthogonal basis of p whose first h-vector is H / |H| and whose n part is
// the identity; columns in working coordinates of p.
Matrix rotation_to_h(const Vector& h_dir, int h, int n) {
  Matrix q = Matrix::Identity(h + n, h + n);
  if (h == 0) return q;
  Matrix basis(h, h);
  basis.col(0) = h_dir.head(h).normalized();
  Eigen::HouseholderQR<Matrix> qr(basis.col(0));
  Matrix qh = qr.householderQ() * Matrix::Identity(h, h);
  if (qh.col(0).dot(basis.col(0)) < 0) qh.col(0) = -qh.col(0);
  q.topLeftCorner(h, h) = qh;
  return q;
}

struct Common {
  MeanCurvature mc;
  double h_norm = 0.0;
  Matrix f;  // S(ad_p H) + S(D_p) on p, working frame
  Matrix d1;
};

Common common_preconditions(const MetricDecomposition& d, const SolitonCertificate& cert) {
  const auto dims = d.dims();
  const auto& tol = d.tolerance();
  const auto& w = d.working();
  require(cert.d.rows() == dims.g() && cert.d.cols() == dims.g(),
          "certificate does not belong to this decomposition");
  require(cert.detected(), "certificate not detected");
  require(cert.tag == SolitonTag::Einstein || cert.tag == SolitonTag::AlgebraicSoliton,
          "certificate not algebraic");
  const Matrix sd = sym(cert.d);
  require(pi_action_norm(sd, w) <= tol.soliton * std::max(1.0, w.max_abs()) * std::max(1.0, sd.norm()),
          "certificate not algebraic: S(D) is not a derivation");
  const KillingData kd = killing_operator(d);
  require(dims.k == 0 || dims.p() == 0 || kd.kp_block.norm() <= tol.soliton * std::max(1.0, kd.gram.norm()),
          "B(k, p) != 0");
  Common c;
  c.mc = mean_curvature(d);
  c.h_norm = c.mc.h.norm();
  const int p = dims.p(), n = dims.n;
  c.f = sym(d.ad_p(d.embed_p(c.mc.h))) + sym(cert.d.bottomRightCorner(p, p));
  Matrix off = c.f;
  if (n > 0) off.bottomRightCorner(n, n).setZero();
  require(off.norm() <= tol.soliton * std::max(1.0, c.f.norm()),
          "S(ad H) + S(D) does not vanish outside the n block (residual " + num(off.norm()) + ")");
  c.d1 = n > 0 ? Matrix(c.f.bottomRightCorner(n, n)) : Matrix(0, 0);
  return c;
}

Check einstein_check(const MetricDecomposition& out, double c) {
  const auto& tol = out.tolerance();
  const int p = out.dims().p();
  const Matrix ric = ricci_operator(out).matrix;
  const double r = (ric - c * Matrix::Identity(p, p)).norm();
  return make_check("construction.einstein", "Ric = cI", r, tol.residual * std::max(1.0, std::abs(c)),
                    tol.accepts(r, std::abs(c)));
}

Check jacobi_check(const MetricDecomposition& out) {
  const auto& tol = out.tolerance();
  const double s = out.bracket().max_abs();
  const double r = jacobi_residual(out.bracket());
  return make_check("construction.jacobi", "Jacobi identity", r, tol.residual * std::max(1.0, s * s),
                    tol.accepts(r, s * s));
}

// Prefer the canonical certificate D = -ad H + diag(0, 0, D1) so that the
// battery and a later restriction see a consistent D1.
SolitonCertificate einstein_certificate(const MetricDecomposition& out, double c) {
  const SolitonCertificate fit = soliton_fit(out, c);
  if (fit.detected()) return fit;
  const auto dims = out.dims();
  return certify(out, c, Matrix::Zero(dims.g(), dims.g()), Matrix::Zero(dims.n, dims.n), false);
}

}  // namespace

std::vector<Check> construction_checks(const ConstructionData& data, const Tolerance& tol) {
  const WorkingData w = to_working(data);
  std::vector<Check> out;
  const double nil_scale = std::max(1.0, w.nil.max_abs());
  const int u = w.k + w.h;

  out.push_back(make_check("construction.c-negative", "c < 0", data.c, 0.0, data.c < 0.0));

  double der = 0.0;
  for (const auto& t : w.theta)
    der = std::max(der, derivation_residual(t, w.nil) / (nil_scale * std::max(1.0, t.norm())));
  out.push_back(make_check("construction.theta-derivation", "pi(theta(Y)) mu = 0", der, tol.residual,
                           der <= tol.residual));

  double hom = 0.0;
  for (int a = 0; a < u; ++a)
    for (int b = a + 1; b < u; ++b) {
      Vector e = Vector::Zero(u);
      for (int c = 0; c < u; ++c) e(c) = w.reductive(a, b, c);
      const Matrix r = theta_of(w, e) - commutator(w.theta[a], w.theta[b]);
      hom = std::max(hom, r.norm() / std::max(1.0, w.theta[a].norm() * w.theta[b].norm()));
    }
  out.push_back(make_check("construction.theta-homomorphism", "theta([Y,Y']) = [theta(Y), theta(Y')]",
                           hom, tol.residual, hom <= tol.residual));

  double c1 = 0.0;
  for (int a = 0; a < w.k; ++a) c1 = std::max(c1, sym(w.theta[a]).norm() / std::max(1.0, w.theta[a].norm()));
  out.push_back(make_check("construction.c1", "theta(Z)^T = -theta(Z)", c1, tol.residual, c1 <= tol.residual));

  Matrix c2m = Matrix::Zero(w.n, w.n);
  double c2scale = 1.0;
  for (int a = w.k; a < u; ++a) {
    c2m += commutator(w.theta[a], w.theta[a].transpose());
    c2scale = std::max(c2scale, w.theta[a].squaredNorm());
  }
  out.push_back(make_check("construction.c2", "sum [theta(Y_i), theta(Y_i)^T] = 0", c2m.norm(),
                           tol.residual * c2scale, tol.accepts(c2m.norm(), c2scale)));

  // (d2): u with its h inner product is a reductive decomposition of a
  // reductive Lie algebra.
  const auto dv = MetricDecomposition::violations(data.reductive, {w.k, w.h, 0}, data.reductive_ip, tol);
  {
    std::string detail;
    for (const auto& v : dv) detail += (detail.empty() ? "" : "; ") + v.code + ": " + v.detail;
    out.push_back(make_check("construction.d2-decomposition", "u = k + h is a metric reductive decomposition",
                             static_cast<double>(dv.size()), 0.0, dv.empty(), detail));
  }
  const auto [centre, radical] = centre_and_radical(w.reductive, tol);
  out.push_back(make_check("construction.d2-reductive", "radical of the Killing form of u = centre of u",
                           static_cast<double>(radical - centre), 0.0, radical == centre,
                           "centre " + std::to_string(centre) + ", radical " + std::to_string(radical)));

  if (dv.empty()) {
    const MetricDecomposition ud(data.reductive, {w.k, w.h, 0}, data.reductive_ip, tol);
    // Move Ric_u into the frame used for theta so C_theta can be compared.
    const Matrix ric_u = w.h > 0 ? Matrix(w.frame_h.inverse() * ud.to_user(ricci_operator(ud).matrix) * w.frame_h)
                                 : Matrix(0, 0);
    const Matrix r = ric_u - data.c * Matrix::Identity(w.h, w.h) - c_theta(w);
    const double scale = std::max(1.0, ric_u.norm());
    out.push_back(make_check("construction.c3", "Ric_u = cI + C_theta", r.norm(), tol.residual * scale,
                             tol.accepts(r.norm(), scale)));
  }

  if (w.n > 0) {
    const Matrix d1 = fitted_d1(data, w, tol);
    const Matrix ric_n = mm_operator(w.nil);
    const Matrix r = ric_n - data.c * Matrix::Identity(w.n, w.n) - d1;
    const double scale = std::max(1.0, ric_n.norm());
    out.push_back(make_check("construction.d1-nilsoliton", "Ric_n = cI + D1", r.norm(), tol.soliton * scale,
                             r.norm() <= tol.soliton * scale));
    const double dr = derivation_residual(d1, w.nil) / (nil_scale * std::max(1.0, d1.norm()));
    out.push_back(make_check("construction.d1-derivation", "D1 in Der(n)", dr, tol.residual, dr <= tol.residual));
  }
  return out;
}

ConstructionResult build_semidirect(const ConstructionData& data, const Tolerance& tol) {
  const auto checks = construction_checks(data, tol);
  std::vector<Violation> bad;
  for (const auto& c : checks)
    if (!c.pass) {
      std::string code = c.name.substr(c.name.find('.') + 1);
      bad.push_back({code, c.identity + ", residual " + num(c.value) + (c.note.empty() ? "" : " (" + c.note + ")")});
    }
  if (!bad.empty()) throw ValidationError(std::move(bad));

  const WorkingData w = to_working(data);
  const int u = w.k + w.h, g = u + w.n;

  // Assemble in the user bases; the n basis starts at index u.
  std::vector<StructureConstant> entries;
  for (const auto& e : data.reductive.entries()) entries.push_back(e);
  for (int a = 0; a < u; ++a)
    for (int b = 0; b < w.n; ++b)
      for (int c = 0; c < w.n; ++c) {
        const double v = data.theta[a](c, b);
        if (v != 0.0) entries.push_back({a, u + b, u + c, v});
      }
  for (const auto& e : data.nil.entries()) entries.push_back({u + e.i, u + e.j, u + e.k, e.c});
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
    return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k);
  });
  const Matrix ip_h = data.reductive_ip.size() ? data.reductive_ip : Matrix::Identity(w.h, w.h);
  const Matrix ip_n = data.nil_ip.size() ? data.nil_ip : Matrix::Identity(w.n, w.n);
  MetricDecomposition d(AlgebraTensor(g, std::move(entries)), {w.k, w.h, w.n}, block_diag(ip_h, ip_n), tol);

  // Prediction in the data frame: D = -diag(ad_u H, theta(H)) + diag(0, D1).
  const Vector hv = mean_vector(w);
  const Matrix ad_u_h = w.reductive.ad(hv);
  const Matrix theta_h = theta_of(w, hv);
  const Matrix d1 = fitted_d1(data, w, tol);
  Matrix dm = Matrix::Zero(g, g);
  dm.topLeftCorner(u, u) = -ad_u_h;
  if (w.n > 0) dm.bottomRightCorner(w.n, w.n) = d1 - theta_h;

  // Convert from the data frame to the working frame of d through user
  // coordinates.
  const Matrix data_frame = block_diag(Matrix::Identity(w.k, w.k), block_diag(w.frame_h, w.frame_n));
  const Matrix ff = d.full_frame();
  const Matrix dm_work = ff.inverse() * data_frame * dm * data_frame.inverse() * ff;

  const int p = w.h + w.n;
  const Matrix pred_p = data.c * Matrix::Identity(p, p) + sym(dm.bottomRightCorner(p, p));
  const Matrix frame_p = block_diag(w.frame_h, w.frame_n);
  ConstructionResult out{d, certify(d, data.c, dm_work, d1, true),
                         p > 0 ? Matrix(frame_p * pred_p * frame_p.inverse()) : Matrix(0, 0), checks};

  const Matrix ric_user = p > 0 ? d.to_user(ricci_operator(d).matrix) : Matrix(0, 0);
  const double r = (ric_user - out.predicted_ric).norm();
  const double scale = std::max(1.0, ric_user.norm());
  out.checks.push_back(make_check("construction.predicted-ricci", "Ric = cI + S(D_p)", r, tol.residual * scale,
                                  tol.accepts(r, scale)));

  // The tag follows the structure of the data rather than the fit.
  const double stol = tol.soliton;
  const double hscale = std::max(1.0, hv.norm());
  const bool sym_adh_zero = w.h == 0 || sym(ad_u_h).norm() <= stol * hscale;
  const bool einstein = sym_adh_zero && (w.n == 0 || (d1 - sym(theta_h)).norm() <= stol * std::max(1.0, d1.norm()));
  const bool algebraic = is_normal(ad_u_h, stol) && is_normal(theta_h, stol);
  if (out.certificate.detected()) {
    out.certificate.tag = einstein    ? SolitonTag::Einstein
                          : algebraic ? SolitonTag::AlgebraicSoliton
                                      : SolitonTag::SemiAlgebraicSoliton;
  }
  return out;
}

ConstructionResult einstein_from_nonunimodular(const MetricDecomposition& d, const SolitonCertificate& cert) {
  const auto dims = d.dims();
  const auto& tol = d.tolerance();
  const Common cm = common_preconditions(d, cert);
  require(cm.h_norm > tol.residual * std::max(1.0, d.working().max_abs()), "H = 0");
  require(cm.mc.n_component <= tol.residual * std::max(1.0, cm.h_norm), "H has a component in n");
  const double tr = cm.d1.size() ? cm.d1.trace() : 0.0;
  require(tr > tol.residual, "tr D1 <= 0");

  const int k = dims.k, p = dims.p(), g = dims.g();
  const Matrix q = rotation_to_h(cm.mc.h, dims.h, dims.n);
  const Matrix qg = block_diag(Matrix::Identity(k, k), q);
  const AlgebraTensor rotated = d.working().transformed(qg.transpose());

  // ad of the unit vector along H is F / sqrt(tr D1).
  Matrix fg = Matrix::Zero(g, g);
  fg.bottomRightCorner(p, p) = q.transpose() * cm.f * q;
  const Matrix a = fg / std::sqrt(tr);
  const int hi = k;
  std::vector<StructureConstant> entries;
  for (const auto& e : rotated.entries())
    if (e.i != hi && e.j != hi) entries.push_back(e);
  for (int j = 0; j < g; ++j) {
    if (j == hi) continue;
    for (int c = 0; c < g; ++c) {
      const double v = a(c, j);
      if (v == 0.0) continue;
      if (hi < j) entries.push_back({hi, j, c, v});
      else entries.push_back({j, hi, c, -v});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
    return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k);
  });
  const AlgebraTensor new_rot(g, std::move(entries));
  // Back to user coordinates: x_user = full_frame * qg * x_rot.
  const AlgebraTensor user = new_rot.transformed(d.full_frame() * qg);
  MetricDecomposition out(user, dims, d.ip(), tol);
  ConstructionResult res{out, einstein_certificate(out, cert.c), Matrix(), {}};
  res.predicted_ric = cert.c * Matrix::Identity(p, p);
  res.checks.push_back(jacobi_check(out));
  res.checks.push_back(einstein_check(out, cert.c));
  return res;
}

ConstructionResult restrict_to_unimodular_kernel(const MetricDecomposition& d, const SolitonCertificate& cert) {
  const auto dims = d.dims();
  const auto& tol = d.tolerance();
  const Common cm = common_preconditions(d, cert);
  require(cm.h_norm > tol.residual * std::max(1.0, d.working().max_abs()), "H = 0");
  require(cm.mc.n_component <= tol.residual * std::max(1.0, cm.h_norm), "H has a component in n");

  const int k = dims.k, p = dims.p(), g = dims.g();
  const Matrix q = rotation_to_h(cm.mc.h, dims.h, dims.n);
  const Matrix qg = block_diag(Matrix::Identity(k, k), q);
  const AlgebraTensor rotated = d.working().transformed(qg.transpose());
  std::vector<int> keep;
  for (int i = 0; i < g; ++i)
    if (i != k) keep.push_back(i);

  std::vector<Check> checks;
  // g0 must be an ideal orthogonal to H: no bracket has an H component.
  double hleak = 0.0;
  for (const auto& e : rotated.entries())
    if (e.k == k) hleak = std::max(hleak, std::abs(e.c));
  checks.push_back(make_check("construction.g0-ideal", "[g, g] orthogonal to H", hleak,
                              tol.residual * std::max(1.0, rotated.max_abs()),
                              tol.accepts(hleak, rotated.max_abs())));

  const AlgebraTensor g0 = rotated.restricted(keep);
  const Matrix sadh = sym(d.working().ad(d.embed_p(cm.mc.h)));
  const Matrix dprime_full = qg.transpose() * (sym(cert.d) + sadh) * qg;
  Matrix dprime(g - 1, g - 1);
  for (int a = 0; a < g - 1; ++a)
    for (int b = 0; b < g - 1; ++b) dprime(a, b) = dprime_full(keep[a], keep[b]);

  const double kblock = k > 0 ? dprime.topRows(k).norm() + dprime.leftCols(k).norm() : 0.0;
  checks.push_back(make_check("construction.d-prime-k", "D' vanishes on k", kblock,
                              tol.soliton * std::max(1.0, dprime.norm()),
                              kblock <= tol.soliton * std::max(1.0, dprime.norm())));

  const BlockDims dims0{k, dims.h - 1, dims.n};
  MetricDecomposition out(g0, dims0, Matrix(), tol);
  const double dres = derivation_residual(dprime, g0);
  const double dscale = std::max(1.0, g0.max_abs()) * std::max(1.0, dprime.norm());
  checks.push_back(make_check("construction.d-prime-derivation", "D' in Der(g0)", dres, tol.soliton * dscale,
                              dres <= tol.soliton * dscale));
  const Matrix d1 = dims.n > 0 ? Matrix(dprime.bottomRightCorner(dims.n, dims.n)) : Matrix(0, 0);
  ConstructionResult res{out, certify(out, cert.c, dprime, d1, false), Matrix(), std::move(checks)};
  const int p0 = p - 1;
  res.predicted_ric = cert.c * Matrix::Identity(p0, p0) + dprime.bottomRightCorner(p0, p0);
  const Matrix ric = ricci_operator(out).matrix;
  const double r = (ric - res.predicted_ric).norm();
  const double scale = std::max(1.0, ric.norm());
  res.checks.push_back(jacobi_check(out));
  res.checks.push_back(make_check("construction.restricted-ricci", "Ric_g0 = cI + D'_p0", r, tol.residual * scale,
                                  tol.accepts(r, scale)));
  return res;
}

ConstructionResult einstein_extension_unimodular(const MetricDecomposition& d, const SolitonCertificate& cert) {
  const auto dims = d.dims();
  const auto& tol = d.tolerance();
  const Common cm = common_preconditions(d, cert);
  require(cm.h_norm <= tol.residual * std::max(1.0, d.working().max_abs()), "g is not unimodular (H != 0)");
  const double tr = cm.d1.size() ? cm.d1.trace() : 0.0;
  require(tr > tol.residual, "tr D1 <= 0: alpha = 1/sqrt(tr D1) is undefined");

  const int k = dims.k, p = dims.p(), g = dims.g();
  // ad A in user coordinates of g.
  Matrix fg = Matrix::Zero(g, g);
  fg.bottomRightCorner(p, p) = cm.f;
  const Matrix ff = d.full_frame();
  const Matrix ad_a = ff * fg * ff.inverse() / std::sqrt(tr);

  auto shift = [k](int i) { return i < k ? i : i + 1; };
  std::vector<StructureConstant> entries;
  for (const auto& e : d.bracket().entries()) entries.push_back({shift(e.i), shift(e.j), shift(e.k), e.c});
  for (int j = 0; j < g; ++j)
    for (int c = 0; c < g; ++c) {
      const double v = ad_a(c, j);
      if (v != 0.0) entries.push_back({k, shift(j), shift(c), v});
    }
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
    return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k);
  });
  Matrix ip = Matrix::Identity(p + 1, p + 1);
  ip.bottomRightCorner(p, p) = d.ip();
  MetricDecomposition out(AlgebraTensor(g + 1, std::move(entries)), {k, dims.h + 1, dims.n}, ip, tol);
  ConstructionResult res{out, einstein_certificate(out, cert.c), cert.c * Matrix::Identity(p + 1, p + 1), {}};
  res.checks.push_back(jacobi_check(out));
  res.checks.push_back(einstein_check(out, cert.c));
  return res;
}

}  // namespace homsol
