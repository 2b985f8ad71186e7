#include "homsol/metric_decomposition.hpp"

#include "homsol/derivations.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace homsol {

namespace {

Block classify(int index, const BlockDims& d) {
  if (index < d.k) return Block::K;
  if (index < d.k + d.h) return Block::H;
  return Block::N;
}

std::string triple(int i, int j, int k, double c) {
  std::ostringstream os;
  os << "(" << i << "," << j << "," << k << ") c=" << c;
  return os.str();
}

std::vector<int> index_range(int begin, int count) {
  std::vector<int> v(count);
  std::iota(v.begin(), v.end(), begin);
  return v;
}

// Which of the eight bracket components an entry (i<j, k) belongs to, or an
// empty string with `violation` set when the declared splitting is broken.
enum class Slot { Nu0, Nu1, Nu2, Lambda2, Lambda0, Lambda1, Eta, Mu, Bad };

Slot slot_of(Block bi, Block bj, Block bk, std::string* violation) {
  using B = Block;
  if (bi == B::K && bj == B::K) {
    if (bk == B::K) return Slot::Nu0;
    if (violation) *violation = "k-not-subalgebra";
    return Slot::Bad;
  }
  if (bi == B::K && bj == B::H) {
    if (bk == B::H) return Slot::Nu1;
    if (violation) *violation = "k-h-not-invariant";
    return Slot::Bad;
  }
  if (bi == B::H && bj == B::H) {
    if (bk == B::K) return Slot::Lambda2;
    if (bk == B::H) return Slot::Lambda0;
    return Slot::Lambda1;
  }
  // Remaining pairs involve n; n is an ideal so the value must stay in n.
  if (bk == B::N) {
    if (bi == B::K) return Slot::Nu2;
    if (bi == B::H) return Slot::Eta;
    return Slot::Mu;
  }
  if (violation) *violation = "n-not-ideal";
  return Slot::Bad;
}

Matrix identity_if_empty(const Matrix& ip, int p) {
  if (ip.size() == 0) return Matrix::Identity(p, p);
  return ip;
}

}  // namespace

std::vector<Violation> MetricDecomposition::violations(const AlgebraTensor& bracket,
                                                       BlockDims dims, const Matrix& ip_in,
                                                       const Tolerance& tol) {
  std::vector<Violation> out;
  if (dims.k < 0 || dims.h < 0 || dims.n < 0 || bracket.dim() != dims.g()) {
    std::ostringstream os;
    os << "bracket dim " << bracket.dim() << " != dim_k + dim_h + dim_n = " << dims.g();
    out.push_back({"dim-mismatch", os.str()});
    return out;
  }
  const int p = dims.p();
  const Matrix ip = identity_if_empty(ip_in, p);
  if (ip.rows() != p || ip.cols() != p) {
    std::ostringstream os;
    os << "ip is " << ip.rows() << "x" << ip.cols() << ", expected " << p << "x" << p;
    out.push_back({"dim-mismatch", os.str()});
    return out;
  }

  bool ip_ok = true;
  if (p > 0) {
    const double asym = (ip - ip.transpose()).cwiseAbs().maxCoeff();
    if (!tol.accepts(asym, ip.cwiseAbs().maxCoeff())) {
      std::ostringstream os;
      os << "max |ip - ip^T| = " << asym;
      out.push_back({"ip-not-symmetric", os.str()});
      ip_ok = false;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym(ip));
    const double lo = es.eigenvalues().minCoeff();
    if (!(lo > 0.0)) {
      std::ostringstream os;
      os << "smallest eigenvalue " << lo;
      out.push_back({"ip-not-pd", os.str()});
      ip_ok = false;
    }
    if (dims.h > 0 && dims.n > 0) {
      const double cross = ip.block(0, dims.h, dims.h, dims.n).cwiseAbs().maxCoeff();
      if (!tol.accepts(cross, ip.cwiseAbs().maxCoeff())) {
        std::ostringstream os;
        os << "max |<h,n>| = " << cross;
        out.push_back({"h-n-not-orthogonal", os.str()});
      }
    }
  }

  const double scale = bracket.max_abs();
  const double jac = jacobi_residual(bracket);
  const bool jacobi_ok = tol.accepts(jac, scale * scale);
  if (!jacobi_ok) {
    std::ostringstream os;
    os << "Jacobi residual " << jac;
    out.push_back({"jacobi", os.str()});
  }

  const double cutoff = tol.support * scale;
  for (const auto& e : bracket.entries()) {
    if (std::abs(e.c) <= cutoff) continue;
    std::string code;
    if (slot_of(classify(e.i, dims), classify(e.j, dims), classify(e.k, dims), &code) ==
        Slot::Bad)
      out.push_back({code, triple(e.i, e.j, e.k, e.c)});
  }

  if (jacobi_ok && dims.n > 0) {
    const auto n_idx = index_range(dims.n_begin(), dims.n);
    const AlgebraTensor mu = bracket.restricted(n_idx);
    if (!nilpotency_step(mu, tol).has_value())
      out.push_back({"n-not-nilpotent", "lower central series of n stabilizes at a nonzero ideal"});
  }

  if (ip_ok && p > 0) {
    for (int z = 0; z < dims.k; ++z) {
      const Matrix a = bracket.ad(z).bottomRightCorner(p, p);
      const double r = (ip * a + a.transpose() * ip).norm();
      if (!tol.accepts(r, std::max(1.0, a.norm()) * ip.norm())) {
        std::ostringstream os;
        os << "ad e_" << z << "|_p not ip-skew, residual " << r;
        out.push_back({"k-not-skew", os.str()});
      }
    }
  }
  return out;
}

MetricDecomposition::MetricDecomposition(AlgebraTensor bracket, BlockDims dims, Matrix ip,
                                         const Tolerance& tol)
    : bracket_(std::move(bracket)), dims_(dims), tol_(tol) {
  auto v = violations(bracket_, dims_, ip, tol_);
  if (!v.empty()) throw ValidationError(std::move(v));
  const int p = dims_.p();
  ip_ = sym(identity_if_empty(ip, p));
  if (p > 0) {
    Eigen::LLT<Matrix> llt(ip_);
    const Matrix l = llt.matrixL();
    frame_ = l.transpose().triangularView<Eigen::Upper>().solve(Matrix::Identity(p, p));
    // h and n are ip-orthogonal, so the Cholesky factor is block diagonal;
    // clear the rounding noise so the working frame respects the splitting.
    if (dims_.h > 0 && dims_.n > 0) {
      frame_.block(0, dims_.h, dims_.h, dims_.n).setZero();
      frame_.block(dims_.h, 0, dims_.n, dims_.h).setZero();
    }
  } else {
    frame_ = Matrix(0, 0);
  }
  const Matrix ff = full_frame();
  const bool orthonormal =
      ff.size() == 0 || (ff - Matrix::Identity(ff.rows(), ff.cols())).cwiseAbs().maxCoeff() == 0.0;
  working_ = orthonormal ? bracket_ : bracket_.transformed(ff.inverse());
}

Matrix MetricDecomposition::full_frame() const {
  const int g = dims_.g();
  Matrix f = Matrix::Identity(g, g);
  if (dims_.p() > 0) f.bottomRightCorner(dims_.p(), dims_.p()) = frame_;
  return f;
}

Matrix MetricDecomposition::to_user(const Matrix& op) const {
  if (op.rows() != dims_.p() || op.cols() != dims_.p())
    throw DimensionError("to_user: operator is not on p");
  if (op.size() == 0) return op;
  return frame_ * op * frame_.inverse();
}

Matrix MetricDecomposition::from_user(const Matrix& op) const {
  if (op.rows() != dims_.p() || op.cols() != dims_.p())
    throw DimensionError("from_user: operator is not on p");
  if (op.size() == 0) return op;
  return frame_.inverse() * op * frame_;
}

Block MetricDecomposition::block_of(int index) const { return classify(index, dims_); }

AlgebraTensor MetricDecomposition::p_bracket() const {
  const auto idx = index_range(dims_.k, dims_.p());
  return working_.restricted(idx);
}

AlgebraTensor MetricDecomposition::n_bracket() const {
  const auto idx = index_range(dims_.n_begin(), dims_.n);
  return working_.restricted(idx);
}

AlgebraTensor MetricDecomposition::u_bracket() const {
  const auto idx = index_range(0, dims_.k + dims_.h);
  return working_.restricted(idx);
}

Vector MetricDecomposition::embed_p(const Vector& x_p) const {
  if (x_p.size() != dims_.p()) throw DimensionError("embed_p: vector is not in p");
  Vector x = Vector::Zero(dims_.g());
  x.tail(dims_.p()) = x_p;
  return x;
}

Matrix MetricDecomposition::ad_p(const Vector& x_g) const {
  return working_.ad(x_g).bottomRightCorner(dims_.p(), dims_.p());
}

Matrix MetricDecomposition::ad_n(const Vector& x_g) const {
  return working_.ad(x_g).bottomRightCorner(dims_.n, dims_.n);
}

std::string to_string(OperatorRole role) {
  switch (role) {
    case OperatorRole::Ricci: return "ricci";
    case OperatorRole::MomentMap: return "moment-map";
    case OperatorRole::Killing: return "killing";
    case OperatorRole::Ch: return "C_h";
    case OperatorRole::EBeta: return "E_beta";
    case OperatorRole::F: return "F";
  }
  return "unknown";
}

KillingData killing_operator(const MetricDecomposition& d) {
  const auto& w = d.working();
  const int g = w.dim();
  std::vector<Matrix> ads;
  ads.reserve(g);
  for (int a = 0; a < g; ++a) ads.push_back(w.ad(a));
  KillingData out;
  out.gram = Matrix::Zero(g, g);
  for (int a = 0; a < g; ++a)
    for (int b = a; b < g; ++b)
      out.gram(a, b) = out.gram(b, a) = ads[a].cwiseProduct(ads[b].transpose()).sum();
  const auto dims = d.dims();
  out.p = {OperatorRole::Killing, out.gram.bottomRightCorner(dims.p(), dims.p())};
  out.k_block = out.gram.topLeftCorner(dims.k, dims.k);
  out.kp_block = out.gram.topRightCorner(dims.k, dims.p());
  if (dims.k > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(out.k_block);
    out.k_negative_definite = es.eigenvalues().maxCoeff() < 0.0;
  }
  if (g > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(out.gram);
    const double big = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    out.nondegenerate = es.eigenvalues().cwiseAbs().minCoeff() > d.tolerance().rank * big;
  }
  return out;
}

MeanCurvature mean_curvature(const MetricDecomposition& d) {
  const auto& w = d.working();
  const auto dims = d.dims();
  MeanCurvature out;
  out.h = Vector::Zero(dims.p());
  for (int i = 0; i < dims.p(); ++i) out.h(i) = w.ad(dims.k + i).trace();
  out.n_component = out.h.tail(dims.n).norm();
  const Vector hg = d.embed_p(out.h);
  for (int i = 0; i < dims.h; ++i) {
    const double tr_eta = w.ad(dims.k + i).bottomRightCorner(dims.n, dims.n).trace();
    out.trace_eta_residual = std::max(out.trace_eta_residual, std::abs(out.h(i) - tr_eta));
  }
  for (int z = 0; z < dims.k; ++z) {
    Vector ez = Vector::Zero(dims.g());
    ez(z) = 1.0;
    const Vector zh = w.bracket(ez, hg);
    if (dims.h > 0)
      out.k_commutator = std::max(out.k_commutator, zh.segment(dims.k, dims.h).cwiseAbs().maxCoeff());
  }
  return out;
}

RicciTerms ricci_terms(const MetricDecomposition& d) {
  const auto dims = d.dims();
  RicciTerms t;
  t.m = mm_operator(d.p_bracket());
  t.b_p = killing_operator(d).p.matrix;
  const MeanCurvature h = mean_curvature(d);
  t.sym_ad_h = sym(d.ad_p(d.embed_p(h.h)));
  t.ric = {OperatorRole::Ricci, t.m - 0.5 * t.b_p - t.sym_ad_h};
  for (int z = 0; z < dims.k; ++z) {
    Vector ez = Vector::Zero(dims.g());
    ez(z) = 1.0;
    t.k_invariance = std::max(t.k_invariance, commutator(d.ad_p(ez), t.ric.matrix).norm());
  }
  return t;
}

SymOperator ricci_operator(const MetricDecomposition& d) { return ricci_terms(d).ric; }

AlgebraTensor BracketBlocks::reassembled() const {
  return lambda0 + lambda1 + eta + mu + nu0 + nu1 + nu2 + lambda2;
}

BracketBlocks block_decompose(const MetricDecomposition& d) {
  const auto dims = d.dims();
  const auto& w = d.working();
  std::vector<StructureConstant> parts[8];
  for (const auto& e : w.entries()) {
    std::string code;
    const Slot s = slot_of(d.block_of(e.i), d.block_of(e.j), d.block_of(e.k), &code);
    if (s == Slot::Bad) {
      // Sub-threshold noise passed validation; it is too small to matter but
      // has no component to live in.
      if (std::abs(e.c) <= d.tolerance().support * w.max_abs()) continue;
      throw ValidationError({{code, triple(e.i, e.j, e.k, e.c)}});
    }
    parts[static_cast<int>(s)].push_back(e);
  }
  const int g = dims.g();
  BracketBlocks b;
  b.nu0 = AlgebraTensor(g, parts[static_cast<int>(Slot::Nu0)]);
  b.nu1 = AlgebraTensor(g, parts[static_cast<int>(Slot::Nu1)]);
  b.nu2 = AlgebraTensor(g, parts[static_cast<int>(Slot::Nu2)]);
  b.lambda2 = AlgebraTensor(g, parts[static_cast<int>(Slot::Lambda2)]);
  b.lambda0 = AlgebraTensor(g, parts[static_cast<int>(Slot::Lambda0)]);
  b.lambda1 = AlgebraTensor(g, parts[static_cast<int>(Slot::Lambda1)]);
  b.eta = AlgebraTensor(g, parts[static_cast<int>(Slot::Eta)]);
  b.mu = AlgebraTensor(g, parts[static_cast<int>(Slot::Mu)]);
  return b;
}

SymOperator mm_blocks(const MetricDecomposition& d) {
  const auto dims = d.dims();
  const BracketBlocks blocks = block_decompose(d);
  const double l1 = std::sqrt(tensor_norm_sq(blocks.lambda1));
  if (!d.tolerance().accepts(l1, d.working().max_abs())) {
    std::ostringstream os;
    os << "mm_blocks: lambda1 != 0 (norm " << l1 << ")";
    throw PreconditionError(os.str());
  }
  const int hh = dims.h, nn = dims.n;
  const AlgebraTensor lambda0 = d.working().restricted(index_range(dims.k, hh));
  const AlgebraTensor mu = d.n_bracket();
  const Matrix m_l0 = mm_operator(lambda0);
  const Matrix m_mu = mm_operator(mu);

  std::vector<Matrix> ad_eta;
  for (int i = 0; i < hh; ++i) {
    Vector y = Vector::Zero(dims.g());
    y(dims.k + i) = 1.0;
    ad_eta.push_back(d.ad_n(y));
  }
  std::vector<Matrix> ad_mu;
  for (int j = 0; j < nn; ++j) ad_mu.push_back(mu.ad(j));

  Matrix m = Matrix::Zero(dims.p(), dims.p());
  for (int a = 0; a < hh; ++a)
    for (int b = 0; b < hh; ++b)
      m(a, b) = m_l0(a, b) - 0.5 * ad_eta[a].cwiseProduct(ad_eta[b]).sum();
  Matrix mn = m_mu;
  for (int i = 0; i < hh; ++i) mn += 0.5 * commutator(ad_eta[i], ad_eta[i].transpose());
  m.bottomRightCorner(nn, nn) = mn;
  for (int a = 0; a < hh; ++a)
    for (int j = 0; j < nn; ++j) {
      const double v = -0.5 * ad_eta[a].cwiseProduct(ad_mu[j]).sum();
      m(a, hh + j) = v;
      m(hh + j, a) = v;
    }
  return {OperatorRole::MomentMap, m};
}

LemmaDppReport check_lemma_Dpp(const MetricDecomposition& d, const Matrix& dm) {
  const auto dims = d.dims();
  const auto& tol = d.tolerance();
  if (dm.rows() != dims.g() || dm.cols() != dims.g())
    throw DimensionError("check_lemma_Dpp: derivation must be a dim(g) square matrix");
  if (!is_derivation(dm, d.working(), tol))
    throw PreconditionError("check_lemma_Dpp: D is not a derivation of g");
  const double scale = std::max(1.0, dm.norm());
  if (dims.k > 0 && dims.p() > 0 &&
      !tol.accepts(dm.bottomLeftCorner(dims.p(), dims.k).norm(), scale))
    throw PreconditionError("check_lemma_Dpp: D does not preserve k");
  const KillingData kd = killing_operator(d);
  if (kd.kp_block.size() > 0 && !tol.accepts(kd.kp_block.norm(), kd.gram.norm()))
    throw PreconditionError("check_lemma_Dpp: B(k,p) != 0");

  LemmaDppReport r;
  const double leak_p = dims.k > 0 ? dm.topRightCorner(dims.k, dims.p()).norm() : 0.0;
  const double leak_n =
      dims.n > 0 ? dm.block(0, dims.n_begin(), dims.k + dims.h, dims.n).norm() : 0.0;
  r.p_invariant = tol.accepts(leak_p, scale);
  r.n_invariant = tol.accepts(leak_n, scale);
  const Matrix dp = dm.bottomRightCorner(dims.p(), dims.p());
  r.trace_p = dp.trace();
  r.trace_n = dm.bottomRightCorner(dims.n, dims.n).trace();
  r.trace_equal = tol.accepts(std::abs(r.trace_p - r.trace_n), scale);
  r.killing_trace = (kd.p.matrix * dp).trace();
  const bool bort = tol.accepts(std::abs(r.killing_trace), scale * std::max(1.0, kd.p.matrix.norm()));
  r.checks.push_back(make_check("lemma-dpp.p-invariant", "D p in p", leak_p, tol.residual, r.p_invariant));
  r.checks.push_back(make_check("lemma-dpp.n-invariant", "D n in n", leak_n, tol.residual, r.n_invariant));
  r.checks.push_back(make_check("lemma-dpp.trace", "tr D|_p = tr D|_n",
                                std::abs(r.trace_p - r.trace_n), tol.residual, r.trace_equal));
  r.checks.push_back(make_check("lemma-dpp.killing-trace", "tr(B_p D_p) = 0",
                                std::abs(r.killing_trace), tol.residual, bort));
  return r;
}

}  // namespace homsol
