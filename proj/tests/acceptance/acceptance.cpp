// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "fixtures.hpp"
#include "generators.hpp"
#include "homsol/constructions.hpp"
#include "homsol/derivations.hpp"
#include "homsol/git_strata.hpp"
#include "homsol/io/catalog.hpp"
#include "homsol/soliton.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

using namespace homsol;
using fixture::decomposition;
using fixture::diag;
using fixture::dist;

namespace {

constexpr double kTol = 1e-9;

/// Collects the failures of one criterion; `worst` tracks the largest error.
struct Gate {
  bool ok = true;
  double worst = 0.0;
  std::vector<std::string> failures;

  void near(double err, const std::string& what, double tol = kTol) {
    worst = std::max(worst, err);
    if (!(err <= tol)) fail(what + " (error " + fmt(err) + ")");
  }
  void expect(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
  void fail(const std::string& what) {
    ok = false;
    if (failures.size() < 5) failures.push_back(what);
  }
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }
};

int failed_criteria = 0;

void criterion(int number, const std::string& title, const std::function<std::string(Gate&)>& body) {
  Gate g;
  std::string detail;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    detail = body(g);
  } catch (const std::exception& e) {
    g.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s criterion %d: %s; %s; max error %.3g; %.2fs\n", g.ok ? "PASS" : "FAIL", number,
              title.c_str(), detail.c_str(), g.worst, secs);
  for (const auto& f : g.failures) std::printf("    %s\n", f.c_str());
  if (!g.ok) ++failed_criteria;
}

Vector vec(std::initializer_list<double> v) { return diag(v).diagonal(); }

Matrix direct_ricci(const MetricDecomposition& d) { return d.to_user(ricci_operator(d).matrix); }

std::vector<std::string> catalog_algebras() {
  std::vector<std::string> out;
  for (const auto& name : io::catalog_names())
    if (std::holds_alternative<io::AlgebraDocument>(io::catalog_entry(name))) out.push_back(name);
  return out;
}

void nilsoliton_chain(Gate& g, const std::string& name, const Matrix& ric, const Vector& beta,
                      const Matrix& d1) {
  const auto d = decomposition(name);
  const AlgebraTensor mu = d.n_bracket();
  g.near(dist(direct_ricci(d), ric), name + " Ric");
  const auto cert = nilsoliton_fit(mu);
  g.near(std::abs(cert.c + 1.5), name + " c");
  g.near(dist(cert.d1, d1), name + " D1");
  g.near(cert.residual, name + " fit residual");
  const auto s = beta_mu(mu);
  g.near((s.beta - beta).norm(), name + " beta");
  g.near(dist(moment_map(mu), beta.asDiagonal()), name + " m(mu) = beta");
  g.near(std::abs(cert.c + 0.25 * tensor_norm_sq(mu) * s.beta_norm_sq), name + " c = -1/4 |mu|^2 |beta|^2");
  g.expect(s.nice_position, name + " nice position");
}

struct Negative {
  std::string name;
  MetricDecomposition d;
  int condition;
};

MetricDecomposition line_acting(const AlgebraTensor& nil, const Matrix& theta) {
  const int n = nil.dim();
  std::vector<StructureConstant> e;
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c)
      if (theta(c, b) != 0.0) e.push_back({0, 1 + b, 1 + c, theta(c, b)});
  for (const auto& x : nil.entries()) e.push_back({1 + x.i, 1 + x.j, 1 + x.k, x.c});
  std::sort(e.begin(), e.end(),
            [](const auto& x, const auto& y) { return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k); });
  return MetricDecomposition(AlgebraTensor(n + 1, std::move(e)), {0, 1, n});
}

}  // namespace

int main() {
  criterion(1, "Heisenberg chain", [](Gate& g) {
    nilsoliton_chain(g, "heis3", diag({-0.5, -0.5, 0.5}), vec({-1, -1, 1}), diag({1, 1, 2}));
    return std::string("Ric, fit, beta, m(mu), c identity on heis3");
  });

  criterion(2, "Filiform chain", [](Gate& g) {
    nilsoliton_chain(g, "fil4", diag({-1, -0.5, 0, 0.5}), vec({-1, -0.5, 0, 0.5}), diag({0.5, 1, 1.5, 2}));
    return std::string("beta from the min-norm solver, m(mu), fit, nice position on fil4");
  });

  criterion(3, "Min-norm point vs Caratheodory enumeration", [](Gate& g) {
    gen::Rng rng(3003);
    int sets = 0;
    for (; sets < 500; ++sets) {
      const int dim = rng.integer(1, 8);
      const int count = rng.integer(1, 8);
      const auto pts = gen::random_points(rng, count, dim);
      const Vector a = min_norm_point(pts).point;
      const Vector b = oracle::caratheodory_min_norm(pts);
      g.near((a - b).norm(), "set " + std::to_string(sets));
    }
    return std::to_string(sets) + " random sets, up to 8 points in dimension up to 8";
  });

  criterion(4, "Moment-map dual identity", [](Gate& g) {
    gen::Rng rng(4004);
    int brackets = 0, derivations = 0;
    for (; brackets < 20; ++brackets) {
      // Half nilpotent in a random basis, half full brackets of reductive
      // decompositions; both are Lie algebras.
      const AlgebraTensor mu =
          brackets % 2 ? gen::random_nilpotent(rng) : gen::random_lambda1_zero(rng).bracket();
      const int n = mu.dim();
      const Matrix m = mm_operator(mu);
      const double scale = 1.0 + tensor_norm_sq(mu);
      for (int e = 0; e < 100; ++e) {
        const Matrix x = gen::random_matrix(rng, n, n);
        const double lhs = (m * x).trace();
        const double rhs = 0.25 * tensor_inner(pi_action(x, mu), mu);
        g.near(std::abs(lhs - rhs) / scale, "tr(M E) bracket " + std::to_string(brackets));
      }
      for (const auto& d : derivation_algebra(mu)) {
        g.near(std::abs((m * d).trace()) / scale, "tr(M D) bracket " + std::to_string(brackets));
        ++derivations;
      }
    }
    return std::to_string(brackets) + " brackets x 100 random E, " + std::to_string(derivations) +
           " derivation basis elements";
  });

  criterion(5, "Block formula for M with lambda1 = 0", [](Gate& g) {
    gen::Rng rng(5005);
    int n = 0;
    for (; n < 50; ++n) {
      const MetricDecomposition d = gen::random_lambda1_zero(rng);
      const Matrix direct = mm_operator(d.p_bracket());
      g.near(dist(mm_blocks(d).matrix, direct) / (1.0 + direct.norm()), "decomposition " + std::to_string(n));
    }
    return std::to_string(n) + " generated decompositions";
  });

  criterion(6, "Structure theorem round trip and negative controls", [](Gate& g) {
    gen::Rng rng(6006);
    int built = 0;
    for (; built < 50; ++built) {
      const auto r = build_semidirect(gen::random_construction(rng));
      const auto rep = main_theorem_battery(r.decomposition, r.certificate);
      g.expect(rep.structure_holds(), "builder output " + std::to_string(built) + " fails (i)-(iv)");
      const Matrix ric = ricci_operator(r.decomposition).matrix;
      g.near(dist(rep.assembled_ric, ric) / (1.0 + ric.norm()), "assembled Ric " + std::to_string(built));
    }
    const AlgebraTensor heis(3, {{0, 1, 2, 1.0}});
    std::vector<Negative> controls;
    controls.push_back({"(i) heis3 with h = span(e1, e2)", MetricDecomposition(heis, {0, 2, 1}), 0});
    controls.push_back({"(ii) R a acting on heis3 by 1.3 times the Einstein action",
                        line_acting(heis, 1.3 * diag({0.5, 0.5, 1.0})), 1});
    controls.push_back({"(iii) R a times cn7", line_acting(decomposition("cn7").bracket(), Matrix::Zero(7, 7)), 2});
    controls.push_back({"(iv) R a acting on R^2 by a non-normal matrix",
                        line_acting(AlgebraTensor(2), (Matrix(2, 2) << 1, 1, 0, 2).finished()), 3});
    for (const auto& c : controls) {
      const auto rep = main_theorem_battery(c.d, soliton_fit(c.d));
      g.expect(!rep.holds[c.condition], c.name + " not flagged");
      g.expect(rep.residual[c.condition] > 1e-6, c.name + " residual too small");
    }
    return std::to_string(built) + " builder outputs, 4 negative controls each flagged";
  });

  criterion(7, "Algebraic soliton equivalences agree", [](Gate& g) {
    int catalog = 0, skipped = 0;
    auto run = [&](const std::string& what, const MetricDecomposition& d, const SolitonCertificate& c) {
      const auto r = algsol_equivalences(d, c);
      g.expect(r.agree, what + " conditions disagree");
    };
    for (const auto& name : catalog_algebras()) {
      const auto d = decomposition(name);
      const auto cert = soliton_fit(d);
      if (!cert.detected() || !cert.expanding()) {
        ++skipped;
        continue;
      }
      run(name, d, cert);
      ++catalog;
    }
    for (const auto& name : io::catalog_names()) {
      const auto entry = io::catalog_entry(name);
      if (!std::holds_alternative<io::ConstructionDocument>(entry)) continue;
      try {
        const auto r = build_semidirect(std::get<io::ConstructionDocument>(entry).data);
        run(name, r.decomposition, r.certificate);
        ++catalog;
      } catch (const ValidationError&) {
        ++skipped;
      }
    }
    gen::Rng rng(7007);
    int built = 0;
    for (; built < 50; ++built) {
      const auto r = build_semidirect(gen::random_construction(rng));
      run("builder " + std::to_string(built), r.decomposition, r.certificate);
    }
    return std::to_string(catalog) + " catalog soliton instances (" + std::to_string(skipped) +
           " outside the hypotheses), " + std::to_string(built) + " builder instances";
  });

  criterion(8, "Einstein constructions", [](Gate& g) {
    {
      const auto d = decomposition("solv12");
      const auto cert = soliton_fit(d);
      const auto r = einstein_from_nonunimodular(d, cert);
      g.near(dist(direct_ricci(r.decomposition), -5.0 * Matrix::Identity(3, 3)), "solv12 nonunimodular");
      g.expect(r.certificate.c == cert.c, "solv12 constant not preserved");
    }
    {
      const auto d = decomposition("heis3");
      const auto cert = soliton_fit(d);
      const auto ext = einstein_extension_unimodular(d, cert);
      g.near(dist(direct_ricci(ext.decomposition), -1.5 * Matrix::Identity(4, 4)), "heis3 extension");
      g.expect(ext.certificate.c == cert.c, "heis3 extension constant not preserved");
      const auto back = restrict_to_unimodular_kernel(ext.decomposition, ext.certificate);
      g.expect(back.certificate.c == cert.c, "restriction constant not preserved");
      g.near(std::abs(back.certificate.c + 1.5), "restricted c");
      g.near(dist(back.certificate.d1, diag({1, 1, 2})), "restricted D1");
    }
    for (int n = 1; n <= 6; ++n) {
      const MetricDecomposition d(AlgebraTensor(n), {0, 0, n});
      const auto cert = soliton_fit(d, -1.0);
      const auto ext = einstein_extension_unimodular(d, cert);
      g.near(dist(direct_ricci(ext.decomposition), -Matrix::Identity(n + 1, n + 1)), "abelian R^" + std::to_string(n));
      g.expect(ext.certificate.c == -1.0, "abelian constant not preserved");
    }
    return std::string("solv12 nonunimodular, heis3 and R^1..R^6 extensions, restriction of the heis3 extension");
  });

  criterion(9, "Stratum properties on catalog nilpotents", [](Gate& g) {
    int count = 0;
    for (const auto& name : catalog_algebras()) {
      const auto d = decomposition(name);
      if (d.dims().k != 0 || d.dims().h != 0 || d.bracket().is_zero()) continue;
      ++count;
      const AlgebraTensor mu = d.n_bracket();
      const auto s = beta_mu(mu);
      g.near(std::abs(s.beta.sum() + 1.0), name + " tr beta");
      const auto rep = strata_properties(mu, derivation_algebra(mu), s);
      g.expect(rep.betapos_min_eigenvalue > 0.0, name + " beta + |beta|^2 I not positive definite");
      g.expect(rep.beta_norm <= rep.m_norm + kTol, name + " |beta| > |m(mu)|");
      const bool equal_norms = std::abs(rep.beta_norm - rep.m_norm) <= 1e-7;
      const bool equal_spectra = rep.spectra_gap <= 1e-7;
      g.expect(equal_norms == equal_spectra, name + " norm equality and spectra disagree");
      if (s.nice_position) {
        g.near(std::abs(rep.betaort_max), name + " betaort");
        g.expect(rep.delta_value >= -kTol, name + " delta");
      }
      for (const auto& c : rep.checks) g.expect(c.pass || c.informational, name + " " + c.name);
      auto pie = [&](const std::string& what, const MetricDecomposition& dd) {
        const auto p = lemma_pie(dd);
        for (double v : {p.lambda0, p.lambda1, p.eta, p.mu}) g.expect(v >= -kTol, what + " negative summand");
        g.expect(p.total >= -kTol, what + " negative total");
      };
      if (s.nice_position) {
        pie(name, d);
        const auto cert = soliton_fit(d);
        if (cert.detected() && cert.d1.trace() > 0.0)
          pie(name + " extension", einstein_extension_unimodular(d, cert).decomposition);
      }
    }
    return std::to_string(count) + " catalog nilpotent algebras";
  });

  criterion(10, "Characteristically nilpotent negative control", [](Gate& g) {
    const AlgebraTensor mu = decomposition("cn7").n_bracket();
    const auto cert = nilsoliton_fit(mu);
    const double ref = oracle::nilsoliton_residual(mu);
    g.expect(cert.residual > 1e-3, "fit residual not above 1e-3");
    g.expect(ref > 1e-3, "oracle residual not above 1e-3");
    g.near(std::abs(cert.residual - ref), "library vs oracle residual", 1e-8);
    g.expect(!cert.detected(), "cn7 tagged as a nilsoliton");
    return "fit residual " + Gate::fmt(cert.residual) + ", oracle " + Gate::fmt(ref);
  });

  return failed_criteria;
}
