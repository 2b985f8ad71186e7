#include "homsol/io/commands.hpp"

#include "homsol/constructions.hpp"
#include "homsol/derivations.hpp"
#include "homsol/git_strata.hpp"
#include "homsol/soliton.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

namespace homsol::io {

namespace {

Json mat(const Matrix& m) { return matrix_to_json(cleaned(m)); }

Json vec(const Vector& v) {
  const double scale = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(cleaned(v(i), scale));
  return out;
}

Vector eigenvalues(const Matrix& m) {
  if (m.size() == 0) return Vector(0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Matrix g_to_user(const MetricDecomposition& d, const Matrix& op) {
  const Matrix ff = d.full_frame();
  return ff * op * ff.inverse();
}

Matrix n_to_user(const MetricDecomposition& d, const Matrix& op) {
  const int n = d.dims().n;
  if (n == 0) return op;
  const Matrix fn = d.frame().bottomRightCorner(n, n);
  return fn * op * fn.inverse();
}

bool pure_nilpotent(const MetricDecomposition& d) { return d.dims().k == 0 && d.dims().h == 0; }

std::string classify(const MetricDecomposition& d, const SolitonCertificate& cert) {
  if (pure_nilpotent(d) && cert.detected() && cert.tag != SolitonTag::Einstein) return "nilsoliton";
  return to_string(cert.tag);
}

void append(std::vector<Check>& to, const std::vector<Check>& from) { to.insert(to.end(), from.begin(), from.end()); }

Json dims_json(const BlockDims& b) { return {{"k", b.k}, {"h", b.h}, {"n", b.n}}; }

Json certificate_json(const MetricDecomposition& d, const SolitonCertificate& cert) {
  Json j;
  j["c"] = cleaned(cert.c);
  j["tag"] = to_string(cert.tag);
  j["canonical"] = cert.canonical;
  j["residual"] = cert.residual;
  j["relative_residual"] = cert.relative_residual;
  j["D"] = mat(g_to_user(d, cert.d));
  if (cert.d1.size()) j["D1"] = mat(n_to_user(d, cert.d1));
  j["expanding"] = cert.expanding();
  j["semisimple"] = cert.semisimple;
  j["solvsoliton_isometric"] = cert.solvsoliton_isometric;
  return j;
}

// ricci --------------------------------------------------------------------

void ricci_report(const MetricDecomposition& d, Report& r) {
  const auto& tol = d.tolerance();
  const int p = d.dims().p();
  const RicciTerms t = ricci_terms(d);
  const MeanCurvature mc = mean_curvature(d);
  const Matrix ric_user = p ? d.to_user(t.ric.matrix) : Matrix(0, 0);
  r.values["dims"] = dims_json(d.dims());
  r.values["ricci"] = mat(ric_user);
  r.values["ricci_eigenvalues"] = vec(eigenvalues(t.ric.matrix));
  r.values["scalar_curvature"] = cleaned(t.ric.matrix.trace());
  r.values["mean_curvature"] = vec(d.vector_to_user(mc.h));
  r.values["M"] = mat(p ? d.to_user(t.m) : t.m);
  r.values["B_p"] = mat(p ? d.to_user(t.b_p) : t.b_p);
  r.values["S(ad H)"] = mat(p ? d.to_user(t.sym_ad_h) : t.sym_ad_h);
  r.values["unimodular"] = mc.h.norm() <= tol.residual * std::max(1.0, d.working().max_abs());
  r.classification = "ricci";

  const double scale = std::max(1.0, t.ric.matrix.norm());
  r.checks.push_back(make_check("ricci.symmetric", "Ric = Ric^T", t.ric.asymmetry(), tol.residual * scale,
                                tol.accepts(t.ric.asymmetry(), scale)));
  r.checks.push_back(make_check("ricci.k-invariant", "[ad Z|_p, Ric] = 0 for Z in k", t.k_invariance,
                                tol.residual * scale, tol.accepts(t.k_invariance, scale)));
  r.checks.push_back(make_check("ricci.k-commutes-h", "[k, H] = 0", mc.k_commutator,
                                tol.residual * std::max(1.0, mc.h.norm()), tol.accepts(mc.k_commutator, mc.h.norm())));
  Check eta = make_check("ricci.h-trace", "<H, Y> = tr ad Y|_n for Y in h", mc.trace_eta_residual,
                         tol.residual * std::max(1.0, mc.h.norm()), tol.accepts(mc.trace_eta_residual, mc.h.norm()),
                         "holds when ad Y|_h is traceless");
  eta.informational = true;
  r.checks.push_back(eta);

  const BracketBlocks blocks = block_decompose(d);
  if (blocks.lambda1.is_zero()) {
    const Matrix mb = mm_blocks(d).matrix;
    const double res = (mb - t.m).norm();
    const double s = std::max(1.0, t.m.norm());
    r.checks.push_back(make_check("ricci.m-blocks", "M = M_lambda0 + M_mu + ad_eta corrections", res,
                                  tol.residual * s, tol.accepts(res, s)));
  } else {
    r.notes.push_back("M block formula skipped: lambda1 != 0");
  }
}

// fit ----------------------------------------------------------------------

SolitonCertificate fit_report(const MetricDecomposition& d, const RunOptions& opts, Report& r) {
  const auto& tol = d.tolerance();
  const SolitonCertificate cert = soliton_fit(d, opts.fixed_c);
  r.classification = classify(d, cert);
  r.values["certificate"] = certificate_json(d, cert);
  r.checks.push_back(make_check("fit.residual", "Ric = cI + S(D_p), relative residual", cert.relative_residual,
                                tol.soliton, cert.detected()));
  const double dres = derivation_residual(cert.d, d.working());
  const double dscale = std::max(1.0, d.working().max_abs()) * std::max(1.0, cert.d.norm());
  r.checks.push_back(make_check("fit.derivation", "pi(D)[.,.] = 0", dres, tol.soliton * dscale,
                                dres <= tol.soliton * dscale));
  const int k = d.dims().k;
  const double kblock = k ? cert.d.topRows(k).norm() + cert.d.leftCols(k).norm() : 0.0;
  r.checks.push_back(make_check("fit.k-block", "D vanishes on k", kblock, tol.residual, kblock <= tol.residual));

  const AlgebraTensor mu = d.n_bracket();
  if (!mu.is_zero()) {
    const SolitonCertificate nil = nilsoliton_fit(mu, opts.fixed_c, tol);
    r.values["nilsoliton"] = {{"c", cleaned(nil.c)},
                              {"D1", mat(n_to_user(d, nil.d1))},
                              {"residual", nil.residual},
                              {"detected", nil.detected()}};
    Check c = make_check("fit.nilsoliton", "Ric_n = cI + D1", nil.relative_residual, tol.soliton, nil.detected());
    c.informational = !pure_nilpotent(d);
    r.checks.push_back(c);
  }
  return cert;
}

// battery ------------------------------------------------------------------

template <class F>
void section(Report& r, const std::string& name, F&& body) {
  try {
    body();
  } catch (const PreconditionError& e) {
    r.notes.push_back(name + " skipped: " + e.what());
  }
}

void battery_report(const MetricDecomposition& d, const RunOptions& opts, Report& r) {
  Report fit;
  const SolitonCertificate cert = fit_report(d, opts, fit);
  r.classification = fit.classification;
  r.values["certificate"] = fit.values["certificate"];
  append(r.checks, fit.checks);
  if (!cert.detected()) {
    r.notes.push_back("no soliton certificate; structure checks skipped");
    return;
  }
  section(r, "structure battery", [&] {
    const MainTheoremReport m = main_theorem_battery(d, cert);
    r.values["battery"] = {{"forward_applicable", m.forward_applicable},
                           {"C_h", mat(m.c_h)},
                           {"Ric_u", mat(m.ric_u)},
                           {"D1", mat(n_to_user(d, m.d1))}};
    if (!m.forward_note.empty()) r.notes.push_back(m.forward_note);
    append(r.checks, m.checks);
  });
  section(r, "derivation trace lemma", [&] { append(r.checks, check_lemma_Dpp(d, cert.d).checks); });
  section(r, "expanding consequences", [&] {
    const LeoReport l = leo_consequences(d, cert);
    r.values["expanding"] = {{"t", l.t}, {"F", mat(d.to_user(l.f))}, {"abelian_branch", l.abelian_branch}};
    append(r.checks, l.checks);
  });
  section(r, "algebraic soliton equivalences", [&] {
    const AlgsolReport a = algsol_equivalences(d, cert);
    Json holds = Json::array();
    for (bool b : a.holds) holds.push_back(b);
    r.values["algebraic_conditions"] = holds;
    append(r.checks, a.checks);
  });
  section(r, "stratum identities", [&] {
    const ExtrasReport e = extras_check(d, cert);
    if (e.skipped) r.notes.push_back("stratum identities skipped: " + e.note);
    append(r.checks, e.checks);
  });
}

// stratify -----------------------------------------------------------------

void stratify_report(const MetricDecomposition& d, Report& r) {
  const auto& tol = d.tolerance();
  const AlgebraTensor mu = d.n_bracket();
  if (mu.is_zero()) throw PreconditionError("stratify needs a nonabelian nilradical (mu != 0)");
  const StratumData s = beta_mu(mu, tol);
  const auto [sorted, perm] = weyl_normalize(s.beta);
  r.classification = s.nice_position ? "nice-position" : "not-nice-position";
  r.values["beta"] = vec(s.beta);
  r.values["beta_sorted"] = vec(sorted);
  r.values["beta_norm_sq"] = cleaned(s.beta_norm_sq);
  r.values["min_pairing"] = cleaned(s.min_pairing);
  r.values["nice_position"] = s.nice_position;
  r.values["moment_map"] = mat(moment_map(mu));
  r.values["support_size"] = s.support.size();
  r.notes.push_back("beta and the moment map are in the working orthonormal basis of n");

  const double tr = s.beta.sum();
  r.checks.push_back(make_check("stratify.trace", "tr beta = -1", std::abs(tr + 1.0), tol.residual,
                                tol.accepts(std::abs(tr + 1.0))));
  Check nice = make_check("stratify.nice-position", "min <beta, alpha> = ||beta||^2",
                          std::abs(s.min_pairing - s.beta_norm_sq), tol.residual, s.nice_position);
  nice.informational = true;
  r.checks.push_back(nice);
  append(r.checks, strata_properties(mu, derivation_algebra(mu, tol), s, tol).checks);
  section(r, "bracket norm split", [&] { append(r.checks, lemma_pie(d, tol).checks); });
}

// build / extend -----------------------------------------------------------

void emit(const AlgebraDocument& doc, const RunOptions& opts, Report& r) {
  if (!opts.out.empty()) {
    std::ofstream f(opts.out);
    if (!f) throw ParseError("cannot write '" + opts.out + "'");
    f << to_json(doc).dump(2) << "\n";
    r.notes.push_back("document written to " + opts.out);
  } else {
    r.document = to_json(doc);
  }
}

void construction_values(const ConstructionResult& res, Report& r) {
  const auto& out = res.decomposition;
  const int p = out.dims().p();
  r.values["dims"] = dims_json(out.dims());
  r.values["ricci"] = mat(p ? out.to_user(ricci_operator(out).matrix) : Matrix(0, 0));
  r.values["certificate"] = certificate_json(out, res.certificate);
  r.classification = to_string(res.certificate.tag);
}

void build_report(const ConstructionDocument& doc, const RunOptions& opts, Report& r) {
  const ConstructionResult res = build_semidirect(doc.data, opts.tol);
  construction_values(res, r);
  r.values["predicted_ricci"] = mat(res.predicted_ric);
  append(r.checks, res.checks);
  emit(to_document(doc.name + "_built", res.decomposition), opts, r);
}

void extend_report(const MetricDecomposition& d, const std::string& name, const RunOptions& opts, Report& r) {
  const SolitonCertificate cert = soliton_fit(d, opts.fixed_c);
  r.values["input_certificate"] = certificate_json(d, cert);
  ConstructionResult res = [&] {
    if (opts.variant == "nonunimodular") return einstein_from_nonunimodular(d, cert);
    if (opts.variant == "restrict") return restrict_to_unimodular_kernel(d, cert);
    if (opts.variant == "unimodular") return einstein_extension_unimodular(d, cert);
    throw ParseError("extend needs --variant=nonunimodular|restrict|unimodular");
  }();
  construction_values(res, r);
  append(r.checks, res.checks);
  if (opts.variant != "restrict") {
    // The Einstein constant is the one of the input certificate.
    const double dc = std::abs(res.certificate.c - cert.c);
    r.checks.push_back(make_check("extend.constant", "c of the output = c of the input", dc, 0.0, dc == 0.0));
  } else {
    const double res_rel = res.certificate.relative_residual;
    r.checks.push_back(make_check("extend.certificate", "Ric_g0 = cI + S(D'), relative residual", res_rel,
                                  opts.tol.soliton, res.certificate.detected()));
  }
  const std::string suffix = opts.variant == "restrict" ? "_kernel" : "_einstein";
  emit(to_document(name + suffix, res.decomposition, Json{{"derived_from", name}, {"variant", opts.variant}}), opts,
       r);
}

// verify-all ---------------------------------------------------------------

Check expect_check(const std::string& name, const std::string& identity, double value, double tol, bool pass,
                   std::string note = {}) {
  return make_check(name, identity, value, tol, pass, std::move(note));
}

double diag_distance(const Json& values, const Json& expected) {
  const Matrix m = matrix_from_json(values, "value");
  const auto n = static_cast<Eigen::Index>(expected.size());
  if (m.rows() != n || m.cols() != n) return std::numeric_limits<double>::infinity();
  Matrix e = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) e(i, i) = expected[static_cast<std::size_t>(i)].get<double>();
  return (m - e).norm();
}

double vector_distance(const Json& values, const Json& expected) {
  if (values.size() != expected.size()) return std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i].get<double>() - expected[i].get<double>();
    s += d * d;
  }
  return std::sqrt(s);
}

std::vector<Check> verify_entry(const CatalogEntry& entry, const RunOptions& base) {
  const std::string& name = entry_name(entry);
  const Json& meta = entry_meta(entry);
  const Json expect = meta.contains("expect") ? meta.at("expect") : Json::object();
  RunOptions opts = base;
  opts.out.clear();
  const double tol = std::max(base.tol.residual, 1e-9);
  std::vector<Check> out;

  if (std::holds_alternative<ConstructionDocument>(entry)) {
    const auto& doc = std::get<ConstructionDocument>(entry);
    if (expect.contains("build_error")) {
      const std::string code = expect.at("build_error").get<std::string>();
      bool refused = false;
      std::string got;
      try {
        build_semidirect(doc.data, base.tol);
      } catch (const ValidationError& e) {
        for (const auto& v : e.violations()) {
          got += (got.empty() ? "" : ",") + v.code;
          refused = refused || v.code == code;
        }
      }
      out.push_back(expect_check(name + ".refused", "construction refused with " + code, refused ? 0.0 : 1.0, 0.0,
                                 refused, got));
      return out;
    }
    const Report r = run_command("build", entry, opts);
    out.push_back(expect_check(name + ".build", "build passes its checks", r.failed(), 0.0, r.ok()));
    if (expect.contains("classification"))
      out.push_back(expect_check(name + ".classification", "tag = " + expect.at("classification").get<std::string>(),
                                 0.0, 0.0, r.classification == expect.at("classification")));
    if (expect.contains("ricci")) {
      const double dist = diag_distance(r.values.at("ricci"), expect.at("ricci"));
      out.push_back(expect_check(name + ".ricci", "Ric = expected diagonal", dist, tol, dist <= tol));
    }
    return out;
  }

  const std::vector<std::string> commands =
      expect.contains("commands") ? expect.at("commands").get<std::vector<std::string>>() : std::vector<std::string>{};
  for (const auto& cmd : commands) {
    RunOptions o = opts;
    std::string c = cmd;
    if (const auto colon = cmd.find(':'); colon != std::string::npos) {
      c = cmd.substr(0, colon);
      o.variant = cmd.substr(colon + 1);
    }
    bool ok = false;
    std::string note;
    try {
      const Report r = run_command(c, entry, o);
      ok = r.ok();
      if (!ok)
        for (const auto& ch : r.checks)
          if (!ch.pass && !ch.informational) note += (note.empty() ? "" : ",") + ch.name;
    } catch (const std::exception& e) {
      note = e.what();
    }
    out.push_back(expect_check(name + ".run." + cmd, cmd + " exits cleanly", ok ? 0.0 : 1.0, 0.0, ok, note));
  }

  const Report ricci = run_command("ricci", entry, opts);
  if (expect.contains("ricci")) {
    const double dist = diag_distance(ricci.values.at("ricci"), expect.at("ricci"));
    out.push_back(expect_check(name + ".ricci", "Ric = expected diagonal", dist, tol, dist <= tol));
  }
  const bool wants_fit = expect.contains("classification") || expect.contains("c") || expect.contains("d1") ||
                         expect.contains("fit_residual_min");
  if (wants_fit) {
    const Report fit = run_command("fit", entry, opts);
    const Json& cert = fit.values.at("certificate");
    if (expect.contains("classification"))
      out.push_back(expect_check(name + ".classification",
                                 "classification = " + expect.at("classification").get<std::string>(), 0.0, 0.0,
                                 fit.classification == expect.at("classification"), fit.classification));
    if (expect.contains("c")) {
      const double dc = std::abs(cert.at("c").get<double>() - expect.at("c").get<double>());
      out.push_back(expect_check(name + ".c", "c = expected", dc, tol, dc <= tol));
    }
    if (expect.contains("d1")) {
      const double dist = diag_distance(cert.at("D1"), expect.at("d1"));
      out.push_back(expect_check(name + ".d1", "D1 = expected diagonal", dist, tol, dist <= tol));
    }
    if (expect.contains("fit_residual_min")) {
      const double lo = expect.at("fit_residual_min").get<double>();
      const double res = cert.at("residual").get<double>();
      out.push_back(expect_check(name + ".fit-residual", "fit residual > " + std::to_string(lo), res, lo, res > lo));
    }
  }
  if (expect.contains("beta") || expect.contains("nice_position")) {
    const Report st = run_command("stratify", entry, opts);
    if (expect.contains("beta")) {
      const double dist = vector_distance(st.values.at("beta"), expect.at("beta"));
      out.push_back(expect_check(name + ".beta", "beta = expected", dist, tol, dist <= tol));
    }
    if (expect.contains("nice_position"))
      out.push_back(expect_check(name + ".nice-position", "nice position as expected", 0.0, 0.0,
                                 st.values.at("nice_position") == expect.at("nice_position")));
  }
  return out;
}

void verify_all_report(const std::vector<CatalogEntry>& entries, const RunOptions& opts, Report& r) {
  std::vector<std::future<std::vector<Check>>> jobs;
  jobs.reserve(entries.size());
  for (const auto& e : entries)
    jobs.push_back(std::async(std::launch::async, [&e, &opts] { return verify_entry(e, opts); }));
  std::vector<std::pair<std::string, std::vector<Check>>> results;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::vector<Check> checks;
    try {
      checks = jobs[i].get();
    } catch (const std::exception& ex) {
      checks.push_back(make_check(entry_name(entries[i]) + ".error", "entry can be verified", 1.0, 0.0, false, ex.what()));
    }
    results.emplace_back(entry_name(entries[i]), std::move(checks));
  }
  std::stable_sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Json names = Json::array();
  for (auto& [name, checks] : results) {
    names.push_back(name);
    append(r.checks, checks);
  }
  r.values["entries"] = names;
  r.classification = r.ok() ? "verified" : "failed";
}

std::string input_hash(const CatalogEntry& e) { return fnv1a_hex(to_json(e).dump()); }

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"ricci", "fit",   "battery", "stratify",
                                                 "build", "extend", "catalog", "verify-all"};
  return names;
}

CatalogEntry resolve_input(const std::string& arg) {
  if (std::filesystem::exists(arg)) {
    const Json j = read_json_file(arg);
    if (is_construction(j)) return parse_construction(j);
    return parse_document(j);
  }
  return catalog_entry(arg);
}

Report run_command(const std::string& command, const CatalogEntry& input, const RunOptions& opts) {
  Report r;
  r.command = command;
  r.input = entry_name(input);
  r.provenance = {input_hash(input), tool_version(), opts.tol};

  if (command == "build") {
    if (!std::holds_alternative<ConstructionDocument>(input))
      throw ParseError("build needs a construction document (with 'theta')");
    build_report(std::get<ConstructionDocument>(input), opts, r);
    return r;
  }
  if (std::holds_alternative<ConstructionDocument>(input))
    throw ParseError(command + " needs an algebra document, got a construction");
  const auto& doc = std::get<AlgebraDocument>(input);
  const MetricDecomposition d = validate(doc, opts.tol);
  if (command == "ricci") ricci_report(d, r);
  else if (command == "fit") fit_report(d, opts, r);
  else if (command == "battery") battery_report(d, opts, r);
  else if (command == "stratify") stratify_report(d, r);
  else if (command == "extend") extend_report(d, doc.name, opts, r);
  else throw ParseError("unknown command '" + command + "'");
  return r;
}

RunResult run(const std::string& command, const std::vector<std::string>& inputs, const RunOptions& opts) {
  RunResult res;
  auto render = [&](const Report& r) {
    res.out += opts.json ? to_json(r).dump(2) + "\n" : render_text(r, opts.quiet);
    if (!r.ok()) res.exit_code = std::max(res.exit_code, static_cast<int>(kExitCheckFailure));
  };
  try {
    if (std::find(command_names().begin(), command_names().end(), command) == command_names().end())
      throw ParseError("unknown command '" + command + "'");
    if (opts.json && opts.quiet) throw ParseError("--json and --quiet cannot be combined");
    if (!opts.variant.empty() && command != "extend") throw ParseError("--variant only applies to extend");
    if (command == "extend" && opts.variant.empty())
      throw ParseError("extend needs --variant=nonunimodular|restrict|unimodular");

    if (command == "catalog") {
      if (!opts.out.empty()) {
        std::filesystem::create_directories(opts.out);
        for (const auto& name : catalog_names()) {
          std::ofstream f(std::filesystem::path(opts.out) / (name + ".json"));
          if (!f) throw ParseError("cannot write into '" + opts.out + "'");
          f << to_json(catalog_entry(name)).dump(2) << "\n";
        }
        if (!opts.quiet) res.out += "wrote " + std::to_string(catalog_names().size()) + " files to " + opts.out + "\n";
      } else if (inputs.empty()) {
        for (const auto& name : catalog_names()) {
          const CatalogEntry entry = catalog_entry(name);
          const Json& meta = entry_meta(entry);
          res.out += name;
          if (meta.contains("description")) res.out += "  " + meta.at("description").get<std::string>();
          res.out += "\n";
        }
      } else {
        for (const auto& in : inputs) res.out += to_json(resolve_input(in)).dump(2) + "\n";
      }
      return res;
    }

    if (command == "verify-all") {
      std::vector<CatalogEntry> entries;
      if (inputs.empty())
        for (const auto& name : catalog_names()) entries.push_back(catalog_entry(name));
      else
        for (const auto& in : inputs) entries.push_back(resolve_input(in));
      Report r;
      r.command = command;
      r.input = inputs.empty() ? "catalog" : "inputs";
      std::string hashes;
      for (const auto& e : entries) hashes += input_hash(e);
      r.provenance = {fnv1a_hex(hashes), tool_version(), opts.tol};
      verify_all_report(entries, opts, r);
      render(r);
      return res;
    }

    if (inputs.empty()) throw ParseError(command + " needs an input file or catalog name");
    if (!opts.out.empty() && inputs.size() > 1) throw ParseError("--out takes a single input");
    for (const auto& in : inputs) render(run_command(command, resolve_input(in), opts));
  } catch (const ValidationError& e) {
    res.exit_code = kExitInputError;
    for (const auto& v : e.violations()) res.err += "error: " + v.code + ": " + v.detail + "\n";
  } catch (const ParseError& e) {
    res.exit_code = kExitInputError;
    res.err += std::string("error: ") + e.what() + "\n";
  } catch (const PreconditionError& e) {
    res.exit_code = kExitInputError;
    res.err += std::string("error: ") + e.what() + "\n";
  } catch (const DimensionError& e) {
    res.exit_code = kExitInputError;
    res.err += std::string("error: ") + e.what() + "\n";
  } catch (const Error& e) {
    res.exit_code = kExitCheckFailure;
    res.err += std::string("error: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace homsol::io
