#include "homsol/io/catalog.hpp"

#include <functional>
#include <map>

namespace homsol::io {

namespace {

AlgebraDocument make(std::string name, int k, int h, int n, std::vector<StructureConstant> bracket,
                     Json meta) {
  AlgebraDocument d;
  d.name = std::move(name);
  d.dim_k = k;
  d.dim_h = h;
  d.dim_n = n;
  d.dim = k + h + n;
  d.bracket = std::move(bracket);
  d.meta = std::move(meta);
  return d;
}

Json diag(std::initializer_list<double> v) { return Json(std::vector<double>(v)); }

AlgebraDocument heis3() {
  return make("heis3", 0, 0, 3, {{0, 1, 2, 1.0}},
              {{"description", "3-dimensional Heisenberg algebra [X0,X1] = X2"},
               {"expect",
                {{"ricci", diag({-0.5, -0.5, 0.5})},
                 {"classification", "nilsoliton"},
                 {"c", -1.5},
                 {"d1", diag({1.0, 1.0, 2.0})},
                 {"beta", diag({-1.0, -1.0, 1.0})},
                 {"nice_position", true},
                 {"commands", {"ricci", "fit", "battery", "stratify", "extend:unimodular"}}}}});
}

AlgebraDocument heis3_ip() {
  auto d = make("heis3_ip", 0, 0, 3, {{0, 1, 2, 1.0}},
                {{"description", "heis3 with a non-orthonormal basis: ip = [[2,1,0],[1,2,0],[0,0,1]]"},
                 {"expect",
                  {{"classification", "nilsoliton"},
                   {"nice_position", true},
                   {"commands", {"ricci", "fit", "battery", "stratify", "extend:unimodular"}}}}});
  Matrix ip(3, 3);
  ip << 2, 1, 0, 1, 2, 0, 0, 0, 1;
  d.ip = ip;
  return d;
}

AlgebraDocument heis3_r() {
  return make("heis3_r", 0, 0, 4, {{0, 1, 2, 1.0}},
              {{"description", "heis3 + R, a decomposable 2-step nilpotent algebra"},
               {"expect",
                {{"ricci", diag({-0.5, -0.5, 0.5, 0.0})},
                 {"classification", "nilsoliton"},
                 {"c", -1.5},
                 {"d1", diag({1.0, 1.0, 2.0, 1.5})},
                 {"beta", diag({-1.0, -1.0, 1.0, 0.0})},
                 {"nice_position", true},
                 {"commands", {"ricci", "fit", "battery", "stratify", "extend:unimodular"}}}}});
}

AlgebraDocument fil4() {
  return make("fil4", 0, 0, 4, {{0, 1, 2, 1.0}, {0, 2, 3, 1.0}},
              {{"description", "4-dimensional filiform algebra [X0,X1] = X2, [X0,X2] = X3"},
               {"expect",
                {{"classification", "nilsoliton"},
                 {"c", -1.5},
                 {"d1", diag({0.5, 1.0, 1.5, 2.0})},
                 {"beta", diag({-1.0, -0.5, 0.0, 0.5})},
                 {"nice_position", true},
                 {"commands", {"ricci", "fit", "battery", "stratify", "extend:unimodular"}}}}});
}

AlgebraDocument so3() {
  return make("so3", 0, 3, 0, {{0, 1, 2, 1.0}, {0, 2, 1, -1.0}, {1, 2, 0, 1.0}},
              {{"description", "so(3) with the bi-invariant metric, a compact Einstein control"},
               {"expect",
                {{"ricci", diag({0.5, 0.5, 0.5})},
                 {"classification", "einstein"},
                 {"c", 0.5},
                 {"commands", {"ricci", "fit", "battery"}}}}});
}

AlgebraDocument sl2r_so2() {
  return make("sl2r_so2", 1, 2, 0, {{0, 1, 2, 1.0}, {0, 2, 1, -1.0}, {1, 2, 0, -1.0}},
              {{"description", "sl(2,R) = so(2) + p, the hyperbolic plane as a symmetric space"},
               {"expect",
                {{"ricci", diag({-1.0, -1.0})},
                 {"classification", "einstein"},
                 {"c", -1.0},
                 {"commands", {"ricci", "fit", "battery"}}}}});
}

AlgebraDocument solv12() {
  return make("solv12", 0, 1, 2, {{0, 1, 1, 1.0}, {0, 2, 2, 2.0}},
              {{"description", "R a + R^2 with ad a = diag(1, 2)"},
               {"expect",
                {{"ricci", diag({-5.0, -3.0, -6.0})},
                 {"classification", "algebraic-soliton"},
                 {"c", -5.0},
                 {"commands", {"ricci", "fit", "battery", "extend:nonunimodular", "extend:restrict"}}}}});
}

AlgebraDocument cplxhyp2() {
  return make("cplxhyp2", 0, 1, 3, {{0, 1, 1, 0.5}, {0, 2, 2, 0.5}, {0, 3, 3, 1.0}, {1, 2, 3, 1.0}},
              {{"description", "complex hyperbolic plane: R A + heis3 with ad A = diag(1/2, 1/2, 1)"},
               {"expect",
                {{"ricci", diag({-1.5, -1.5, -1.5, -1.5})},
                 {"classification", "einstein"},
                 {"c", -1.5},
                 {"beta", diag({-1.0, -1.0, 1.0})},
                 {"nice_position", true},
                 {"commands", {"ricci", "fit", "battery", "stratify", "extend:nonunimodular", "extend:restrict"}}}}});
}

AlgebraDocument cn7() {
  return make("cn7", 0, 0, 7,
              {{0, 1, 2, 1.0},
               {0, 2, 3, 1.0},
               {0, 3, 4, 1.0},
               {0, 4, 5, 1.0},
               {0, 5, 6, 1.0},
               {1, 2, 5, -1.0},
               {1, 2, 6, 1.0},
               {1, 3, 6, -1.0}},
              {{"description",
                "7-dimensional characteristically nilpotent algebra (every derivation is nilpotent), "
                "so no nilsoliton metric exists; negative control for the fit"},
               {"expect",
                {{"classification", "not-detected"},
                 {"fit_residual_min", 1e-3},
                 {"commands", {"ricci", "stratify"}}}}});
}

ConstructionDocument build_doc(std::string name, double c, AlgebraTensor nil, std::vector<Matrix> theta,
                               Json meta) {
  ConstructionDocument doc;
  doc.name = std::move(name);
  doc.data.c = c;
  doc.data.nil = std::move(nil);
  doc.data.reductive = AlgebraTensor(static_cast<int>(theta.size()));
  doc.data.theta = std::move(theta);
  doc.meta = std::move(meta);
  return doc;
}

ConstructionDocument build_solv12() {
  return build_doc("build_solv12", -5.0, AlgebraTensor(2), {Matrix(Eigen::Vector2d(1.0, 2.0).asDiagonal())},
                   {{"description", "R a acting on R^2 by diag(1, 2); rebuilds solv12"},
                    {"expect", {{"classification", "algebraic-soliton"}, {"ricci", diag({-5.0, -3.0, -6.0})}}}});
}

ConstructionDocument build_cplxhyp2() {
  return build_doc("build_cplxhyp2", -1.5, AlgebraTensor(3, {{0, 1, 2, 1.0}}),
                   {Matrix(Eigen::Vector3d(0.5, 0.5, 1.0).asDiagonal())},
                   {{"description", "R a acting on heis3 by diag(1/2, 1/2, 1); Einstein"},
                    {"expect", {{"classification", "einstein"}, {"ricci", diag({-1.5, -1.5, -1.5, -1.5})}}}});
}

ConstructionDocument build_so3() {
  ConstructionDocument doc;
  doc.name = "build_so3";
  doc.data.c = -1.0;
  doc.data.nil = AlgebraTensor(0);
  doc.data.reductive = AlgebraTensor(3, {{0, 1, 2, 1.0}, {0, 2, 1, -1.0}, {1, 2, 0, 1.0}});
  doc.data.theta = {Matrix(0, 0), Matrix(0, 0), Matrix(0, 0)};
  doc.meta = {{"description", "so(3) acting on n = 0: Ric_u = I/2 is not cI with c < 0; must be refused"},
              {"expect", {{"build_error", "c3"}}}};
  return doc;
}

AlgebraDocument named_abelian(int n) {
  auto d = abelian_document(n);
  d.meta = {{"description", "abelian R^" + std::to_string(n) + ", flat"},
            {"expect",
             {{"ricci", Json(std::vector<double>(n, 0.0))},
              {"classification", "einstein"},
              {"c", 0.0},
              {"commands", {"ricci", "fit"}}}}};
  return d;
}

AlgebraDocument named_hyperbolic(int n) {
  auto d = hyperbolic_document(n);
  const double c = -(n - 1.0);
  d.meta = {{"description", "real hyperbolic space of dimension " + std::to_string(n)},
            {"expect",
             {{"ricci", Json(std::vector<double>(n, c))},
              {"classification", "einstein"},
              {"c", c},
              {"commands", {"ricci", "fit", "battery", "extend:nonunimodular", "extend:restrict"}}}}};
  return d;
}

const std::map<std::string, std::function<CatalogEntry()>>& registry() {
  static const std::map<std::string, std::function<CatalogEntry()>> r = [] {
    std::map<std::string, std::function<CatalogEntry()>> m;
    m["abelian3"] = [] { return named_abelian(3); };
    m["abelian4"] = [] { return named_abelian(4); };
    m["heis3"] = heis3;
    m["heis3_ip"] = heis3_ip;
    m["heis3_r"] = heis3_r;
    m["fil4"] = fil4;
    m["so3"] = so3;
    m["sl2r_so2"] = sl2r_so2;
    for (int n = 2; n <= 6; ++n) m["hyp" + std::to_string(n)] = [n] { return named_hyperbolic(n); };
    m["solv12"] = solv12;
    m["cplxhyp2"] = cplxhyp2;
    m["cn7"] = cn7;
    m["build_solv12"] = build_solv12;
    m["build_cplxhyp2"] = build_cplxhyp2;
    m["build_so3"] = build_so3;
    return m;
  }();
  return r;
}

}  // namespace

AlgebraDocument abelian_document(int n) { return make("abelian" + std::to_string(n), 0, 0, n, {}, Json::object()); }

AlgebraDocument hyperbolic_document(int n) {
  if (n < 2) throw PreconditionError("hyperbolic space needs dimension >= 2");
  std::vector<StructureConstant> b;
  for (int i = 1; i < n; ++i) b.push_back({0, i, i, 1.0});
  return make("hyp" + std::to_string(n), 0, 1, n - 1, std::move(b), Json::object());
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

CatalogEntry catalog_entry(const std::string& name) {
  const auto& r = registry();
  const auto it = r.find(name);
  if (it == r.end()) throw ParseError("unknown catalog entry '" + name + "'");
  return it->second();
}

Json to_json(const CatalogEntry& entry) {
  return std::visit([](const auto& doc) { return to_json(doc); }, entry);
}

const std::string& entry_name(const CatalogEntry& entry) {
  return std::visit([](const auto& doc) -> const std::string& { return doc.name; }, entry);
}

const Json& entry_meta(const CatalogEntry& entry) {
  return std::visit([](const auto& doc) -> const Json& { return doc.meta; }, entry);
}

}  // namespace homsol::io
