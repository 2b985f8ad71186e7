#include "homsol/io/document.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace homsol::io {

namespace {

void require_keys(const Json& j, const std::set<std::string>& required, const std::set<std::string>& optional,
                  const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
  for (const auto& key : required)
    if (!j.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
  for (const auto& [key, value] : j.items())
    if (!required.count(key) && !optional.count(key))
      throw ParseError(where + ": unknown key '" + key + "'");
}

int get_int(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = j.at(key);
  if (!v.is_number_integer()) throw ParseError(where + ": '" + key + "' must be an integer");
  const auto x = v.get<long long>();
  if (x < 0 || x > 4096) throw ParseError(where + ": '" + key + "' out of range");
  return static_cast<int>(x);
}

double get_double(const Json& j, const std::string& what) {
  if (!j.is_number()) throw ParseError(what + ": expected a number");
  return j.get<double>();
}

std::vector<StructureConstant> parse_bracket(const Json& j, int dim, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": 'bracket' must be a list");
  std::vector<StructureConstant> out;
  std::set<std::tuple<int, int, int>> seen;
  for (std::size_t n = 0; n < j.size(); ++n) {
    const std::string at = where + ": bracket[" + std::to_string(n) + "]";
    const Json& e = j[n];
    require_keys(e, {"i", "j", "k", "c"}, {}, at);
    const int i = get_int(e, "i", at), jj = get_int(e, "j", at), k = get_int(e, "k", at);
    const double c = get_double(e.at("c"), at + ".c");
    if (i >= dim || jj >= dim || k >= dim) throw ParseError(at + ": index out of range for dim " + std::to_string(dim));
    if (i >= jj) throw ParseError(at + ": entries require i < j");
    if (!seen.insert({i, jj, k}).second) throw ParseError(at + ": duplicate entry");
    if (c != 0.0) out.push_back({i, jj, k, c});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k); });
  return out;
}

Json bracket_to_json(const std::vector<StructureConstant>& entries) {
  Json b = Json::array();
  for (const auto& e : entries) b.push_back(Json{{"i", e.i}, {"j", e.j}, {"k", e.k}, {"c", e.c}});
  return b;
}

std::vector<StructureConstant> cleaned(const AlgebraTensor& t, double rel) {
  const double cut = rel * t.max_abs();
  std::vector<StructureConstant> out;
  for (const auto& e : t.entries())
    if (std::abs(e.c) > cut) out.push_back(e);
  return out;
}

std::optional<Matrix> parse_ip(const Json& j, const std::string& key, int p, const std::string& where) {
  if (!j.contains(key)) return std::nullopt;
  Matrix m = matrix_from_json(j.at(key), where + ": '" + key + "'");
  if (m.rows() != p || m.cols() != p)
    throw ParseError(where + ": '" + key + "' must be " + std::to_string(p) + "x" + std::to_string(p));
  return m;
}

bool is_identity(const Matrix& m) {
  return m.size() == 0 || (m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() == 0.0;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected a list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return Matrix(0, 0);
  if (!j[0].is_array()) throw ParseError(what + ": expected a list of rows");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError(what + ": rows have different lengths");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = get_double(row[static_cast<std::size_t>(c)], what);
  }
  return m;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

AlgebraDocument parse_document(const Json& j) {
  const std::string where = "document";
  require_keys(j, {"name", "dim", "dim_k", "dim_h", "dim_n", "bracket"}, {"ip", "meta"}, where);
  AlgebraDocument doc;
  if (!j.at("name").is_string()) throw ParseError(where + ": 'name' must be a string");
  doc.name = j.at("name").get<std::string>();
  doc.dim = get_int(j, "dim", where);
  doc.dim_k = get_int(j, "dim_k", where);
  doc.dim_h = get_int(j, "dim_h", where);
  doc.dim_n = get_int(j, "dim_n", where);
  if (doc.dim != doc.dim_k + doc.dim_h + doc.dim_n)
    throw ParseError(where + ": dim != dim_k + dim_h + dim_n");
  doc.bracket = parse_bracket(j.at("bracket"), doc.dim, where);
  doc.ip = parse_ip(j, "ip", doc.dim_h + doc.dim_n, where);
  if (j.contains("meta")) {
    if (!j.at("meta").is_object()) throw ParseError(where + ": 'meta' must be an object");
    doc.meta = j.at("meta");
  }
  return doc;
}

AlgebraDocument load_document(const std::string& path) { return parse_document(read_json_file(path)); }

Json to_json(const AlgebraDocument& doc) {
  Json j;
  j["name"] = doc.name;
  j["dim"] = doc.dim;
  j["dim_k"] = doc.dim_k;
  j["dim_h"] = doc.dim_h;
  j["dim_n"] = doc.dim_n;
  j["bracket"] = bracket_to_json(doc.bracket);
  if (doc.ip) j["ip"] = matrix_to_json(*doc.ip);
  if (!doc.meta.empty()) j["meta"] = doc.meta;
  return j;
}

MetricDecomposition validate(const AlgebraDocument& doc, const Tolerance& tol) {
  return MetricDecomposition(AlgebraTensor(doc.dim, doc.bracket), {doc.dim_k, doc.dim_h, doc.dim_n},
                             doc.ip.value_or(Matrix()), tol);
}

AlgebraDocument to_document(const std::string& name, const MetricDecomposition& d, Json meta) {
  const auto dims = d.dims();
  AlgebraDocument doc;
  doc.name = name;
  doc.dim = dims.g();
  doc.dim_k = dims.k;
  doc.dim_h = dims.h;
  doc.dim_n = dims.n;
  doc.bracket = cleaned(d.bracket(), d.tolerance().support);
  if (!is_identity(d.ip())) doc.ip = d.ip();
  doc.meta = std::move(meta);
  return doc;
}

bool is_construction(const Json& j) { return j.is_object() && j.contains("theta"); }

ConstructionDocument parse_construction(const Json& j) {
  const std::string where = "construction";
  require_keys(j, {"name", "c", "nil", "u", "theta"}, {"d1", "meta"}, where);
  ConstructionDocument doc;
  if (!j.at("name").is_string()) throw ParseError(where + ": 'name' must be a string");
  doc.name = j.at("name").get<std::string>();
  auto& data = doc.data;
  data.c = get_double(j.at("c"), where + ".c");

  const Json& nil = j.at("nil");
  require_keys(nil, {"dim", "bracket"}, {"ip"}, where + ".nil");
  const int n = get_int(nil, "dim", where + ".nil");
  data.nil = AlgebraTensor(n, parse_bracket(nil.at("bracket"), n, where + ".nil"));
  data.nil_ip = parse_ip(nil, "ip", n, where + ".nil").value_or(Matrix());

  const Json& u = j.at("u");
  require_keys(u, {"dim", "dim_k", "bracket"}, {"ip"}, where + ".u");
  const int du = get_int(u, "dim", where + ".u");
  data.dim_k = get_int(u, "dim_k", where + ".u");
  if (data.dim_k > du) throw ParseError(where + ".u: dim_k > dim");
  data.reductive = AlgebraTensor(du, parse_bracket(u.at("bracket"), du, where + ".u"));
  data.reductive_ip = parse_ip(u, "ip", du - data.dim_k, where + ".u").value_or(Matrix());

  const Json& theta = j.at("theta");
  if (!theta.is_array() || static_cast<int>(theta.size()) != du)
    throw ParseError(where + ": 'theta' must list one matrix per basis vector of u");
  for (std::size_t a = 0; a < theta.size(); ++a) {
    const std::string what = where + ".theta[" + std::to_string(a) + "]";
    Matrix t = n > 0 ? matrix_from_json(theta[a], what) : Matrix(0, 0);
    if (t.rows() != n || t.cols() != n) throw ParseError(what + ": must be dim(n) square");
    data.theta.push_back(std::move(t));
  }
  if (j.contains("d1")) {
    Matrix d1 = matrix_from_json(j.at("d1"), where + ".d1");
    if (d1.rows() != n || d1.cols() != n) throw ParseError(where + ".d1: must be dim(n) square");
    data.d1 = std::move(d1);
  }
  if (j.contains("meta")) {
    if (!j.at("meta").is_object()) throw ParseError(where + ": 'meta' must be an object");
    doc.meta = j.at("meta");
  }
  return doc;
}

Json to_json(const ConstructionDocument& doc) {
  const auto& data = doc.data;
  Json j;
  j["name"] = doc.name;
  j["c"] = data.c;
  Json nil;
  nil["dim"] = data.nil.dim();
  nil["bracket"] = bracket_to_json(data.nil.entries());
  if (!is_identity(data.nil_ip)) nil["ip"] = matrix_to_json(data.nil_ip);
  j["nil"] = nil;
  Json u;
  u["dim"] = data.reductive.dim();
  u["dim_k"] = data.dim_k;
  u["bracket"] = bracket_to_json(data.reductive.entries());
  if (!is_identity(data.reductive_ip)) u["ip"] = matrix_to_json(data.reductive_ip);
  j["u"] = u;
  Json theta = Json::array();
  for (const auto& t : data.theta) theta.push_back(matrix_to_json(t));
  j["theta"] = theta;
  if (data.d1) j["d1"] = matrix_to_json(*data.d1);
  if (!doc.meta.empty()) j["meta"] = doc.meta;
  return j;
}

}  // namespace homsol::io
