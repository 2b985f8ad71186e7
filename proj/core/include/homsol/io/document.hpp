#pragma once

#include "homsol/constructions.hpp"
#include "homsol/metric_decomposition.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace homsol::io {

using Json = nlohmann::ordered_json;

/// Malformed input: unreadable file, invalid JSON, or a schema violation.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A metric reductive decomposition as stored on disk. Indices are 0-based
/// and refer to the basis k, h, n of g; `ip` is on p = h + n.
struct AlgebraDocument {
  std::string name;
  int dim = 0;
  int dim_k = 0;
  int dim_h = 0;
  int dim_n = 0;
  std::vector<StructureConstant> bracket;
  std::optional<Matrix> ip;
  Json meta = Json::object();
};

AlgebraDocument parse_document(const Json& j);
AlgebraDocument load_document(const std::string& path);
Json to_json(const AlgebraDocument& doc);

/// Builds the decomposition; throws ValidationError naming every violated
/// invariant.
MetricDecomposition validate(const AlgebraDocument& doc, const Tolerance& tol = {});

/// Document for a decomposition. Structure constants below the support
/// threshold are dropped and an identity `ip` is omitted.
AlgebraDocument to_document(const std::string& name, const MetricDecomposition& d, Json meta = Json::object());

/// Construction input on disk:
///   {name, c, nil: {dim, bracket, ip?}, d1?, u: {dim, dim_k, bracket, ip?}, theta, meta?}
/// with theta a list of dim(u) square matrices on n.
struct ConstructionDocument {
  std::string name;
  ConstructionData data;
  Json meta = Json::object();
};

ConstructionDocument parse_construction(const Json& j);
Json to_json(const ConstructionDocument& doc);

/// True when `j` looks like a construction document rather than an algebra.
bool is_construction(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& what);

/// Reads a JSON file; ParseError on I/O or syntax errors.
Json read_json_file(const std::string& path);

}  // namespace homsol::io
