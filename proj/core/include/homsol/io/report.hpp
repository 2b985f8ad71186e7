#pragma once

#include "homsol/check.hpp"
#include "homsol/io/document.hpp"

#include <string>
#include <vector>

namespace homsol::io {

struct Provenance {
  /// FNV-1a 64 of the compact JSON of the input, in hex.
  std::string input_hash;
  std::string tool_version;
  Tolerance tolerance;
};

/// The outcome of one command on one input.
struct Report {
  std::string command;
  std::string input;
  std::string classification;
  /// Named results (operators, constants), in insertion order.
  Json values = Json::object();
  std::vector<Check> checks;
  std::vector<std::string> notes;
  /// A document produced by the command (null when none).
  Json document;
  Provenance provenance;

  int failed() const;
  bool ok() const { return failed() == 0; }
};

std::string fnv1a_hex(const std::string& bytes);
std::string tool_version();

/// Rounds entries below `rel * max(1, max |m|)` to zero and clears negative
/// zeros, so printed operators are stable.
Matrix cleaned(const Matrix& m, double rel = 1e-12);
double cleaned(double v, double scale = 1.0, double rel = 1e-12);

Json to_json(const Check& c);
Json to_json(const Report& r);
std::string render_text(const Report& r, bool quiet);

}  // namespace homsol::io
