#include "homsol/io/report.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>

#ifndef HOMSOL_VERSION_STRING
#define HOMSOL_VERSION_STRING "unknown"
#endif

namespace homsol::io {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt_value(const Json& v, const std::string& indent) {
  if (v.is_number()) return fmt(v.get<double>());
  if (v.is_array() && !v.empty() && v[0].is_array()) {
    std::string out;
    for (const auto& row : v) {
      out += "\n" + indent + "[";
      for (std::size_t c = 0; c < row.size(); ++c) out += (c ? ", " : "") + fmt_value(row[c], indent);
      out += "]";
    }
    return out;
  }
  if (v.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt_value(v[i], indent);
    return out + "]";
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object()) {
    std::string out;
    for (const auto& [k, x] : v.items()) out += "\n" + indent + k + " = " + fmt_value(x, indent + "  ");
    return out;
  }
  return v.dump();
}

}  // namespace

int Report::failed() const {
  int n = 0;
  for (const auto& c : checks)
    if (!c.pass && !c.informational) ++n;
  return n;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string tool_version() { return HOMSOL_VERSION_STRING; }

double cleaned(double v, double scale, double rel) {
  if (std::abs(v) <= rel * std::max(1.0, scale)) return 0.0;
  return v;
}

Matrix cleaned(const Matrix& m, double rel) {
  const double scale = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
  return m.unaryExpr([&](double v) { return cleaned(v, scale, rel); });
}

Json to_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["anchor"] = c.identity;
  j["value"] = c.value;
  j["tolerance"] = c.tolerance;
  j["pass"] = c.pass;
  j["informational"] = c.informational;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json to_json(const Report& r) {
  Json j;
  j["command"] = r.command;
  j["input"] = r.input;
  j["classification"] = r.classification;
  j["values"] = r.values;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = checks;
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (!r.document.is_null()) j["document"] = r.document;
  j["summary"] = {{"checks", r.checks.size()}, {"failed", r.failed()}, {"ok", r.ok()}};
  j["provenance"] = {{"input_hash", r.provenance.input_hash},
                     {"tool_version", r.provenance.tool_version},
                     {"tolerance",
                      {{"residual", r.provenance.tolerance.residual},
                       {"soliton", r.provenance.tolerance.soliton},
                       {"support", r.provenance.tolerance.support},
                       {"rank", r.provenance.tolerance.rank}}}};
  return j;
}

std::string render_text(const Report& r, bool quiet) {
  std::ostringstream os;
  if (!quiet) {
    os << r.command << " " << r.input << "\n";
    os << "classification: " << r.classification << "\n";
    if (!r.values.empty()) {
      os << "values:";
      for (const auto& [k, v] : r.values.items()) os << "\n  " << k << " = " << fmt_value(v, "    ");
      os << "\n";
    }
    if (!r.checks.empty()) os << "checks:\n";
    for (const auto& c : r.checks) {
      const char* status = c.pass ? "PASS" : (c.informational ? "INFO" : "FAIL");
      os << "  " << status << "  " << c.name << "  [" << c.identity << "]  value=" << fmt(c.value)
         << " tol=" << fmt(c.tolerance);
      if (!c.note.empty()) os << "  (" << c.note << ")";
      os << "\n";
    }
    for (const auto& n : r.notes) os << "note: " << n << "\n";
    if (!r.document.is_null()) os << "document:\n" << r.document.dump(2) << "\n";
  } else {
    for (const auto& c : r.checks)
      if (!c.pass && !c.informational)
        os << "FAIL  " << c.name << "  [" << c.identity << "]  value=" << fmt(c.value) << " tol=" << fmt(c.tolerance)
           << "\n";
  }
  os << r.input << ": " << r.checks.size() << " checks, " << r.failed() << " failed -> "
     << (r.ok() ? "ok" : "FAILED") << "\n";
  return os.str();
}

}  // namespace homsol::io
