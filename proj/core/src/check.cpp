#include "homsol/check.hpp"
#include "homsol/types.hpp"

#include <algorithm>
#include <cmath>

namespace homsol {

bool Tolerance::accepts(double r, double scale) const {
  return std::isfinite(r) && r <= residual * std::max(1.0, std::abs(scale));
}

namespace {
std::string summarize(const std::vector<Violation>& violations) {
  std::string out = "validation failed:";
  for (const auto& v : violations) out += " [" + v.code + ": " + v.detail + "]";
  return out;
}
}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(summarize(violations)), violations_(std::move(violations)) {}

Check make_check(std::string name, std::string identity, double value, double tolerance,
                 bool pass, std::string note) {
  Check c;
  c.name = std::move(name);
  c.identity = std::move(identity);
  c.value = value;
  c.tolerance = tolerance;
  c.pass = pass;
  c.note = std::move(note);
  return c;
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.pass || c.informational; });
}

}  // namespace homsol
