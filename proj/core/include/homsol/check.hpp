#pragma once

#include <string>
#include <vector>

namespace homsol {

/// One numerical verification: a residual measured against a tolerance.
struct Check {
  std::string name;
  /// The identity being tested, written as a formula.
  std::string identity;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Informational checks are reported but never fail a run.
  bool informational = false;
  std::string note;
};

Check make_check(std::string name, std::string identity, double value, double tolerance,
                 bool pass, std::string note = {});

bool all_pass(const std::vector<Check>& checks);

}  // namespace homsol
