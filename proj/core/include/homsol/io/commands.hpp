#pragma once

#include "homsol/io/catalog.hpp"
#include "homsol/io/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace homsol::io {

enum ExitCode : int { kExitOk = 0, kExitCheckFailure = 1, kExitInputError = 2 };

struct RunOptions {
  Tolerance tol;
  bool json = false;
  bool quiet = false;
  /// Holds the soliton constant fixed in the fits.
  std::optional<double> fixed_c;
  /// For `extend`: nonunimodular, restrict or unimodular.
  std::string variant;
  /// Output file for emitted documents; a directory for `catalog`.
  std::string out;
};

struct RunResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

const std::vector<std::string>& command_names();

/// A file path when it exists, otherwise a catalog name.
CatalogEntry resolve_input(const std::string& arg);

/// Runs one command on one input. Input errors propagate as exceptions.
Report run_command(const std::string& command, const CatalogEntry& input, const RunOptions& opts);

/// Full command line semantics: resolves inputs, renders the output and maps
/// errors to exit codes.
RunResult run(const std::string& command, const std::vector<std::string>& inputs, const RunOptions& opts);

}  // namespace homsol::io
