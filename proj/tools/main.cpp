#include "homsol/io/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

// HOMSOL_TOL sets the residual tolerance when --tol is not given.
std::optional<double> env_tolerance() {
  const char* v = std::getenv("HOMSOL_TOL");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const double x = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(x > 0.0)) throw CLI::ValidationError("HOMSOL_TOL", "not a positive number");
  return x;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ricci operators, soliton certificates and stratum data of metric Lie algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", homsol::io::tool_version());

  homsol::io::RunOptions opts;
  std::optional<double> tol;
  std::optional<double> fixed_c;
  std::vector<std::string> inputs;

  app.add_option("--tol", tol, "Residual tolerance (default 1e-9, or HOMSOL_TOL)")->check(CLI::PositiveNumber);
  app.add_flag("--json", opts.json, "Emit the report as one JSON object");
  app.add_flag("--quiet", opts.quiet, "Only print failures and the summary line");

  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {
      {"ricci", "Ricci operator and its terms"},
      {"fit", "Soliton and nilsoliton fits"},
      {"battery", "Structure conditions of a soliton certificate"},
      {"stratify", "Stratum label beta of the nilradical and its inequalities"},
      {"build", "Assemble a semidirect product from construction data"},
      {"extend", "Einstein and kernel constructions from an algebraic soliton"},
      {"catalog", "List, print or write the bundled examples"},
      {"verify-all", "Check every bundled example against its recorded expectations"},
  };
  for (const auto& s : specs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("inputs", inputs, "JSON file or catalog name");
    sub->add_option("--out,-o", opts.out, s.name == std::string("catalog") ? "Directory to write every entry to"
                                                                              : "File for an emitted document");
    if (s.name != std::string("catalog") && s.name != std::string("stratify") && s.name != std::string("ricci"))
      sub->add_option("--c", fixed_c, "Hold the soliton constant c fixed in the fits");
    if (s.name == std::string("extend"))
      sub->add_option("--variant", opts.variant, "nonunimodular, restrict or unimodular")
          ->check(CLI::IsMember({"nonunimodular", "restrict", "unimodular"}))
          ->required();
  }

  try {
    app.parse(argc, argv);
    if (tol) opts.tol.residual = *tol;
    else if (const auto env = env_tolerance()) opts.tol.residual = *env;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : homsol::io::kExitInputError;
  }
  opts.fixed_c = fixed_c;

  const std::string command = app.get_subcommands().front()->get_name();
  const auto result = homsol::io::run(command, inputs, opts);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
