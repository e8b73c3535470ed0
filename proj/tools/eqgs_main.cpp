#include <iostream>

#include <CLI11.hpp>

#include "eqgs/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Equivariant graphic statics of planar frameworks"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a framework file and its symmetry block");
  validate->add_option("file", validate_path, "Framework JSON")->required();

  eqgs::AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "Homology, Maxwell counts and per-irrep tables");
  analyze->add_option("file", analyze_args.path, "Framework JSON")->required();
  analyze->add_option("--json", analyze_args.json_out, "Write the analysis JSON here ('-' for stdout)");
  analyze->add_flag("--no-group", analyze_args.no_group, "Ignore the symmetry block");
  analyze->add_flag("--merge-conjugates", analyze_args.merge_conjugates,
                    "Combine conjugate irreps into real blocks");

  eqgs::ReciprocalArgs rec_args;
  auto* reciprocal = app.add_subcommand("reciprocal", "Render reciprocal diagram bases as SVG");
  reciprocal->add_option("file", rec_args.path, "Framework JSON")->required();
  reciprocal->add_option("--irrep", rec_args.irrep, "Irrep label or 1-based index");
  reciprocal->add_option("--svg", rec_args.svg_dir, "Output directory")->required();

  eqgs::SelftestArgs self_args;
  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite over the bundled samples");
  selftest->add_flag("--verbose,-v", self_args.verbose, "List every check");
  selftest->add_option("--samples", self_args.samples_dir, "Sample directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*validate) return eqgs::cmd_validate(validate_path, std::cout, std::cerr);
  if (*analyze) return eqgs::cmd_analyze(analyze_args, std::cout, std::cerr);
  if (*reciprocal) return eqgs::cmd_reciprocal(rec_args, std::cout, std::cerr);
  return eqgs::cmd_selftest(self_args, std::cout, std::cerr);
}
