#pragma once

// Subcommands of the eqgs tool. Each returns the process exit code:
// 0 success, 1 validation failure, 2 I/O or parse error, 3 internal
// invariant violation.

#include <ostream>
#include <string>

namespace eqgs {

/// Directory of the bundled sample frameworks.
std::string default_sample_dir();

/// Prints a JSON report of every problem found.
int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err);

struct AnalyzeArgs {
  std::string path;
  std::string json_out;  // empty: human summary only; "-": JSON on stdout
  bool no_group = false;
  bool merge_conjugates = false;
};

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);

struct ReciprocalArgs {
  std::string path;
  std::string irrep;  // label or 1-based index; empty means every irrep
  std::string svg_dir;
};

/// Writes one SVG per reciprocal basis element plus <name>_reciprocals.json.
int cmd_reciprocal(const ReciprocalArgs& args, std::ostream& out, std::ostream& err);

struct SelftestArgs {
  std::string samples_dir;  // empty: default_sample_dir()
  bool verbose = false;
};

int cmd_selftest(const SelftestArgs& args, std::ostream& out, std::ostream& err);

}  // namespace eqgs
