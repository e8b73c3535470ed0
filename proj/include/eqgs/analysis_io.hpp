#pragma once

// Analysis results as a schema'd JSON document, written deterministically
// with every float printed to 17 significant digits.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqgs/framework_io.hpp"
#include "eqgs/statics.hpp"

namespace eqgs {

/// Column vectors of one basis; imaginary parts are all zero for real bases.
struct BasisBlock {
  std::string irrep;  // "all" when no group is used
  std::vector<std::vector<Complex>> vectors;
  bool operator==(const BasisBlock&) const = default;
};

struct IrrepRow {
  std::string label;
  int dim = 1;
  Index h0_force = 0;
  Index h1_force = 0;
  Index h1_position = 0;
  Index h2_position = 0;
  Index translations = 0;
  bool operator==(const IrrepRow&) const = default;
};

struct EulerRow {
  std::string cosheaf;  // "force", "constant", "position"
  std::vector<std::vector<int>> chain_multiplicity;     // [degree][irrep]
  std::vector<std::vector<int>> homology_multiplicity;  // [degree][irrep]
  std::vector<int> chain;
  std::vector<int> homology;
  bool operator==(const EulerRow&) const = default;
};

struct MergedBlock {
  std::vector<std::string> irreps;  // one label, or a conjugate pair
  std::vector<std::vector<double>> stresses;
  std::vector<std::vector<double>> reciprocals;
  bool operator==(const MergedBlock&) const = default;
};

struct AnalysisOutput {
  int schema_version = 1;
  std::string name;
  std::vector<std::string> edge_ids;
  std::vector<std::string> face_ids;
  Index h0_force = 0;
  Index h1_force = 0;
  std::optional<Index> h1_position;
  std::optional<Index> h2_position;
  Index maxwell_lhs = 0;
  Index maxwell_rhs = 0;
  std::optional<std::string> group_kind;
  int group_m = 0;
  std::vector<IrrepRow> irreps;
  std::vector<EulerRow> euler;
  std::vector<BasisBlock> stresses;     // per-edge coefficients
  std::vector<BasisBlock> reciprocals;  // per-face (x, y) pairs, flattened
  std::vector<MergedBlock> merged;

  bool operator==(const AnalysisOutput&) const = default;
};

struct AnalyzeOptions {
  bool use_group = true;
  bool merge_conjugates = false;
};

/// Runs the full pipeline on a parsed file.
AnalysisOutput analyze(const FrameworkFile& file, const AnalyzeOptions& options, const Tolerance& tol);

nlohmann::ordered_json to_json(const AnalysisOutput& a);
AnalysisOutput analysis_from_json(const nlohmann::json& j);

/// Serializes with sorted structure as given, floats at 17 significant digits.
std::string dump_deterministic(const nlohmann::ordered_json& j, int indent = 2);

/// Writes `text` to `path` through a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace eqgs
