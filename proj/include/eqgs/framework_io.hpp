#pragma once

// Framework files (JSON):
//
//   { "schema_version": 1, "name": "...",
//     "vertices": [{"id", "x", "y"}],
//     "edges":    [{"id", "u", "v"}],                    // tail u, head v
//     "faces":    [{"id", "edges": [{"edge", "sign"}], "outer": true?}],
//     "group":    {"kind": "cyclic"|"dihedral", "m", "mirror_axis_deg"?,
//                  "generators": [{"name": "r"|"s", "vertex_map": {id: id}}]},
//     "expect":   {...} }                                 // optional, used by selftest
//
// Structural problems (bad JSON, wrong types, missing fields) raise Parse
// with a JSON pointer; semantic ones raise the module's own error kinds.

#include <optional>
#include <string>

#include <json.hpp>

#include "eqgs/complex.hpp"
#include "eqgs/equivariant.hpp"
#include "eqgs/groups.hpp"

namespace eqgs {

struct GroupBlock {
  GroupKind kind = GroupKind::Cyclic;
  int m = 1;
  double mirror_axis_deg = 90.0;
  GeneratorMaps generators;
};

struct FrameworkFile {
  std::string name;
  std::string description;
  Framework framework;
  std::optional<GroupBlock> group;
  nlohmann::json expect;  // null when absent
};

FrameworkFile parse_framework(const nlohmann::json& doc);

/// Reads and parses a file. Throws Io or Parse besides the semantic errors.
FrameworkFile load_framework(const std::string& path);

/// Inverse of parse_framework (without the expect block).
nlohmann::json framework_to_json(const FrameworkFile& file);

/// Builds the group and the induced action for a parsed group block.
std::shared_ptr<const CellAction> build_action(const Framework& fw, const GroupBlock& block);

}  // namespace eqgs
