#include "eqgs/analysis_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "eqgs/error.hpp"

namespace eqgs {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

BasisBlock block_of(const std::string& label, const SubspaceBasis& b) {
  BasisBlock out{label, {}};
  for (Index c = 0; c < b.dim(); ++c) {
    std::vector<Complex> v(b.basis.rows());
    for (Index r = 0; r < b.basis.rows(); ++r) v[r] = b.basis(r, c);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<double>> real_columns(const SubspaceBasis& b) {
  std::vector<std::vector<double>> out;
  for (Index c = 0; c < b.dim(); ++c) {
    std::vector<double> v(b.basis.rows());
    for (Index r = 0; r < b.basis.rows(); ++r) v[r] = b.basis(r, c).real();
    out.push_back(std::move(v));
  }
  return out;
}

EulerRow euler_row(const std::string& name, const HomologyDecomposition& d) {
  EulerRow row;
  row.cosheaf = name;
  for (int i = 0; i < 3; ++i) {
    row.chain_multiplicity.push_back(d.chain_multiplicity[i]);
    row.homology_multiplicity.push_back(d.homology_multiplicity[i]);
  }
  row.chain = d.euler_chain;
  row.homology = d.euler_homology;
  return row;
}

}  // namespace

AnalysisOutput analyze(const FrameworkFile& file, const AnalyzeOptions& options, const Tolerance& tol) {
  const Framework& fw = file.framework;
  const auto& cx = *fw.complex;
  AnalysisOutput a;
  a.name = file.name;
  a.edge_ids = cx.edge_ids;
  a.face_ids = cx.face_ids;

  const MaxwellCount mc = maxwell_check(fw, tol);
  a.h0_force = mc.h0;
  a.h1_force = mc.h1;
  a.maxwell_lhs = mc.lhs;
  a.maxwell_rhs = mc.rhs;

  const bool closed = is_sphere_closed(cx);
  const bool grouped = options.use_group && file.group.has_value();
  if (grouped && !closed) require_sphere_closed(cx);

  if (!closed) {
    a.stresses.push_back(block_of("all", self_stresses(fw, tol)));
    return a;
  }

  const GraphicStaticsSequence seq = build_graphic_statics_sequence(fw, tol);
  const HomologyBasis h1p = homology(seq.position_chain, 1, tol);
  const HomologyBasis h2p = homology(seq.position_chain, 2, tol);
  a.h1_position = h1p.dim();
  a.h2_position = h2p.dim();

  if (!grouped) {
    a.stresses.push_back(block_of("all", homology(seq.force_chain, 1, tol).representatives));
    a.reciprocals.push_back(block_of("all", h2p.representatives));
    return a;
  }

  const SymmetricStatics sym = build_symmetric_statics(seq, build_action(fw, *file.group), tol);
  const GraphicStaticsReport report = symmetric_graphic_statics(seq, sym, tol);
  a.group_kind = file.group->kind == GroupKind::Cyclic ? "cyclic" : "dihedral";
  a.group_m = file.group->m;
  for (const auto& s : report.irreps) {
    a.irreps.push_back({s.label, s.dim, s.h0_force, s.h1_force, s.h1_position, s.h2_position,
                        s.translations});
    a.stresses.push_back(block_of(s.label, s.stresses));
    a.reciprocals.push_back(block_of(s.label, s.reciprocals));
  }
  a.euler.push_back(euler_row("force", report.force));
  a.euler.push_back(euler_row("constant", report.constant));
  a.euler.push_back(euler_row("position", report.position));
  if (options.merge_conjugates) {
    for (const auto& m : merge_conjugates(report, sym.table, tol)) {
      MergedBlock b;
      b.irreps.push_back(sym.table.irreps[m.first].label);
      if (m.second != m.first) b.irreps.push_back(sym.table.irreps[m.second].label);
      b.stresses = real_columns(m.stresses);
      b.reciprocals = real_columns(m.reciprocals);
      a.merged.push_back(std::move(b));
    }
  }
  return a;
}

namespace {

ordered_json complex_vector(const std::vector<Complex>& v) {
  ordered_json re = ordered_json::array(), im = ordered_json::array();
  for (const auto& z : v) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return ordered_json{{"re", re}, {"im", im}};
}

ordered_json blocks_json(const std::vector<BasisBlock>& blocks) {
  ordered_json out = ordered_json::array();
  for (const auto& b : blocks) {
    ordered_json vs = ordered_json::array();
    for (const auto& v : b.vectors) vs.push_back(complex_vector(v));
    out.push_back(ordered_json{{"irrep", b.irrep}, {"vectors", vs}});
  }
  return out;
}

std::vector<BasisBlock> blocks_from(const json& j) {
  std::vector<BasisBlock> out;
  for (const auto& b : j) {
    BasisBlock block{b.at("irrep").get<std::string>(), {}};
    for (const auto& v : b.at("vectors")) {
      const auto re = v.at("re").get<std::vector<double>>();
      const auto im = v.at("im").get<std::vector<double>>();
      if (re.size() != im.size()) throw Error(ErrorKind::Parse, "real and imaginary parts differ in length");
      std::vector<Complex> z(re.size());
      for (std::size_t k = 0; k < re.size(); ++k) z[k] = {re[k], im[k]};
      block.vectors.push_back(std::move(z));
    }
    out.push_back(std::move(block));
  }
  return out;
}

}  // namespace

ordered_json to_json(const AnalysisOutput& a) {
  ordered_json j;
  j["schema_version"] = a.schema_version;
  j["name"] = a.name;
  j["edge_ids"] = a.edge_ids;
  j["face_ids"] = a.face_ids;
  ordered_json dims;
  dims["h0_force"] = a.h0_force;
  dims["h1_force"] = a.h1_force;
  if (a.h1_position) dims["h1_position"] = *a.h1_position;
  if (a.h2_position) dims["h2_position"] = *a.h2_position;
  j["homology"] = dims;
  j["maxwell"] = ordered_json{{"lhs", a.maxwell_lhs}, {"rhs", a.maxwell_rhs}};
  if (a.group_kind) {
    j["group"] = ordered_json{{"kind", *a.group_kind}, {"m", a.group_m}};
    ordered_json rows = ordered_json::array();
    for (const auto& r : a.irreps)
      rows.push_back(ordered_json{{"label", r.label},
                                  {"dim", r.dim},
                                  {"h0_force", r.h0_force},
                                  {"h1_force", r.h1_force},
                                  {"h1_position", r.h1_position},
                                  {"h2_position", r.h2_position},
                                  {"translations", r.translations}});
    j["irreps"] = rows;
    ordered_json eul = ordered_json::array();
    for (const auto& e : a.euler)
      eul.push_back(ordered_json{{"cosheaf", e.cosheaf},
                                 {"chain_multiplicity", e.chain_multiplicity},
                                 {"homology_multiplicity", e.homology_multiplicity},
                                 {"chain", e.chain},
                                 {"homology", e.homology}});
    j["symmetric_euler"] = eul;
  }
  j["stresses"] = blocks_json(a.stresses);
  j["reciprocals"] = blocks_json(a.reciprocals);
  if (!a.merged.empty()) {
    ordered_json m = ordered_json::array();
    for (const auto& b : a.merged)
      m.push_back(ordered_json{{"irreps", b.irreps}, {"stresses", b.stresses}, {"reciprocals", b.reciprocals}});
    j["merged"] = m;
  }
  return j;
}

AnalysisOutput analysis_from_json(const json& j) {
  try {
    AnalysisOutput a;
    a.schema_version = j.at("schema_version").get<int>();
    if (a.schema_version != 1) throw Error(ErrorKind::Parse, "unsupported schema version");
    a.name = j.at("name").get<std::string>();
    a.edge_ids = j.at("edge_ids").get<std::vector<std::string>>();
    a.face_ids = j.at("face_ids").get<std::vector<std::string>>();
    const json& dims = j.at("homology");
    a.h0_force = dims.at("h0_force").get<Index>();
    a.h1_force = dims.at("h1_force").get<Index>();
    if (dims.contains("h1_position")) a.h1_position = dims["h1_position"].get<Index>();
    if (dims.contains("h2_position")) a.h2_position = dims["h2_position"].get<Index>();
    a.maxwell_lhs = j.at("maxwell").at("lhs").get<Index>();
    a.maxwell_rhs = j.at("maxwell").at("rhs").get<Index>();
    if (j.contains("group")) {
      a.group_kind = j["group"].at("kind").get<std::string>();
      a.group_m = j["group"].at("m").get<int>();
      for (const auto& r : j.at("irreps"))
        a.irreps.push_back({r.at("label").get<std::string>(), r.at("dim").get<int>(),
                            r.at("h0_force").get<Index>(), r.at("h1_force").get<Index>(),
                            r.at("h1_position").get<Index>(), r.at("h2_position").get<Index>(),
                            r.at("translations").get<Index>()});
      for (const auto& e : j.at("symmetric_euler"))
        a.euler.push_back({e.at("cosheaf").get<std::string>(),
                           e.at("chain_multiplicity").get<std::vector<std::vector<int>>>(),
                           e.at("homology_multiplicity").get<std::vector<std::vector<int>>>(),
                           e.at("chain").get<std::vector<int>>(), e.at("homology").get<std::vector<int>>()});
    }
    a.stresses = blocks_from(j.at("stresses"));
    a.reciprocals = blocks_from(j.at("reciprocals"));
    if (j.contains("merged"))
      for (const auto& b : j["merged"])
        a.merged.push_back({b.at("irreps").get<std::vector<std::string>>(),
                            b.at("stresses").get<std::vector<std::vector<double>>>(),
                            b.at("reciprocals").get<std::vector<std::vector<double>>>()});
    return a;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("analysis document: ") + e.what());
  }
}

namespace {

void emit(std::string& out, const ordered_json& j, int indent, int depth) {
  const std::string pad(indent * (depth + 1), ' ');
  const std::string close_pad(indent * depth, ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case ordered_json::value_t::number_float: {
      double x = j.get<double>();
      if (x == 0.0) x = 0.0;  // no "-0" in the output
      if (!std::isfinite(x)) throw Error(ErrorKind::InternalInvariant, "non-finite value in output");
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && v.is_primitive();
      out += "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",";
        if (flat) {
          if (!first && indent > 0) out += " ";
        } else {
          out += nl;
          out += pad;
        }
        emit(out, v, indent, depth + 1);
        first = false;
      }
      if (!flat) {
        out += nl;
        out += close_pad;
      }
      out += "]";
      return;
    }
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",";
        out += nl;
        out += pad;
        out += ordered_json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        emit(out, it.value(), indent, depth + 1);
        first = false;
      }
      out += nl;
      out += close_pad;
      out += "}";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_deterministic(const ordered_json& j, int indent) {
  std::string out;
  emit(out, j, indent, 0);
  out += "\n";
  return out;
}

void write_file_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot move output into place at '" + path + "'");
  }
}

}  // namespace eqgs
