#include "eqgs/framework_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "eqgs/error.hpp"

namespace eqgs {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, (where.empty() ? "/" : where) + ": " + what);
}

const json& field(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.is_object()) parse_fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where, "missing field '" + key + "'");
  return *it;
}

std::string get_string(const json& obj, const std::string& where, const std::string& key) {
  const json& v = field(obj, where, key);
  if (!v.is_string()) parse_fail(where + "/" + key, "expected a string");
  return v.get<std::string>();
}

double get_number(const json& obj, const std::string& where, const std::string& key) {
  const json& v = field(obj, where, key);
  if (!v.is_number()) parse_fail(where + "/" + key, "expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& where, const std::string& key) {
  const json& v = field(obj, where, key);
  if (!v.is_number_integer()) parse_fail(where + "/" + key, "expected an integer");
  return v.get<int>();
}

const json& get_array(const json& obj, const std::string& where, const std::string& key) {
  const json& v = field(obj, where, key);
  if (!v.is_array()) parse_fail(where + "/" + key, "expected an array");
  return v;
}

Index lookup(const std::map<std::string, Index>& ids, const std::string& id,
             const std::string& where, const char* what) {
  auto it = ids.find(id);
  if (it == ids.end())
    throw Error(ErrorKind::InvalidInput, where + ": unknown " + std::string(what) + " '" + id + "'");
  return it->second;
}

GroupBlock parse_group(const json& g, const std::map<std::string, Index>& vertex_index, Index nv) {
  const std::string where = "/group";
  GroupBlock b;
  const std::string kind = get_string(g, where, "kind");
  if (kind == "cyclic") b.kind = GroupKind::Cyclic;
  else if (kind == "dihedral") b.kind = GroupKind::Dihedral;
  else parse_fail(where + "/kind", "expected 'cyclic' or 'dihedral'");
  b.m = get_int(g, where, "m");
  if (g.contains("mirror_axis_deg")) b.mirror_axis_deg = get_number(g, where, "mirror_axis_deg");
  const json& gens = get_array(g, where, "generators");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string w = where + "/generators/" + std::to_string(i);
    const std::string name = get_string(gens[i], w, "name");
    const json& map = field(gens[i], w, "vertex_map");
    if (!map.is_object()) parse_fail(w + "/vertex_map", "expected an object");
    std::vector<Index> perm(nv, -1);
    for (auto it = map.begin(); it != map.end(); ++it) {
      const std::string mw = w + "/vertex_map/" + it.key();
      if (!it.value().is_string()) parse_fail(mw, "expected a vertex id");
      perm[lookup(vertex_index, it.key(), mw, "vertex")] =
          lookup(vertex_index, it.value().get<std::string>(), mw, "vertex");
    }
    for (Index v = 0; v < nv; ++v)
      if (perm[v] < 0)
        throw Error(ErrorKind::NotAnAction, w + "/vertex_map: a vertex has no image");
    if (!b.generators.emplace(name, std::move(perm)).second)
      throw Error(ErrorKind::NotAnAction, w + ": generator '" + name + "' given twice");
  }
  return b;
}

}  // namespace

FrameworkFile parse_framework(const json& doc) {
  if (!doc.is_object()) parse_fail("", "expected an object");
  FrameworkFile out;
  const int version = get_int(doc, "", "schema_version");
  if (version != 1) parse_fail("/schema_version", "unsupported schema version");
  if (doc.contains("name")) out.name = get_string(doc, "", "name");
  if (doc.contains("description")) out.description = get_string(doc, "", "description");

  std::vector<std::string> vertex_ids;
  std::vector<Point> positions;
  std::map<std::string, Index> vertex_index;
  const json& vs = get_array(doc, "", "vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string w = "/vertices/" + std::to_string(i);
    const std::string id = get_string(vs[i], w, "id");
    vertex_index.emplace(id, static_cast<Index>(i));
    vertex_ids.push_back(id);
    positions.emplace_back(get_number(vs[i], w, "x"), get_number(vs[i], w, "y"));
  }

  std::vector<EdgeSpec> edges;
  std::map<std::string, Index> edge_index;
  const json& es = get_array(doc, "", "edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string w = "/edges/" + std::to_string(i);
    EdgeSpec e;
    e.id = get_string(es[i], w, "id");
    e.u = lookup(vertex_index, get_string(es[i], w, "u"), w + "/u", "vertex");
    e.v = lookup(vertex_index, get_string(es[i], w, "v"), w + "/v", "vertex");
    edge_index.emplace(e.id, static_cast<Index>(i));
    edges.push_back(e);
  }

  std::vector<FaceSpec> faces;
  if (doc.contains("faces")) {
    const json& fs = get_array(doc, "", "faces");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const std::string w = "/faces/" + std::to_string(i);
      FaceSpec f;
      f.id = get_string(fs[i], w, "id");
      if (fs[i].contains("outer")) {
        if (!fs[i]["outer"].is_boolean()) parse_fail(w + "/outer", "expected a boolean");
        f.outer = fs[i]["outer"].get<bool>();
      }
      const json& cyc = get_array(fs[i], w, "edges");
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        const std::string cw = w + "/edges/" + std::to_string(k);
        f.cycle.push_back({lookup(edge_index, get_string(cyc[k], cw, "edge"), cw + "/edge", "edge"),
                           get_int(cyc[k], cw, "sign")});
      }
      faces.push_back(std::move(f));
    }
  }

  out.framework = make_framework(build_complex(vertex_ids, edges, faces), std::move(positions));
  if (doc.contains("group") && !doc["group"].is_null())
    out.group = parse_group(doc["group"], vertex_index, static_cast<Index>(vertex_ids.size()));
  if (doc.contains("expect")) out.expect = doc["expect"];
  return out;
}

FrameworkFile load_framework(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  return parse_framework(doc);
}

json framework_to_json(const FrameworkFile& file) {
  const auto& cx = *file.framework.complex;
  json doc = json::object();
  doc["schema_version"] = 1;
  doc["name"] = file.name;
  if (!file.description.empty()) doc["description"] = file.description;
  json vs = json::array();
  for (Index v = 0; v < cx.count(0); ++v)
    vs.push_back({{"id", cx.vertex_ids[v]},
                  {"x", file.framework.positions[v].x()},
                  {"y", file.framework.positions[v].y()}});
  doc["vertices"] = vs;
  json es = json::array();
  for (Index e = 0; e < cx.count(1); ++e)
    es.push_back({{"id", cx.edge_ids[e]},
                  {"u", cx.vertex_ids[cx.tail(e)]},
                  {"v", cx.vertex_ids[cx.head(e)]}});
  doc["edges"] = es;
  json fs = json::array();
  for (Index f = 0; f < cx.count(2); ++f) {
    json cyc = json::array();
    for (const auto& inc : cx.face_boundary[f])
      cyc.push_back({{"edge", cx.edge_ids[inc.cell]}, {"sign", inc.sign}});
    json face = {{"id", cx.face_ids[f]}, {"edges", cyc}};
    if (cx.outer_face && *cx.outer_face == f) face["outer"] = true;
    fs.push_back(face);
  }
  doc["faces"] = fs;
  if (file.group) {
    json g = json::object();
    g["kind"] = file.group->kind == GroupKind::Cyclic ? "cyclic" : "dihedral";
    g["m"] = file.group->m;
    if (file.group->kind == GroupKind::Dihedral) g["mirror_axis_deg"] = file.group->mirror_axis_deg;
    json gens = json::array();
    for (const auto& [name, perm] : file.group->generators) {
      json map = json::object();
      for (Index v = 0; v < cx.count(0); ++v) map[cx.vertex_ids[v]] = cx.vertex_ids[perm[v]];
      gens.push_back({{"name", name}, {"vertex_map", map}});
    }
    g["generators"] = gens;
    doc["group"] = g;
  }
  return doc;
}

std::shared_ptr<const CellAction> build_action(const Framework& fw, const GroupBlock& block) {
  auto group = std::make_shared<const Group>(build_group(block.kind, block.m, block.mirror_axis_deg));
  return std::make_shared<const CellAction>(induce_action(fw, group, block.generators));
}

}  // namespace eqgs
