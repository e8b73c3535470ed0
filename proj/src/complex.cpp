#include "eqgs/complex.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "eqgs/error.hpp"

namespace eqgs {

Index CellComplex::count(int dim) const {
  switch (dim) {
    case 0: return static_cast<Index>(vertex_ids.size());
    case 1: return static_cast<Index>(edge_ids.size());
    case 2: return static_cast<Index>(face_ids.size());
    default: return 0;
  }
}

Index CellComplex::tail(Index e) const {
  for (const auto& inc : edge_boundary[e])
    if (inc.sign < 0) return inc.cell;
  throw Error(ErrorKind::InternalInvariant, "edge " + edge_ids[e] + " has no tail");
}

Index CellComplex::head(Index e) const {
  for (const auto& inc : edge_boundary[e])
    if (inc.sign > 0) return inc.cell;
  throw Error(ErrorKind::InternalInvariant, "edge " + edge_ids[e] + " has no head");
}

int CellComplex::incidence(int dim_d, Index c, Index d) const {
  const auto& bd = dim_d == 1 ? edge_boundary[d] : face_boundary[d];
  int s = 0;
  for (const auto& inc : bd)
    if (inc.cell == c) s += inc.sign;
  return s;
}

std::vector<std::vector<Incidence>> CellComplex::edge_cofaces() const {
  std::vector<std::vector<Incidence>> out(edge_ids.size());
  for (Index f = 0; f < count(2); ++f)
    for (const auto& inc : face_boundary[f]) out[inc.cell].push_back({f, inc.sign});
  return out;
}

const std::string& CellComplex::id(int dim, Index c) const {
  return dim == 0 ? vertex_ids[c] : dim == 1 ? edge_ids[c] : face_ids[c];
}

std::optional<Index> CellComplex::find(int dim, const std::string& name) const {
  const auto& ids = dim == 0 ? vertex_ids : dim == 1 ? edge_ids : face_ids;
  auto it = std::find(ids.begin(), ids.end(), name);
  if (it == ids.end()) return std::nullopt;
  return static_cast<Index>(it - ids.begin());
}

namespace {

void require_unique(const std::vector<std::string>& ids, const char* what) {
  std::set<std::string> seen;
  for (const auto& s : ids)
    if (!seen.insert(s).second)
      throw Error(ErrorKind::InvalidInput, std::string("duplicate ") + what + " id '" + s + "'");
}

}  // namespace

CellComplex build_complex(std::vector<std::string> vertex_ids, const std::vector<EdgeSpec>& edges,
                          const std::vector<FaceSpec>& faces) {
  CellComplex cx;
  cx.vertex_ids = std::move(vertex_ids);
  require_unique(cx.vertex_ids, "vertex");
  const Index nv = cx.count(0);

  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= nv || e.v < 0 || e.v >= nv)
      throw Error(ErrorKind::InvalidInput, "edge '" + e.id + "' references a missing vertex");
    if (e.u == e.v) throw Error(ErrorKind::InvalidInput, "edge '" + e.id + "' is a loop");
    cx.edge_ids.push_back(e.id);
    cx.edge_boundary.push_back({{e.u, -1}, {e.v, +1}});
  }
  require_unique(cx.edge_ids, "edge");

  std::vector<int> uses(edges.size(), 0);
  for (const auto& face : faces) {
    const Index f = cx.count(2);
    if (face.cycle.empty()) throw Error(ErrorKind::BadCycle, "face '" + face.id + "' is empty");
    std::set<Index> in_face;
    for (const auto& inc : face.cycle) {
      if (inc.cell < 0 || inc.cell >= cx.count(1))
        throw Error(ErrorKind::BadCycle, "face '" + face.id + "' references a missing edge");
      if (inc.sign != 1 && inc.sign != -1)
        throw Error(ErrorKind::BadCycle, "face '" + face.id + "' has a sign other than +-1");
      if (!in_face.insert(inc.cell).second)
        throw Error(ErrorKind::BadCycle,
                    "face '" + face.id + "' lists edge '" + cx.edge_ids[inc.cell] + "' twice");
    }
    const std::size_t n = face.cycle.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = face.cycle[i];
      const auto& b = face.cycle[(i + 1) % n];
      const Index end = a.sign > 0 ? edges[a.cell].v : edges[a.cell].u;
      const Index start = b.sign > 0 ? edges[b.cell].u : edges[b.cell].v;
      if (end != start)
        throw Error(ErrorKind::BadCycle, "face '" + face.id + "' is not closed between edges '" +
                                             cx.edge_ids[a.cell] + "' and '" +
                                             cx.edge_ids[b.cell] + "'");
    }
    for (const auto& inc : face.cycle)
      if (++uses[inc.cell] > 2)
        throw Error(ErrorKind::DanglingEdge,
                    "edge '" + cx.edge_ids[inc.cell] + "' lies in more than two faces");
    if (face.outer) {
      if (cx.outer_face)
        throw Error(ErrorKind::InvalidInput, "more than one face is flagged as outer");
      cx.outer_face = f;
    }
    cx.face_ids.push_back(face.id);
    cx.face_boundary.push_back(face.cycle);
  }
  require_unique(cx.face_ids, "face");

  auto report = validate(cx);
  if (!report.empty()) throw Error(ErrorKind::NonRegular, report.front());
  return cx;
}

std::vector<std::string> validate(const CellComplex& cx) {
  std::vector<std::string> out;
  const Index nv = cx.count(0);
  for (Index e = 0; e < cx.count(1); ++e) {
    const auto& bd = cx.edge_boundary[e];
    bool ok = bd.size() == 2;
    for (const auto& inc : bd) ok = ok && inc.cell >= 0 && inc.cell < nv;
    if (!ok) {
      out.push_back("Adjacency violated at " + cx.edge_ids[e]);
      continue;
    }
    if (bd[0].cell == bd[1].cell || bd[0].sign * bd[1].sign != -1)
      out.push_back("Directed Edges violated at " + cx.edge_ids[e]);
  }
  for (Index f = 0; f < cx.count(2); ++f) {
    std::map<Index, int> vertex_sum;
    bool ok = true;
    for (const auto& inc : cx.face_boundary[f]) {
      if (inc.cell < 0 || inc.cell >= cx.count(1) || cx.edge_boundary[inc.cell].size() != 2) {
        ok = false;
        break;
      }
      for (const auto& vb : cx.edge_boundary[inc.cell]) vertex_sum[vb.cell] += vb.sign * inc.sign;
    }
    if (!ok) {
      out.push_back("Adjacency violated at " + cx.face_ids[f]);
      continue;
    }
    for (const auto& [b, s] : vertex_sum)
      if (s != 0)
        out.push_back("Regularity violated at (" + cx.vertex_ids[b] + "," + cx.face_ids[f] + ")");
  }
  return out;
}

namespace {

// Empty string when sphere closed, otherwise the reason.
std::pair<ErrorKind, std::string> sphere_closure_problem(const CellComplex& cx) {
  if (cx.count(2) == 0) return {ErrorKind::NotSphereClosed, "complex has no faces"};
  if (!cx.outer_face) return {ErrorKind::NotSphereClosed, "no face is flagged as outer"};
  auto cof = cx.edge_cofaces();
  for (Index e = 0; e < cx.count(1); ++e) {
    if (cof[e].size() != 2)
      return {ErrorKind::DanglingEdge, "edge '" + cx.edge_ids[e] + "' lies in " +
                                           std::to_string(cof[e].size()) + " face(s), expected 2"};
    if (cof[e][0].sign + cof[e][1].sign != 0)
      return {ErrorKind::NotSphereClosed,
              "edge '" + cx.edge_ids[e] + "' has the same sign in both faces"};
  }
  const Index chi = cx.count(0) - cx.count(1) + cx.count(2);
  if (chi != 2)
    return {ErrorKind::NotSphereClosed, "V - E + F = " + std::to_string(chi) + ", expected 2"};
  return {ErrorKind::InvalidInput, ""};
}

}  // namespace

bool is_sphere_closed(const CellComplex& cx) { return sphere_closure_problem(cx).second.empty(); }

void require_sphere_closed(const CellComplex& cx) {
  auto [kind, msg] = sphere_closure_problem(cx);
  if (!msg.empty()) throw Error(kind, msg);
}

Point Framework::edge_vector(Index e) const {
  return positions[complex->head(e)] - positions[complex->tail(e)];
}

double Framework::diameter() const {
  if (positions.empty()) return 0.0;
  Point lo = positions.front(), hi = positions.front();
  for (const auto& p : positions) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

double face_signed_area2(const Framework& fw, Index f) {
  const auto& cx = *fw.complex;
  double a = 0.0;
  for (const auto& inc : cx.face_boundary[f]) {
    Point s = fw.positions[inc.sign > 0 ? cx.tail(inc.cell) : cx.head(inc.cell)];
    Point t = fw.positions[inc.sign > 0 ? cx.head(inc.cell) : cx.tail(inc.cell)];
    a += s.x() * t.y() - s.y() * t.x();
  }
  return a;
}

Framework make_framework(CellComplex complex, std::vector<Point> positions) {
  if (static_cast<Index>(positions.size()) != complex.count(0))
    throw Error(ErrorKind::InvalidInput, "position count does not match vertex count");
  for (const auto& p : positions)
    if (!std::isfinite(p.x()) || !std::isfinite(p.y()))
      throw Error(ErrorKind::InvalidInput, "non-finite vertex coordinate");
  Framework fw{std::make_shared<const CellComplex>(std::move(complex)), std::move(positions)};
  const double scale = std::max(fw.diameter(), 1e-300);
  for (Index e = 0; e < fw.complex->count(1); ++e)
    if (fw.edge_vector(e).norm() <= 1e-12 * scale)
      throw Error(ErrorKind::DegenerateEdge,
                  "edge '" + fw.complex->edge_ids[e] + "' has coincident endpoints");
  if (fw.complex->outer_face) {
    for (Index f = 0; f < fw.complex->count(2); ++f) {
      const double a = face_signed_area2(fw, f);
      const bool outer = f == *fw.complex->outer_face;
      if ((outer && a >= 0.0) || (!outer && a <= 0.0))
        throw Error(ErrorKind::BadOrientation,
                    "face '" + fw.complex->face_ids[f] + "' must be " +
                        (outer ? "clockwise (outer)" : "counterclockwise (interior)"));
    }
  }
  return fw;
}

DualGraph dual_graph(const Framework& fw) {
  const auto& cx = *fw.complex;
  require_sphere_closed(cx);
  DualGraph g;
  g.node_count = cx.count(2);
  g.adjacent_arcs.assign(g.node_count, {});
  auto cof = cx.edge_cofaces();
  for (Index e = 0; e < cx.count(1); ++e) {
    DualArc arc{e, 0, 0};
    for (const auto& inc : cof[e]) (inc.sign > 0 ? arc.plus_face : arc.minus_face) = inc.cell;
    g.arcs.push_back(arc);
    g.adjacent_arcs[arc.plus_face].push_back(e);
    g.adjacent_arcs[arc.minus_face].push_back(e);
  }
  std::vector<bool> seen(g.node_count, false);
  std::deque<Index> queue{0};
  seen[0] = true;
  Index reached = 1;
  while (!queue.empty()) {
    Index f = queue.front();
    queue.pop_front();
    for (Index e : g.adjacent_arcs[f]) {
      Index h = g.arcs[e].plus_face == f ? g.arcs[e].minus_face : g.arcs[e].plus_face;
      if (!seen[h]) {
        seen[h] = true;
        ++reached;
        queue.push_back(h);
      }
    }
  }
  if (reached != g.node_count) throw Error(ErrorKind::NotSphereClosed, "dual graph is disconnected");
  return g;
}

namespace {

double orient(const Point& a, const Point& b, const Point& c) {
  return (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
}

int sign_eps(double x, double eps) { return x > eps ? 1 : (x < -eps ? -1 : 0); }

// p lies on the closed segment [a,b], given that it is collinear with it.
bool within(const Point& a, const Point& b, const Point& p, double eps) {
  return p.x() >= std::min(a.x(), b.x()) - eps && p.x() <= std::max(a.x(), b.x()) + eps &&
         p.y() >= std::min(a.y(), b.y()) - eps && p.y() <= std::max(a.y(), b.y()) + eps;
}

// Strictly inside the segment, away from both endpoints.
bool interior_point(const Point& a, const Point& b, const Point& p, double eps) {
  return within(a, b, p, eps) && (p - a).norm() > eps && (p - b).norm() > eps;
}

}  // namespace

std::vector<CrossingPair> check_planarity(const Framework& fw) {
  const auto& cx = *fw.complex;
  const double scale = std::max(fw.diameter(), 1e-300);
  const double eps_len = 1e-10 * scale;
  const double eps_area = 1e-10 * scale * scale;
  std::vector<CrossingPair> out;
  for (Index i = 0; i < cx.count(1); ++i) {
    const Index a0 = cx.tail(i), a1 = cx.head(i);
    const Point &p = fw.positions[a0], &q = fw.positions[a1];
    for (Index j = i + 1; j < cx.count(1); ++j) {
      const Index b0 = cx.tail(j), b1 = cx.head(j);
      const Point &r = fw.positions[b0], &s = fw.positions[b1];
      const int o1 = sign_eps(orient(p, q, r), eps_area);
      const int o2 = sign_eps(orient(p, q, s), eps_area);
      const int o3 = sign_eps(orient(r, s, p), eps_area);
      const int o4 = sign_eps(orient(r, s, q), eps_area);
      const bool shared = a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1;
      bool hit = false;
      if (shared) {
        // Only a collinear overlap counts; meeting at the common endpoint is fine.
        if (o1 == 0 && o2 == 0) {
          hit = (b0 != a0 && b0 != a1 && interior_point(p, q, r, eps_len)) ||
                (b1 != a0 && b1 != a1 && interior_point(p, q, s, eps_len)) ||
                (a0 != b0 && a0 != b1 && interior_point(r, s, p, eps_len)) ||
                (a1 != b0 && a1 != b1 && interior_point(r, s, q, eps_len));
        }
      } else if (o1 * o2 < 0 && o3 * o4 < 0) {
        hit = true;
      } else {
        hit = (o1 == 0 && within(p, q, r, eps_len)) || (o2 == 0 && within(p, q, s, eps_len)) ||
              (o3 == 0 && within(r, s, p, eps_len)) || (o4 == 0 && within(r, s, q, eps_len));
      }
      if (hit) out.push_back({i, j});
    }
  }
  return out;
}

}  // namespace eqgs
