#pragma once

// Regular 2-dimensional cell complexes with signed incidence, planar
// frameworks on top of them, and the dual graph used to integrate reciprocal
// diagrams.
//
// Edge convention: an edge (u, v) has tail u and head v, [u:e] = -1 and
// [v:e] = +1. A face lists its boundary as a closed cycle of (edge, sign)
// pairs; sign +1 means the cycle runs tail -> head along that edge, and the
// sign is exactly [e:f].

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "eqgs/numerics.hpp"

namespace eqgs {

using Point = Eigen::Vector2d;

struct Incidence {
  Index cell = 0;
  int sign = 0;
};

struct EdgeSpec {
  std::string id;
  Index u = 0;
  Index v = 0;
};

struct FaceSpec {
  std::string id;
  std::vector<Incidence> cycle;  // (edge, [e:f]) in traversal order
  bool outer = false;
};

struct CellComplex {
  std::vector<std::string> vertex_ids;
  std::vector<std::string> edge_ids;
  std::vector<std::string> face_ids;
  // edge_boundary[e] = {(tail, -1), (head, +1)} for complexes from build_complex.
  std::vector<std::vector<Incidence>> edge_boundary;
  // face_boundary[f] in cycle order.
  std::vector<std::vector<Incidence>> face_boundary;
  std::optional<Index> outer_face;

  Index count(int dim) const;
  Index tail(Index e) const;
  Index head(Index e) const;

  /// [c:d] for dim c = dim_d - 1; 0 when c is not on the boundary of d.
  int incidence(int dim_d, Index c, Index d) const;

  /// For each edge, the faces containing it with the sign [e:f].
  std::vector<std::vector<Incidence>> edge_cofaces() const;

  const std::string& id(int dim, Index c) const;
  std::optional<Index> find(int dim, const std::string& id) const;
};

/// Builds a complex and checks cycles, face counts per edge and regularity.
/// Throws BadCycle, DanglingEdge, NonRegular or InvalidInput.
CellComplex build_complex(std::vector<std::string> vertex_ids, const std::vector<EdgeSpec>& edges,
                          const std::vector<FaceSpec>& faces);

/// Every violation of the signed-incidence axioms, as readable lines.
/// Empty iff the complex is valid. Never throws.
std::vector<std::string> validate(const CellComplex& complex);

/// V - E + F == 2, an outer face is flagged, and every edge lies in exactly
/// two faces with opposite signs.
bool is_sphere_closed(const CellComplex& complex);

/// Throws NotSphereClosed or DanglingEdge describing the first failure.
void require_sphere_closed(const CellComplex& complex);

struct Framework {
  std::shared_ptr<const CellComplex> complex;
  std::vector<Point> positions;

  Point edge_vector(Index e) const;  // p_head - p_tail
  double diameter() const;           // bounding-box diagonal
};

/// Attaches positions. Throws DegenerateEdge when an edge has coincident
/// endpoints, and BadOrientation when a flagged outer face is not clockwise
/// or an interior face is not counterclockwise.
Framework make_framework(CellComplex complex, std::vector<Point> positions);

/// Twice the signed area enclosed by the face cycle (positive = CCW).
double face_signed_area2(const Framework& fw, Index f);

struct DualArc {
  Index edge = 0;
  Index plus_face = 0;   // the face with [e:f] = +1
  Index minus_face = 0;  // the face with [e:f] = -1
};

struct DualGraph {
  Index node_count = 0;
  std::vector<DualArc> arcs;                      // one per edge, indexed by edge
  std::vector<std::vector<Index>> adjacent_arcs;  // per face
};

/// Throws NotSphereClosed.
DualGraph dual_graph(const Framework& fw);

struct CrossingPair {
  Index first = 0;
  Index second = 0;
};

/// All pairs of edges whose straight segments meet anywhere other than a
/// shared endpoint.
std::vector<CrossingPair> check_planarity(const Framework& fw);

}  // namespace eqgs
