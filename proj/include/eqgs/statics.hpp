#pragma once

// Graphic statics on planar frameworks: the force cosheaf F, the constant
// cosheaf R^2, the position cosheaf P = R^2 / F, self-stresses, motions,
// reciprocal diagrams and their decomposition under a symmetry group.
//
// Edge vectors are unnormalized everywhere: F_{e>v}(1) = d_e and
// phi_e(1) = d_e with d_e = p_head - p_tail. The complement basis of P at an
// edge is n_e = R_cw d_e / |d_e| with R_cw the clockwise quarter turn; at a
// face it is the standard basis of R^2, so face stalks of P are plain
// dual-vertex coordinates.

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "eqgs/complex.hpp"
#include "eqgs/cosheaf.hpp"
#include "eqgs/equivariant.hpp"
#include "eqgs/groups.hpp"

namespace eqgs {

/// Throws DegenerateEdge.
Cosheaf build_force_cosheaf(const Framework& fw);

/// Complement bases of im phi inside R^2 at every cell (see header comment).
ComplementBases position_complements(const Framework& fw);

struct GraphicStaticsSequence {
  Framework framework;
  std::shared_ptr<const Cosheaf> force;
  std::shared_ptr<const Cosheaf> constant;
  std::shared_ptr<const Cosheaf> position;
  CosheafMap phi;   // F -> R^2
  Quotient quotient;  // R^2 -> P, quotient.pi
  ChainComplex force_chain;
  ChainComplex constant_chain;
  ChainComplex position_chain;

  ShortExact ses() const { return {phi, quotient}; }
};

/// Requires a sphere-closed framework. Verifies naturality of phi and pi and
/// stalk exactness; throws InternalInvariant if either fails.
GraphicStaticsSequence build_graphic_statics_sequence(const Framework& fw, const Tolerance& tol);

/// Basis of ker d1 of the force cosheaf (one coefficient per edge).
SubspaceBasis self_stresses(const Framework& fw, const Tolerance& tol);

/// Orthonormal complement of im d1 inside C_0 F.
SubspaceBasis infinitesimal_motions(const Framework& fw, const Tolerance& tol);

struct MaxwellCount {
  Index h0 = 0;
  Index h1 = 0;
  Index lhs = 0;  // h0 - h1
  Index rhs = 0;  // 2|V| - |E|
};

/// Throws MaxwellViolation when lhs != rhs.
MaxwellCount maxwell_check(const Framework& fw, const Tolerance& tol);

HomologyBasis reciprocal_space(const GraphicStaticsSequence& seq, const Tolerance& tol);

/// Dual-vertex coordinates, one complex 2-vector per face.
using ReciprocalDiagram = std::vector<Eigen::Vector2cd>;

ReciprocalDiagram decode_reciprocal(const Vector& chain);
Vector encode_reciprocal(const ReciprocalDiagram& xi);

/// Largest |cross(xi_f - xi_g, d_e)| / |d_e| over edges.
double parallelism_defect(const Framework& fw, const Vector& chain);

/// Connecting map applied to a reciprocal diagram. Throws NotACycle when the
/// dual edges are not parallel to the primal ones.
Vector stress_from_reciprocal(const GraphicStaticsSequence& seq, const Vector& chain,
                              const Tolerance& tol);

/// Integrates a stress over a breadth-first spanning tree of the dual graph
/// rooted at the outer face (placed at the origin): crossing edge e into face
/// g adds [e:g] w_e d_e. Throws InconsistentStress when a non-tree edge does
/// not close.
Vector reciprocal_from_stress(const Framework& fw, const Vector& w, const Tolerance& tol);

struct HomologyDecomposition {
  std::array<Index, 3> dims{};
  std::array<std::vector<int>, 3> chain_multiplicity;
  std::array<std::vector<int>, 3> homology_multiplicity;
  std::vector<int> euler_chain;
  std::vector<int> euler_homology;
};

struct IrrepStatics {
  std::string label;
  int dim = 1;
  Index h1_force = 0;
  Index h0_force = 0;
  Index h2_position = 0;
  Index h1_position = 0;
  Index translations = 0;  // dimension of the tau-isotypic part of R^2
  SubspaceBasis stresses;
  SubspaceBasis reciprocals;
  std::vector<Vector> matched_stresses;  // connecting map of each reciprocal basis column
};

struct GraphicStaticsReport {
  Index h0_force = 0;
  Index h1_force = 0;
  Index h1_position = 0;
  Index h2_position = 0;
  MaxwellCount maxwell;
  HomologyDecomposition force;
  HomologyDecomposition constant;
  HomologyDecomposition position;
  std::vector<IrrepStatics> irreps;
};

struct SymmetricStatics {
  std::shared_ptr<const CellAction> action;
  CharacterTable table;
  CosheafRep force_rep;
  CosheafRep constant_rep;
  CosheafRep position_rep;
};

SymmetricStatics build_symmetric_statics(const GraphicStaticsSequence& seq,
                                         std::shared_ptr<const CellAction> action,
                                         const Tolerance& tol);

/// Per-irrep stresses and reciprocals. Checks, for every irrep j,
/// dim H2^(j) P = dim H1^(j) F + translations^(j) and
/// dim H0^(j) F = dim H1^(j) P + translations^(j), and the symmetric Euler
/// identity for all three cosheaves; throws InternalInvariant on failure.
GraphicStaticsReport symmetric_graphic_statics(const GraphicStaticsSequence& seq,
                                               const SymmetricStatics& sym, const Tolerance& tol);

/// Real basis of the span of {Re v, Im v} over the columns of b.
SubspaceBasis realify(const SubspaceBasis& b, const Tolerance& tol);

struct MergedPair {
  int first = 0;   // irrep index
  int second = 0;  // its conjugate (equal for real irreps)
  SubspaceBasis stresses;     // real
  SubspaceBasis reciprocals;  // real
};

/// One entry per real irrep and per conjugate pair, in irrep order.
std::vector<MergedPair> merge_conjugates(const GraphicStaticsReport& report,
                                         const CharacterTable& table, const Tolerance& tol);

}  // namespace eqgs
