#pragma once

// Group actions on a framework's cells and the induced representations on
// cosheaf chains, with isotypic projection and symmetric Euler counts.

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "eqgs/complex.hpp"
#include "eqgs/cosheaf.hpp"
#include "eqgs/groups.hpp"

namespace eqgs {

struct CellAction {
  std::shared_ptr<const Group> group;
  std::shared_ptr<const CellComplex> complex;
  // perm[dim][g][c] = g c;  sign[dim][g][c] = [gc, c]
  std::array<std::vector<std::vector<Index>>, 3> perm;
  std::array<std::vector<std::vector<int>>, 3> sign;
};

/// Vertex permutations for the generators: "r" (rotation by 2 pi / m) and,
/// for dihedral groups, "s" (reflection). Entry v of a permutation is g v.
using GeneratorMaps = std::map<std::string, std::vector<Index>>;

/// Extends vertex permutations to the whole complex. Throws NotAnAction,
/// NotEquivariant or NotARealization. `geom_rel` scales the bounding-box
/// diameter to give the realization tolerance.
CellAction induce_action(const Framework& fw, std::shared_ptr<const Group> group,
                         const GeneratorMaps& generators, double geom_rel = 1e-8);

/// Every violated sign-coherence or functoriality condition. Empty when valid.
std::vector<std::string> check_action(const CellAction& action);

struct CosheafRep {
  std::shared_ptr<const Cosheaf> cosheaf;
  std::shared_ptr<const CellAction> action;
  // blocks[dim][g][c] : stalk(c) -> stalk(g c)
  std::array<std::vector<std::vector<Matrix>>, 3> blocks;

  /// rho_i(g) as a matrix on C_i.
  Matrix chain_matrix(int i, int g) const;
};

/// iota_c(g) = [gc, c] I on any cosheaf.
CosheafRep build_trivial_rep(std::shared_ptr<const Cosheaf> k, std::shared_ptr<const CellAction> a);

/// eta_c(g) = [gc, c] tau(g) on the constant R^2 cosheaf.
CosheafRep build_constant_rep(std::shared_ptr<const Cosheaf> k,
                              std::shared_ptr<const CellAction> a);

/// tau(g) on vertex stalks, +1 on edge stalks. Throws EquivarianceBroken.
CosheafRep build_force_rep(std::shared_ptr<const Cosheaf> k, std::shared_ptr<const CellAction> a,
                           const Tolerance& tol);

/// det(tau(g)) tau(g) on faces and det(tau(g)) on edges, in the complement
/// bases of the quotient. The closed form is compared against the blocks
/// induced from eta through those bases. Throws EquivarianceBroken.
CosheafRep build_position_rep(std::shared_ptr<const Cosheaf> position,
                              const ComplementBases& complement,
                              std::shared_ptr<const CellAction> a, const Tolerance& tol);

struct EquivarianceReport {
  std::vector<std::string> failures;
  double max_homomorphism_error = 0.0;
  double max_commutator_error = 0.0;

  bool ok() const { return failures.empty(); }
};

/// rho(g) rho(h) = rho(gh), rho(e) = I and rho_{i-1}(g) d_i = d_i rho_i(g).
EquivarianceReport verify_equivariance(const CosheafRep& rep, const Tolerance& tol);

/// Largest defect of phi_i rho_dom(g) = rho_cod(g) phi_i over all g and i.
double map_equivariance_error(const CosheafMap& phi, const CosheafRep& dom, const CosheafRep& cod);

Complex trace_at(const CosheafRep& rep, int i, int g);

/// Character of rho_i, one value per conjugacy class.
Character chain_character(const CosheafRep& rep, int i);

/// Character of rho_i restricted to the span of an invariant orthonormal basis.
Character subspace_character(const CosheafRep& rep, int i, const SubspaceBasis& basis);

/// Multiplicities N_i^(j) for i = 0, 1, 2. Throws NotIntegral.
std::array<std::vector<int>, 3> multiplicities(const CosheafRep& rep, const CharacterTable& table);

/// (n_j / |G|) sum_g conj(chi_j(g)) rho_i(g).
Matrix isotypic_projector(const CosheafRep& rep, const CharacterTable& table, int i, int j);

/// Basis of the j-isotypic part of span(h).
SubspaceBasis isotypic_homology(const CosheafRep& rep, const CharacterTable& table,
                                const SubspaceBasis& h, int i, int j, const Tolerance& tol);

/// Per irrep: sum_i (-1)^i N_i^(j), from multiplicity tables.
std::vector<int> symmetric_euler(const std::array<std::vector<int>, 3>& mult);

}  // namespace eqgs
