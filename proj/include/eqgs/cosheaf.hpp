#pragma once

// Cellular cosheaves over a 2-complex. Extension blocks are stored alongside
// the complex's boundary lists: ext[1][e][k] is the map from the stalk at edge
// e to the stalk at the k-th vertex of edge_boundary[e], and ext[2][f][k] the
// map from face f to the k-th edge of face_boundary[f].

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "eqgs/complex.hpp"
#include "eqgs/numerics.hpp"

namespace eqgs {

struct Cosheaf {
  std::shared_ptr<const CellComplex> complex;
  std::array<std::vector<Index>, 3> stalk_dim;
  std::array<std::vector<std::vector<Matrix>>, 3> ext;  // ext[0] unused

  Index chain_dim(int i) const;
  Index offset(int i, Index c) const;  // first row of cell c inside C_i
};

/// Stalk k^r on every cell with identity extensions.
Cosheaf constant_cosheaf(std::shared_ptr<const CellComplex> complex, Index r);

/// Boundary map d_i : C_i -> C_{i-1}, i in {1, 2}. Block (c, d) = [c:d] ext.
/// Throws MissingExtension when a block is absent or has the wrong shape.
Matrix assemble_boundary(const Cosheaf& k, int i);

struct ChainComplex {
  std::array<Index, 3> dims{};
  Matrix d1;  // C_1 -> C_0
  Matrix d2;  // C_2 -> C_1

  /// d_i for i in 0..3; d_0 and d_3 are zero maps of the right shape.
  Matrix boundary(int i) const;
  int euler() const;
};

/// Assembles both boundaries and checks ||d1 d2||_inf against 1e-10 of the
/// product scale. Throws InternalInvariant on failure.
ChainComplex chain_complex(const Cosheaf& k);

struct HomologyBasis {
  int degree = 0;
  SubspaceBasis representatives;  // inside C_i, orthogonal to im d_{i+1}
  Index cycles_dim = 0;
  Index boundaries_dim = 0;

  Index dim() const { return representatives.dim(); }
};

HomologyBasis homology(const ChainComplex& chain, int i, const Tolerance& tol);

struct CosheafMap {
  std::shared_ptr<const Cosheaf> domain;
  std::shared_ptr<const Cosheaf> codomain;
  std::array<std::vector<Matrix>, 3> blocks;  // blocks[i][c] : dom stalk -> cod stalk

  /// Block-diagonal chain map C_i(domain) -> C_i(codomain).
  Matrix chain_map(int i) const;
};

CosheafMap identity_map(std::shared_ptr<const Cosheaf> k);

struct MapDefect {
  int dim = 0;         // dimension of the higher cell d
  Index cell = 0;      // d
  Index face_of = 0;   // c, the boundary cell
  double error = 0.0;  // ||phi_c K_{d>c} - L_{d>c} phi_d||_inf
};

/// Covering pairs where the naturality square fails by more than tol.abs.
std::vector<MapDefect> verify_map(const CosheafMap& phi, const Tolerance& tol);

struct Quotient {
  std::shared_ptr<const Cosheaf> cosheaf;
  CosheafMap pi;
  // complement[i][c] : columns form an orthonormal basis of (im phi_c)^perp,
  // so pi_c = complement^H and the lift of a quotient stalk vector x is complement * x.
  std::array<std::vector<Matrix>, 3> complement;

  Matrix lift(int i) const;  // block-diagonal complement matrix C_i(Q) -> C_i(L)
};

using ComplementBases = std::array<std::vector<Matrix>, 3>;

/// Quotient L / phi(K) via orthogonal complements. When `preferred` is given
/// its blocks are used as the complement bases after checking that they are
/// orthonormal and orthogonal to im phi_c. Throws NotInjective, NotASubspace.
Quotient quotient_cosheaf(const CosheafMap& phi, const Tolerance& tol,
                          const ComplementBases* preferred = nullptr);

struct ShortExact {
  CosheafMap phi;    // K -> L
  Quotient quotient; // L -> Q
};

/// Snake-lemma map H_i(Q) -> H_{i-1}(K) applied to a cycle x in C_i(Q).
/// The result is checked against a second lift shifted by a random element of
/// phi(C_i K) drawn from `seed`. Throws LiftFailed, NotInImage, InternalInvariant.
Vector connecting_homomorphism(const ShortExact& ses, int i, const Vector& x, const Tolerance& tol,
                               std::uint64_t seed = 0x5eed);

}  // namespace eqgs
