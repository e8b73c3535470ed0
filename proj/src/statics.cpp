#include "eqgs/statics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "eqgs/error.hpp"

namespace eqgs {

Cosheaf build_force_cosheaf(const Framework& fw) {
  const auto& cx = *fw.complex;
  Cosheaf k;
  k.complex = fw.complex;
  k.stalk_dim[0].assign(cx.count(0), 2);
  k.stalk_dim[1].assign(cx.count(1), 1);
  k.stalk_dim[2].assign(cx.count(2), 0);
  const double scale = std::max(fw.diameter(), 1e-300);
  k.ext[1].resize(cx.count(1));
  for (Index e = 0; e < cx.count(1); ++e) {
    const Point d = fw.edge_vector(e);
    if (d.norm() <= 1e-12 * scale)
      throw Error(ErrorKind::DegenerateEdge, "edge '" + cx.edge_ids[e] + "' has zero length");
    const Matrix col = d.cast<Complex>();
    k.ext[1][e].assign(cx.edge_boundary[e].size(), col);
  }
  k.ext[2].resize(cx.count(2));
  for (Index f = 0; f < cx.count(2); ++f)
    k.ext[2][f].assign(cx.face_boundary[f].size(), Matrix(1, 0));
  return k;
}

ComplementBases position_complements(const Framework& fw) {
  const auto& cx = *fw.complex;
  ComplementBases q;
  q[0].assign(cx.count(0), Matrix(2, 0));
  for (Index e = 0; e < cx.count(1); ++e) {
    const Point d = fw.edge_vector(e).normalized();
    Matrix n(2, 1);
    n << d.y(), -d.x();
    q[1].push_back(n);
  }
  q[2].assign(cx.count(2), Matrix::Identity(2, 2));
  return q;
}

GraphicStaticsSequence build_graphic_statics_sequence(const Framework& fw, const Tolerance& tol) {
  const auto& cx = *fw.complex;
  require_sphere_closed(cx);
  GraphicStaticsSequence s{fw, {}, {}, {}, {}, {}, {}, {}, {}};
  s.force = std::make_shared<const Cosheaf>(build_force_cosheaf(fw));
  s.constant = std::make_shared<const Cosheaf>(constant_cosheaf(fw.complex, 2));

  s.phi.domain = s.force;
  s.phi.codomain = s.constant;
  s.phi.blocks[0].assign(cx.count(0), Matrix::Identity(2, 2));
  for (Index e = 0; e < cx.count(1); ++e) s.phi.blocks[1].push_back(fw.edge_vector(e).cast<Complex>());
  s.phi.blocks[2].assign(cx.count(2), Matrix(2, 0));
  if (!verify_map(s.phi, tol).empty())
    throw Error(ErrorKind::InternalInvariant, "force-to-constant map is not natural");

  const ComplementBases q = position_complements(fw);
  s.quotient = quotient_cosheaf(s.phi, tol, &q);
  s.position = s.quotient.cosheaf;
  if (!verify_map(s.quotient.pi, tol).empty())
    throw Error(ErrorKind::InternalInvariant, "projection onto the position cosheaf is not natural");
  for (int i = 0; i < 3; ++i)
    for (Index c = 0; c < cx.count(i); ++c)
      if (s.force->stalk_dim[i][c] + s.position->stalk_dim[i][c] != s.constant->stalk_dim[i][c])
        throw Error(ErrorKind::InternalInvariant, "stalks are not exact at " + cx.id(i, c));

  s.force_chain = chain_complex(*s.force);
  s.constant_chain = chain_complex(*s.constant);
  s.position_chain = chain_complex(*s.position);
  return s;
}

SubspaceBasis self_stresses(const Framework& fw, const Tolerance& tol) {
  return svd_subspaces(assemble_boundary(build_force_cosheaf(fw), 1), tol).kernel;
}

SubspaceBasis infinitesimal_motions(const Framework& fw, const Tolerance& tol) {
  const Matrix d1 = assemble_boundary(build_force_cosheaf(fw), 1);
  const auto sv = svd_subspaces(d1, tol);
  return quotient_representatives(SubspaceBasis::whole(d1.rows()), sv.image, tol);
}

MaxwellCount maxwell_check(const Framework& fw, const Tolerance& tol) {
  const Matrix d1 = assemble_boundary(build_force_cosheaf(fw), 1);
  const auto sv = svd_subspaces(d1, tol);
  MaxwellCount m;
  m.h1 = sv.kernel.dim();
  m.h0 = d1.rows() - sv.rank;
  m.lhs = m.h0 - m.h1;
  m.rhs = 2 * fw.complex->count(0) - fw.complex->count(1);
  if (m.lhs != m.rhs)
    throw Error(ErrorKind::MaxwellViolation, "dim H0 - dim H1 = " + std::to_string(m.lhs) +
                                                 " but 2|V| - |E| = " + std::to_string(m.rhs));
  return m;
}

HomologyBasis reciprocal_space(const GraphicStaticsSequence& seq, const Tolerance& tol) {
  return homology(seq.position_chain, 2, tol);
}

ReciprocalDiagram decode_reciprocal(const Vector& chain) {
  ReciprocalDiagram xi(chain.size() / 2);
  for (std::size_t f = 0; f < xi.size(); ++f) xi[f] = chain.segment<2>(2 * f);
  return xi;
}

Vector encode_reciprocal(const ReciprocalDiagram& xi) {
  Vector v(2 * xi.size());
  for (std::size_t f = 0; f < xi.size(); ++f) v.segment<2>(2 * f) = xi[f];
  return v;
}

double parallelism_defect(const Framework& fw, const Vector& chain) {
  const auto& cx = *fw.complex;
  const auto xi = decode_reciprocal(chain);
  double worst = 0.0;
  const auto cof = cx.edge_cofaces();
  for (Index e = 0; e < cx.count(1); ++e) {
    if (cof[e].size() != 2) continue;
    const Eigen::Vector2cd diff = xi[cof[e][0].cell] - xi[cof[e][1].cell];
    const Point d = fw.edge_vector(e);
    const Complex cross = diff.x() * d.y() - diff.y() * d.x();
    worst = std::max(worst, std::abs(cross) / d.norm());
  }
  return worst;
}

Vector stress_from_reciprocal(const GraphicStaticsSequence& seq, const Vector& chain,
                              const Tolerance& tol) {
  if (chain.size() != seq.position_chain.dims[2])
    throw Error(ErrorKind::InvalidInput, "reciprocal has the wrong number of coordinates");
  const double residual = (seq.position_chain.d2 * chain).norm();
  if (residual > tol.abs_cutoff(chain.norm()))
    throw Error(ErrorKind::NotACycle, "dual edges are not parallel to primal edges (residual " +
                                          std::to_string(residual) + ")");
  return connecting_homomorphism(seq.ses(), 2, chain, tol);
}

Vector reciprocal_from_stress(const Framework& fw, const Vector& w, const Tolerance& tol) {
  const auto& cx = *fw.complex;
  if (w.size() != cx.count(1)) throw Error(ErrorKind::InvalidInput, "stress has the wrong length");
  const DualGraph dual = dual_graph(fw);
  const Index root = *cx.outer_face;
  std::vector<Eigen::Vector2cd> xi(dual.node_count, Eigen::Vector2cd::Zero());
  std::vector<bool> placed(dual.node_count, false);
  std::deque<Index> queue{root};
  placed[root] = true;
  while (!queue.empty()) {
    const Index f = queue.front();
    queue.pop_front();
    for (Index e : dual.adjacent_arcs[f]) {
      const DualArc& arc = dual.arcs[e];
      const bool from_plus = arc.plus_face == f;
      const Index g = from_plus ? arc.minus_face : arc.plus_face;
      if (placed[g]) continue;
      const int sign_g = from_plus ? -1 : 1;
      xi[g] = xi[f] + double(sign_g) * w(e) * fw.edge_vector(e).cast<Complex>();
      placed[g] = true;
      queue.push_back(g);
    }
  }
  double dmax = 0.0;
  for (Index e = 0; e < cx.count(1); ++e) dmax = std::max(dmax, fw.edge_vector(e).norm());
  const double scale = std::max(w.size() ? w.cwiseAbs().maxCoeff() : 0.0, 1e-300) * dmax;
  for (const DualArc& arc : dual.arcs) {
    const Eigen::Vector2cd gap =
        xi[arc.plus_face] - xi[arc.minus_face] - w(arc.edge) * fw.edge_vector(arc.edge).cast<Complex>();
    if (gap.norm() > tol.abs_cutoff(scale) * dual.node_count)
      throw Error(ErrorKind::InconsistentStress,
                  "dual cycle does not close across edge " + cx.edge_ids[arc.edge]);
  }
  return encode_reciprocal(xi);
}

namespace {

HomologyDecomposition decompose(const ChainComplex& chain, const CosheafRep& rep,
                                const CharacterTable& table, const Tolerance& tol,
                                std::array<HomologyBasis, 3>& bases) {
  const Group& G = *rep.action->group;
  HomologyDecomposition d;
  d.chain_multiplicity = multiplicities(rep, table);
  for (int i = 0; i < 3; ++i) {
    bases[i] = homology(chain, i, tol);
    d.dims[i] = bases[i].dim();
    d.homology_multiplicity[i] =
        decompose_character(G, table, subspace_character(rep, i, bases[i].representatives));
  }
  d.euler_chain = symmetric_euler(d.chain_multiplicity);
  d.euler_homology = symmetric_euler(d.homology_multiplicity);
  if (d.euler_chain != d.euler_homology)
    throw Error(ErrorKind::InternalInvariant, "symmetric Euler characteristics of chains and homology differ");
  return d;
}

}  // namespace

SymmetricStatics build_symmetric_statics(const GraphicStaticsSequence& seq,
                                         std::shared_ptr<const CellAction> action,
                                         const Tolerance& tol) {
  CharacterTable table = character_table(*action->group);
  CosheafRep force = build_force_rep(seq.force, action, tol);
  CosheafRep constant = build_constant_rep(seq.constant, action);
  auto constant_report = verify_equivariance(constant, tol);
  if (!constant_report.ok())
    throw Error(ErrorKind::EquivarianceBroken, "constant representation: " + constant_report.failures.front());
  CosheafRep position =
      build_position_rep(seq.position, seq.quotient.complement, action, tol);
  return {std::move(action), std::move(table), std::move(force), std::move(constant),
          std::move(position)};
}

GraphicStaticsReport symmetric_graphic_statics(const GraphicStaticsSequence& seq,
                                               const SymmetricStatics& sym, const Tolerance& tol) {
  const Group& G = *sym.action->group;
  const CharacterTable& table = sym.table;
  GraphicStaticsReport r;
  r.maxwell = maxwell_check(seq.framework, tol);

  std::array<HomologyBasis, 3> hf, hc, hp;
  r.force = decompose(seq.force_chain, sym.force_rep, table, tol, hf);
  r.constant = decompose(seq.constant_chain, sym.constant_rep, table, tol, hc);
  r.position = decompose(seq.position_chain, sym.position_rep, table, tol, hp);
  r.h0_force = hf[0].dim();
  r.h1_force = hf[1].dim();
  r.h1_position = hp[1].dim();
  r.h2_position = hp[2].dim();

  // Translations carry the twisted character det(tau) tr(tau), which equals
  // tr(tau) for cyclic and dihedral groups.
  Character twisted;
  for (const auto& cls : G.classes()) {
    const Eigen::Matrix2d t = tau(G, cls.representative);
    twisted.push_back(t.determinant() * t.trace());
  }
  const std::vector<int> tau_mult = decompose_character(G, table, twisted);

  const ShortExact ses = seq.ses();
  Index sum_h1 = 0, sum_h2 = 0;
  for (int j = 0; j < table.size(); ++j) {
    IrrepStatics s;
    s.label = table.irreps[j].label;
    s.dim = table.irreps[j].dim;
    s.translations = Index(tau_mult[j]) * s.dim;
    s.stresses = isotypic_homology(sym.force_rep, table, hf[1].representatives, 1, j, tol);
    s.reciprocals = isotypic_homology(sym.position_rep, table, hp[2].representatives, 2, j, tol);
    s.h1_force = s.stresses.dim();
    s.h2_position = s.reciprocals.dim();
    s.h0_force = isotypic_homology(sym.force_rep, table, hf[0].representatives, 0, j, tol).dim();
    s.h1_position = isotypic_homology(sym.position_rep, table, hp[1].representatives, 1, j, tol).dim();

    auto expect = [&](Index got, Index want, const std::string& what) {
      if (got != want)
        throw Error(ErrorKind::InternalInvariant,
                    what + " at irrep " + s.label + ": " + std::to_string(got) + " vs " + std::to_string(want));
    };
    expect(s.h1_force, Index(r.force.homology_multiplicity[1][j]) * s.dim, "stress isotypic dimension");
    expect(s.h2_position, Index(r.position.homology_multiplicity[2][j]) * s.dim,
           "reciprocal isotypic dimension");
    expect(s.h2_position, s.h1_force + s.translations, "reciprocal count");
    expect(s.h0_force, s.h1_position + s.translations, "motion count");

    for (Index c = 0; c < s.reciprocals.dim(); ++c)
      s.matched_stresses.push_back(connecting_homomorphism(ses, 2, s.reciprocals.basis.col(c), tol));
    sum_h1 += s.h1_force;
    sum_h2 += s.h2_position;
    r.irreps.push_back(std::move(s));
  }
  if (sum_h1 != r.h1_force || sum_h2 != r.h2_position)
    throw Error(ErrorKind::InternalInvariant, "isotypic components do not add up to the homology");
  return r;
}

SubspaceBasis realify(const SubspaceBasis& b, const Tolerance& tol) {
  Matrix stacked(b.ambient_dim, 2 * b.dim());
  stacked << b.basis.real().cast<Complex>(), b.basis.imag().cast<Complex>();
  return image_basis(stacked, tol, 1.0);
}

std::vector<MergedPair> merge_conjugates(const GraphicStaticsReport& report,
                                         const CharacterTable& table, const Tolerance& tol) {
  std::vector<MergedPair> out;
  for (int j = 0; j < table.size(); ++j) {
    const int c = table.conjugate(j);
    if (c < j) continue;
    MergedPair m{j, c, realify(report.irreps[j].stresses, tol),
                 realify(report.irreps[j].reciprocals, tol)};
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace eqgs
