#include "eqgs/equivariant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eqgs/error.hpp"

namespace eqgs {

namespace {

using Perm = std::vector<Index>;

Perm compose(const Perm& a, const Perm& b) {  // a after b
  Perm out(b.size());
  for (std::size_t v = 0; v < b.size(); ++v) out[v] = a[b[v]];
  return out;
}

Perm identity_perm(Index n) {
  Perm p(n);
  for (Index v = 0; v < n; ++v) p[v] = v;
  return p;
}

bool is_permutation(const Perm& p, Index n) {
  if (static_cast<Index>(p.size()) != n) return false;
  std::vector<bool> hit(n, false);
  for (Index v : p) {
    if (v < 0 || v >= n || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

std::pair<Index, Index> ordered(Index a, Index b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

int det_sign(const Eigen::Matrix2d& t) { return t.determinant() > 0.0 ? 1 : -1; }

Perm power(const Perm& p, int k) {
  Perm out = identity_perm(static_cast<Index>(p.size()));
  for (int i = 0; i < k; ++i) out = compose(p, out);
  return out;
}

const std::vector<Incidence>& boundary_of(const CellComplex& cx, int i, Index d) {
  return i == 1 ? cx.edge_boundary[d] : cx.face_boundary[d];
}

}  // namespace

CellAction induce_action(const Framework& fw, std::shared_ptr<const Group> group,
                         const GeneratorMaps& generators, double geom_rel) {
  const auto& cx = *fw.complex;
  const Group& G = *group;
  const Index nv = cx.count(0);
  const bool dihedral = G.kind() == GroupKind::Dihedral;

  for (const auto& [name, p] : generators) {
    if (name != "r" && !(dihedral && name == "s"))
      throw Error(ErrorKind::NotAnAction, "unknown generator '" + name + "'");
    if (!is_permutation(p, nv))
      throw Error(ErrorKind::NotAnAction, "generator '" + name + "' is not a vertex permutation");
  }
  auto gen = [&](const std::string& name, bool required) {
    auto it = generators.find(name);
    if (it != generators.end()) return it->second;
    if (required) throw Error(ErrorKind::NotAnAction, "generator '" + name + "' is missing");
    return identity_perm(nv);
  };
  const Perm pr = gen("r", G.m() >= 2);
  const Perm ps = dihedral ? gen("s", true) : identity_perm(nv);
  const Perm id = identity_perm(nv);

  if (power(pr, G.m()) != id) throw Error(ErrorKind::NotAnAction, "r^m is not the identity");
  if (dihedral) {
    if (compose(ps, ps) != id) throw Error(ErrorKind::NotAnAction, "s^2 is not the identity");
    if (compose(ps, compose(pr, ps)) != power(pr, G.m() - 1))
      throw Error(ErrorKind::NotAnAction, "s r s is not r^-1");
  }

  CellAction a;
  a.group = group;
  a.complex = fw.complex;
  const int n = G.order();
  for (int d = 0; d < 3; ++d) {
    a.perm[d].resize(n);
    a.sign[d].resize(n);
  }
  for (int g = 0; g < n; ++g) {
    const GroupElement x = G.element(g);
    a.perm[0][g] = compose(power(pr, x.k), x.b ? ps : id);
    a.sign[0][g].assign(nv, 1);
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (compose(a.perm[0][g], a.perm[0][h]) != a.perm[0][G.multiply(g, h)])
        throw Error(ErrorKind::NotAnAction, "vertex maps do not compose like the group");

  const double tol = geom_rel * std::max(fw.diameter(), 1e-300);
  const auto taus = standard_rep(G);
  for (int g = 0; g < n; ++g)
    for (Index v = 0; v < nv; ++v) {
      const double err = (taus[g] * fw.positions[v] - fw.positions[a.perm[0][g][v]]).norm();
      if (err > tol)
        throw Error(ErrorKind::NotARealization,
                    "tau(" + G.element_name(g) + ") moves " + cx.vertex_ids[v] + " to distance " +
                        std::to_string(err) + " from " + cx.vertex_ids[a.perm[0][g][v]]);
    }

  std::map<std::pair<Index, Index>, Index> edge_by_ends;
  for (Index e = 0; e < cx.count(1); ++e) {
    const std::pair<Index, Index> key = ordered(cx.tail(e), cx.head(e));
    if (!edge_by_ends.emplace(key, e).second)
      throw Error(ErrorKind::NotEquivariant, "parallel edges make the edge action ambiguous");
  }
  for (int g = 0; g < n; ++g) {
    auto& perm = a.perm[1][g];
    auto& sgn = a.sign[1][g];
    for (Index e = 0; e < cx.count(1); ++e) {
      const Index gt = a.perm[0][g][cx.tail(e)], gh = a.perm[0][g][cx.head(e)];
      auto it = edge_by_ends.find(ordered(gt, gh));
      if (it == edge_by_ends.end())
        throw Error(ErrorKind::NotEquivariant, G.element_name(g) + " maps edge " + cx.edge_ids[e] +
                                                   " to a vertex pair with no edge");
      perm.push_back(it->second);
      sgn.push_back(cx.tail(it->second) == gt ? 1 : -1);
    }
  }

  // A symmetry fixes the unbounded face, so outer-ness is part of the key; it
  // separates the two faces of a single cycle.
  auto is_outer = [&](Index f) { return cx.outer_face && *cx.outer_face == f; };
  std::map<std::pair<std::vector<Index>, bool>, Index> face_by_edges;
  for (Index f = 0; f < cx.count(2); ++f) {
    std::vector<Index> key;
    for (const auto& inc : cx.face_boundary[f]) key.push_back(inc.cell);
    std::sort(key.begin(), key.end());
    if (!face_by_edges.emplace(std::pair{key, is_outer(f)}, f).second)
      throw Error(ErrorKind::NotEquivariant, "two faces share the same boundary edges");
  }
  for (int g = 0; g < n; ++g) {
    const int expected = det_sign(taus[g]);
    for (Index f = 0; f < cx.count(2); ++f) {
      std::vector<Index> key;
      for (const auto& inc : cx.face_boundary[f]) key.push_back(a.perm[1][g][inc.cell]);
      std::sort(key.begin(), key.end());
      auto it = face_by_edges.find(std::pair{key, is_outer(f)});
      if (it == face_by_edges.end())
        throw Error(ErrorKind::NotEquivariant,
                    G.element_name(g) + " maps face " + cx.face_ids[f] + " to no face");
      const Index gf = it->second;
      int s = 0;
      for (const auto& inc : cx.face_boundary[f]) {
        const Index ge = a.perm[1][g][inc.cell];
        const int t = a.sign[1][g][inc.cell] * inc.sign * cx.incidence(2, ge, gf);
        if (s != 0 && t != s)
          throw Error(ErrorKind::NotEquivariant,
                      "inconsistent orientation sign for face " + cx.face_ids[f]);
        s = t;
      }
      if (cx.outer_face && s != expected)
        throw Error(ErrorKind::NotEquivariant,
                    G.element_name(g) + " does not preserve the orientation convention at face " +
                        cx.face_ids[f]);
      a.perm[2][g].push_back(gf);
      a.sign[2][g].push_back(s);
    }
  }
  return a;
}

std::vector<std::string> check_action(const CellAction& a) {
  std::vector<std::string> out;
  const Group& G = *a.group;
  const auto& cx = *a.complex;
  for (int g = 0; g < G.order(); ++g) {
    const std::string gname = G.element_name(g);
    for (Index v = 0; v < cx.count(0); ++v)
      if (a.sign[0][g][v] != 1) out.push_back("vertex sign not +1 at (" + gname + "," + cx.vertex_ids[v] + ")");
    for (int i = 1; i <= 2; ++i)
      for (Index d = 0; d < cx.count(i); ++d) {
        const Index gd = a.perm[i][g][d];
        for (const auto& inc : boundary_of(cx, i, d)) {
          const Index c = inc.cell;
          const Index gc = a.perm[i - 1][g][c];
          const int lhs = a.sign[i - 1][g][c] * inc.sign;
          const int rhs = cx.incidence(i, gc, gd) * a.sign[i][g][d];
          if (lhs != rhs)
            out.push_back("sign coherence violated at (" + gname + "," + cx.id(i - 1, c) + "," +
                          cx.id(i, d) + ")");
        }
      }
    for (int h = 0; h < G.order(); ++h) {
      const int gh = G.multiply(g, h);
      for (int i = 0; i < 3; ++i)
        for (Index c = 0; c < cx.count(i); ++c) {
          const Index hc = a.perm[i][h][c];
          if (a.perm[i][gh][c] != a.perm[i][g][hc] ||
              a.sign[i][gh][c] != a.sign[i][g][hc] * a.sign[i][h][c])
            out.push_back("functoriality violated at (" + gname + "," + G.element_name(h) + "," +
                          cx.id(i, c) + ")");
        }
    }
  }
  return out;
}

Matrix CosheafRep::chain_matrix(int i, int g) const {
  const Index n = cosheaf->chain_dim(i);
  Matrix m = Matrix::Zero(n, n);
  const auto& perm = action->perm[i][g];
  std::vector<Index> off(perm.size() + 1, 0);
  for (std::size_t c = 0; c < perm.size(); ++c) off[c + 1] = off[c] + cosheaf->stalk_dim[i][c];
  for (std::size_t c = 0; c < perm.size(); ++c) {
    const Matrix& b = blocks[i][g][c];
    m.block(off[perm[c]], off[c], b.rows(), b.cols()) = b;
  }
  return m;
}

namespace {

CosheafRep rep_from(std::shared_ptr<const Cosheaf> k, std::shared_ptr<const CellAction> a,
                    auto&& block) {
  CosheafRep rep;
  const Group& G = *a->group;
  for (int i = 0; i < 3; ++i) {
    rep.blocks[i].resize(G.order());
    for (int g = 0; g < G.order(); ++g)
      for (Index c = 0; c < a->complex->count(i); ++c) rep.blocks[i][g].push_back(block(i, g, c));
  }
  rep.cosheaf = std::move(k);
  rep.action = std::move(a);
  return rep;
}

void require_stalks(const Cosheaf& k, int i, Index dim, const char* what) {
  for (Index d : k.stalk_dim[i])
    if (d != dim)
      throw Error(ErrorKind::InvalidInput, std::string(what) + " has an unexpected stalk dimension");
}

void require_equivariant(const CosheafRep& rep, const Tolerance& tol, const char* what) {
  auto report = verify_equivariance(rep, tol);
  if (!report.ok())
    throw Error(ErrorKind::EquivarianceBroken, std::string(what) + ": " + report.failures.front());
}

}  // namespace

CosheafRep build_trivial_rep(std::shared_ptr<const Cosheaf> k, std::shared_ptr<const CellAction> a) {
  const Cosheaf* kp = k.get();
  const CellAction* ap = a.get();
  return rep_from(std::move(k), std::move(a), [&](int i, int g, Index c) {
    const Index d = kp->stalk_dim[i][c];
    return Matrix(double(ap->sign[i][g][c]) * Matrix::Identity(d, d));
  });
}

CosheafRep build_constant_rep(std::shared_ptr<const Cosheaf> k,
                              std::shared_ptr<const CellAction> a) {
  for (int i = 0; i < 3; ++i) require_stalks(*k, i, 2, "constant R^2 cosheaf");
  const auto taus = standard_rep(*a->group);
  const CellAction* ap = a.get();
  return rep_from(std::move(k), std::move(a), [&](int i, int g, Index c) {
    return Matrix(double(ap->sign[i][g][c]) * taus[g].cast<Complex>());
  });
}

CosheafRep build_force_rep(std::shared_ptr<const Cosheaf> k, std::shared_ptr<const CellAction> a,
                           const Tolerance& tol) {
  require_stalks(*k, 0, 2, "force cosheaf");
  require_stalks(*k, 1, 1, "force cosheaf");
  require_stalks(*k, 2, 0, "force cosheaf");
  const auto taus = standard_rep(*a->group);
  CosheafRep rep = rep_from(std::move(k), std::move(a), [&](int i, int g, Index) {
    if (i == 0) return Matrix(taus[g].cast<Complex>());
    if (i == 1) return Matrix(Matrix::Ones(1, 1));
    return Matrix(0, 0);
  });
  require_equivariant(rep, tol, "force representation");
  return rep;
}

CosheafRep build_position_rep(std::shared_ptr<const Cosheaf> position,
                              const ComplementBases& complement,
                              std::shared_ptr<const CellAction> a, const Tolerance& tol) {
  require_stalks(*position, 0, 0, "position cosheaf");
  require_stalks(*position, 1, 1, "position cosheaf");
  require_stalks(*position, 2, 2, "position cosheaf");
  const auto taus = standard_rep(*a->group);
  const CellAction* ap = a.get();
  const auto& cx = *ap->complex;
  CosheafRep rep = rep_from(position, std::move(a), [&](int i, int g, Index c) {
    const double det = taus[g].determinant() > 0.0 ? 1.0 : -1.0;
    const Index gc = ap->perm[i][g][c];
    const Matrix& qc = complement[i][c];
    const Matrix& qg = complement[i][gc];
    Matrix closed;
    if (i == 0) closed = Matrix(0, 0);
    else if (i == 1) closed = Matrix::Constant(1, 1, det);
    else closed = qg.adjoint() * (det * taus[g].cast<Complex>()) * qc;
    const Matrix induced = qg.adjoint() * (double(ap->sign[i][g][c]) * taus[g].cast<Complex>()) * qc;
    if (max_abs(closed - induced) > tol.abs)
      throw Error(ErrorKind::EquivarianceBroken,
                  "position action at " + cx.id(i, c) + " disagrees with the induced action");
    return closed;
  });
  require_equivariant(rep, tol, "position representation");
  return rep;
}

EquivarianceReport verify_equivariance(const CosheafRep& rep, const Tolerance& tol) {
  EquivarianceReport r;
  const Group& G = *rep.action->group;
  const auto& cx = *rep.action->complex;
  const auto& perm = rep.action->perm;
  const double hom_tol = 1e-10;
  for (int i = 0; i < 3; ++i)
    for (Index c = 0; c < cx.count(i); ++c) {
      const Matrix& e = rep.blocks[i][G.identity()][c];
      const double err = max_abs(e - Matrix::Identity(e.rows(), e.cols()));
      r.max_homomorphism_error = std::max(r.max_homomorphism_error, err);
      if (err > hom_tol) r.failures.push_back("identity acts nontrivially at " + cx.id(i, c));
    }
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h) {
      const int gh = G.multiply(g, h);
      for (int i = 0; i < 3; ++i)
        for (Index c = 0; c < cx.count(i); ++c) {
          const Index hc = perm[i][h][c];
          const double err = max_abs(rep.blocks[i][g][hc] * rep.blocks[i][h][c] - rep.blocks[i][gh][c]);
          r.max_homomorphism_error = std::max(r.max_homomorphism_error, err);
          if (err > hom_tol)
            r.failures.push_back("rho(" + G.element_name(g) + ")rho(" + G.element_name(h) +
                                 ") != rho(" + G.element_name(gh) + ") at " + cx.id(i, c));
        }
    }
  for (int i = 1; i <= 2; ++i) {
    const Matrix d = assemble_boundary(*rep.cosheaf, i);
    const double scale = std::max(1.0, max_abs(d));
    for (int g = 0; g < G.order(); ++g) {
      const double err = max_abs(rep.chain_matrix(i - 1, g) * d - d * rep.chain_matrix(i, g));
      r.max_commutator_error = std::max(r.max_commutator_error, err);
      if (err > std::min(tol.abs, 1e-9) * scale)
        r.failures.push_back("rho(" + G.element_name(g) + ") does not commute with d" +
                             std::to_string(i));
    }
  }
  return r;
}

double map_equivariance_error(const CosheafMap& phi, const CosheafRep& dom, const CosheafRep& cod) {
  double worst = 0.0;
  const Group& G = *dom.action->group;
  for (int i = 0; i < 3; ++i) {
    const Matrix m = phi.chain_map(i);
    for (int g = 0; g < G.order(); ++g)
      worst = std::max(worst, max_abs(m * dom.chain_matrix(i, g) - cod.chain_matrix(i, g) * m));
  }
  return worst;
}

Complex trace_at(const CosheafRep& rep, int i, int g) {
  Complex t = 0.0;
  const auto& perm = rep.action->perm[i][g];
  for (std::size_t c = 0; c < perm.size(); ++c)
    if (perm[c] == static_cast<Index>(c)) t += rep.blocks[i][g][c].trace();
  return t;
}

Character chain_character(const CosheafRep& rep, int i) {
  Character chi;
  for (const auto& cls : rep.action->group->classes()) chi.push_back(trace_at(rep, i, cls.representative));
  return chi;
}

Character subspace_character(const CosheafRep& rep, int i, const SubspaceBasis& basis) {
  Character chi;
  for (const auto& cls : rep.action->group->classes())
    chi.push_back((basis.basis.adjoint() * rep.chain_matrix(i, cls.representative) * basis.basis).trace());
  return chi;
}

std::array<std::vector<int>, 3> multiplicities(const CosheafRep& rep, const CharacterTable& table) {
  std::array<std::vector<int>, 3> out;
  for (int i = 0; i < 3; ++i)
    out[i] = decompose_character(*rep.action->group, table, chain_character(rep, i));
  return out;
}

Matrix isotypic_projector(const CosheafRep& rep, const CharacterTable& table, int i, int j) {
  const Group& G = *rep.action->group;
  const Index n = rep.cosheaf->chain_dim(i);
  Matrix p = Matrix::Zero(n, n);
  const auto& chi = table.irreps[j].character;
  for (int g = 0; g < G.order(); ++g)
    p += std::conj(character_at(G, chi, g)) * rep.chain_matrix(i, g);
  return p * (double(table.irreps[j].dim) / G.order());
}

SubspaceBasis isotypic_homology(const CosheafRep& rep, const CharacterTable& table,
                                const SubspaceBasis& h, int i, int j, const Tolerance& tol) {
  const Matrix p = isotypic_projector(rep, table, i, j);
  const Matrix projected = projector(h) * (p * h.basis);
  return image_basis(projected, tol, 1.0);
}

std::vector<int> symmetric_euler(const std::array<std::vector<int>, 3>& mult) {
  std::vector<int> out(mult[0].size(), 0);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = mult[0][j] - mult[1][j] + mult[2][j];
  return out;
}

}  // namespace eqgs
