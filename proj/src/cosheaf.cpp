#include "eqgs/cosheaf.hpp"

#include <algorithm>
#include <random>

#include "eqgs/error.hpp"

namespace eqgs {

Index Cosheaf::chain_dim(int i) const {
  Index n = 0;
  for (Index d : stalk_dim[i]) n += d;
  return n;
}

Index Cosheaf::offset(int i, Index c) const {
  Index n = 0;
  for (Index k = 0; k < c; ++k) n += stalk_dim[i][k];
  return n;
}

Cosheaf constant_cosheaf(std::shared_ptr<const CellComplex> complex, Index r) {
  Cosheaf k;
  for (int i = 0; i < 3; ++i) k.stalk_dim[i].assign(complex->count(i), r);
  const Matrix id = Matrix::Identity(r, r);
  for (const auto& bd : complex->edge_boundary) k.ext[1].emplace_back(bd.size(), id);
  for (const auto& bd : complex->face_boundary) k.ext[2].emplace_back(bd.size(), id);
  k.complex = std::move(complex);
  return k;
}

namespace {

std::vector<Index> offsets(const std::vector<Index>& dims) {
  std::vector<Index> out(dims.size() + 1, 0);
  for (std::size_t c = 0; c < dims.size(); ++c) out[c + 1] = out[c] + dims[c];
  return out;
}

const std::vector<Incidence>& boundary_of(const CellComplex& cx, int i, Index d) {
  return i == 1 ? cx.edge_boundary[d] : cx.face_boundary[d];
}

}  // namespace

Matrix assemble_boundary(const Cosheaf& k, int i) {
  if (i != 1 && i != 2) throw Error(ErrorKind::InvalidInput, "boundary degree must be 1 or 2");
  const auto& cx = *k.complex;
  const auto row_off = offsets(k.stalk_dim[i - 1]);
  const auto col_off = offsets(k.stalk_dim[i]);
  Matrix d = Matrix::Zero(row_off.back(), col_off.back());
  if (static_cast<Index>(k.ext[i].size()) != cx.count(i))
    throw Error(ErrorKind::MissingExtension, "extension table has the wrong number of cells");
  for (Index cell = 0; cell < cx.count(i); ++cell) {
    const auto& bd = boundary_of(cx, i, cell);
    if (k.ext[i][cell].size() != bd.size())
      throw Error(ErrorKind::MissingExtension,
                  "missing extension below " + cx.id(i, cell));
    for (std::size_t n = 0; n < bd.size(); ++n) {
      const Matrix& blk = k.ext[i][cell][n];
      const Index c = bd[n].cell;
      if (blk.rows() != k.stalk_dim[i - 1][c] || blk.cols() != k.stalk_dim[i][cell])
        throw Error(ErrorKind::MissingExtension,
                    "extension " + cx.id(i, cell) + " > " + cx.id(i - 1, c) + " has wrong shape");
      d.block(row_off[c], col_off[cell], blk.rows(), blk.cols()) += double(bd[n].sign) * blk;
    }
  }
  return d;
}

Matrix ChainComplex::boundary(int i) const {
  switch (i) {
    case 0: return Matrix::Zero(0, dims[0]);
    case 1: return d1;
    case 2: return d2;
    default: return Matrix::Zero(dims[2], 0);
  }
}

int ChainComplex::euler() const { return int(dims[0] - dims[1] + dims[2]); }

ChainComplex chain_complex(const Cosheaf& k) {
  ChainComplex c;
  for (int i = 0; i < 3; ++i) c.dims[i] = k.chain_dim(i);
  c.d1 = assemble_boundary(k, 1);
  c.d2 = assemble_boundary(k, 2);
  const double scale = std::max(1.0, max_abs(c.d1) * max_abs(c.d2));
  const double defect = max_abs(c.d1 * c.d2);
  if (defect > 1e-10 * scale)
    throw Error(ErrorKind::InternalInvariant,
                "boundary of boundary is " + std::to_string(defect) + ", expected 0");
  return c;
}

HomologyBasis homology(const ChainComplex& chain, int i, const Tolerance& tol) {
  HomologyBasis h;
  h.degree = i;
  if (i < 0 || i > 2) throw Error(ErrorKind::InvalidInput, "homology degree must be 0, 1 or 2");
  const SubspaceBasis cycles = svd_subspaces(chain.boundary(i), tol).kernel;
  const SubspaceBasis boundaries = svd_subspaces(chain.boundary(i + 1), tol).image;
  h.cycles_dim = cycles.dim();
  h.boundaries_dim = boundaries.dim();
  h.representatives = quotient_representatives(cycles, boundaries, tol);
  return h;
}

Matrix CosheafMap::chain_map(int i) const {
  const auto ro = offsets(codomain->stalk_dim[i]);
  const auto co = offsets(domain->stalk_dim[i]);
  Matrix m = Matrix::Zero(ro.back(), co.back());
  for (std::size_t c = 0; c < blocks[i].size(); ++c) {
    const Matrix& b = blocks[i][c];
    m.block(ro[c], co[c], b.rows(), b.cols()) = b;
  }
  return m;
}

CosheafMap identity_map(std::shared_ptr<const Cosheaf> k) {
  CosheafMap phi;
  for (int i = 0; i < 3; ++i)
    for (Index d : k->stalk_dim[i]) phi.blocks[i].push_back(Matrix::Identity(d, d));
  phi.domain = k;
  phi.codomain = k;
  return phi;
}

std::vector<MapDefect> verify_map(const CosheafMap& phi, const Tolerance& tol) {
  std::vector<MapDefect> out;
  const auto& cx = *phi.domain->complex;
  for (int i = 1; i <= 2; ++i) {
    for (Index d = 0; d < cx.count(i); ++d) {
      const auto& bd = boundary_of(cx, i, d);
      for (std::size_t n = 0; n < bd.size(); ++n) {
        const Index c = bd[n].cell;
        const Matrix lhs = phi.blocks[i - 1][c] * phi.domain->ext[i][d][n];
        const Matrix rhs = phi.codomain->ext[i][d][n] * phi.blocks[i][d];
        const double err = max_abs(lhs - rhs);
        const double scale = std::max({max_abs(lhs), max_abs(rhs), 1.0});
        if (err > tol.abs_cutoff(scale)) out.push_back({i, d, c, err});
      }
    }
  }
  return out;
}

Matrix Quotient::lift(int i) const {
  Index rows = 0, cols = 0;
  for (const auto& q : complement[i]) {
    rows += q.rows();
    cols += q.cols();
  }
  Matrix m = Matrix::Zero(rows, cols);
  Index r = 0, c = 0;
  for (const auto& q : complement[i]) {
    m.block(r, c, q.rows(), q.cols()) = q;
    r += q.rows();
    c += q.cols();
  }
  return m;
}

Quotient quotient_cosheaf(const CosheafMap& phi, const Tolerance& tol,
                          const ComplementBases* preferred) {
  const auto& cod = *phi.codomain;
  const auto& cx = *cod.complex;
  Quotient q;
  auto k = std::make_shared<Cosheaf>();
  k->complex = cod.complex;
  for (int i = 0; i < 3; ++i) {
    for (Index c = 0; c < cx.count(i); ++c) {
      const Matrix& blk = phi.blocks[i][c];
      const Index n = cod.stalk_dim[i][c];
      const auto sub = svd_subspaces(blk, tol);
      if (sub.rank != blk.cols())
        throw Error(ErrorKind::NotInjective, "map is not injective at " + cx.id(i, c));
      Matrix comp;
      if (preferred) {
        comp = (*preferred)[i][c];
        if (comp.rows() != n || comp.cols() != n - sub.rank)
          throw Error(ErrorKind::NotASubspace, "complement at " + cx.id(i, c) + " has wrong shape");
        if (orthonormality_defect(comp) > 1e-10 ||
            max_abs(comp.adjoint() * sub.image.basis) > tol.abs)
          throw Error(ErrorKind::NotASubspace,
                      "complement at " + cx.id(i, c) + " is not an orthonormal complement");
      } else {
        comp = quotient_representatives(SubspaceBasis::whole(n), sub.image, tol).basis;
      }
      k->stalk_dim[i].push_back(comp.cols());
      q.complement[i].push_back(comp);
      q.pi.blocks[i].push_back(comp.adjoint());
    }
  }
  for (int i = 1; i <= 2; ++i) {
    k->ext[i].resize(cx.count(i));
    for (Index d = 0; d < cx.count(i); ++d) {
      const auto& bd = boundary_of(cx, i, d);
      for (std::size_t n = 0; n < bd.size(); ++n)
        k->ext[i][d].push_back(q.complement[i - 1][bd[n].cell].adjoint() * cod.ext[i][d][n] *
                               q.complement[i][d]);
    }
  }
  q.cosheaf = k;
  q.pi.domain = phi.codomain;
  q.pi.codomain = k;
  return q;
}

namespace {

Vector lift_and_solve(const ShortExact& ses, int i, const Vector& y, const Matrix& phi_low,
                      const Tolerance& tol) {
  const Matrix d_mid = assemble_boundary(*ses.phi.codomain, i);
  const Vector z = d_mid * y;
  LeastSquares ls = solve_ls(phi_low, z, tol);
  if (ls.residual_norm > tol.abs_cutoff(z.norm()))
    throw Error(ErrorKind::NotInImage, "boundary of the lift is not in the image of the map (residual " +
                                           std::to_string(ls.residual_norm) + ")");
  return ls.x;
}

}  // namespace

Vector connecting_homomorphism(const ShortExact& ses, int i, const Vector& x, const Tolerance& tol,
                               std::uint64_t seed) {
  if (i < 1 || i > 2) throw Error(ErrorKind::InvalidInput, "connecting map degree must be 1 or 2");
  const Matrix lift = ses.quotient.lift(i);
  const Matrix pi = ses.quotient.pi.chain_map(i);
  if (x.size() != lift.cols()) throw Error(ErrorKind::InvalidInput, "chain has the wrong length");
  const Vector y = lift * x;
  const double lift_err = (pi * y - x).norm();
  if (lift_err > tol.abs_cutoff(x.norm()))
    throw Error(ErrorKind::LiftFailed, "projection does not recover the chain");

  const Matrix phi_low = ses.phi.chain_map(i - 1);
  const Vector w = lift_and_solve(ses, i, y, phi_low, tol);

  // A second lift differs by phi of a random chain; the two outputs must be homologous.
  const Matrix phi_here = ses.phi.chain_map(i);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector r(phi_here.cols());
  for (Index k = 0; k < r.size(); ++k) r(k) = gauss(rng);
  const double yscale = std::max(1.0, y.norm());
  Vector y2 = y + phi_here * r * (yscale / std::max(1.0, (phi_here * r).norm()));
  const Vector w2 = lift_and_solve(ses, i, y2, phi_low, tol);
  if (phi_here.cols() > 0) {
    const Matrix d_sub = assemble_boundary(*ses.phi.domain, i);
    LeastSquares diff = solve_ls(d_sub, w2 - w, tol);
    if (diff.residual_norm > tol.abs_cutoff(std::max(w.norm(), w2.norm())))
      throw Error(ErrorKind::InternalInvariant, "connecting map depends on the choice of lift");
  }
  return w;
}

}  // namespace eqgs
