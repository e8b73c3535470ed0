#include "eqgs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "eqgs/error.hpp"

namespace eqgs {

double Tolerance::abs_cutoff(double scale) const { return abs * std::max(1.0, scale); }

Tolerance Tolerance::from_env() {
  Tolerance tol;
  const char* raw = std::getenv("COSHEAF_TOL");
  if (raw == nullptr || *raw == '\0') return tol;
  std::string text(raw);
  try {
    auto comma = text.find(',');
    tol.rel = std::stod(text.substr(0, comma));
    if (comma != std::string::npos) tol.abs = std::stod(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "COSHEAF_TOL must be REL or REL,ABS; got '" + text + "'");
  }
  if (!(tol.rel > 0.0) || !(tol.abs > 0.0) || !std::isfinite(tol.rel) || !std::isfinite(tol.abs))
    throw Error(ErrorKind::Parse, "COSHEAF_TOL values must be positive and finite");
  return tol;
}

SubspaceBasis SubspaceBasis::whole(Index n) { return {n, Matrix::Identity(n, n)}; }
SubspaceBasis SubspaceBasis::zero(Index n) { return {n, Matrix(n, 0)}; }

bool is_real(const Matrix& m, double tol) {
  return m.size() == 0 || m.imag().cwiseAbs().maxCoeff() <= tol;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double orthonormality_defect(const Matrix& b) {
  if (b.cols() == 0) return 0.0;
  Matrix gram = b.adjoint() * b - Matrix::Identity(b.cols(), b.cols());
  return gram.cwiseAbs().maxCoeff();
}

namespace {

// Full SVD with U, V, singular values. Real inputs go through the real solver.
struct FullSvd {
  Matrix u;
  Matrix v;
  Eigen::VectorXd sigma;
};

FullSvd full_svd(const Matrix& m) {
  FullSvd out;
  if (is_real(m)) {
    RealMatrix re = m.real();
    Eigen::BDCSVD<RealMatrix> svd(re, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.u = svd.matrixU().cast<Complex>();
    out.v = svd.matrixV().cast<Complex>();
    out.sigma = svd.singularValues();
  } else {
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.u = svd.matrixU();
    out.v = svd.matrixV();
    out.sigma = svd.singularValues();
  }
  return out;
}

Index rank_from_sigma(const Eigen::VectorXd& sigma, const Tolerance& tol, double scale_floor) {
  if (sigma.size() == 0) return 0;
  const double reference = std::max(sigma(0), scale_floor);
  if (reference <= 0.0) return 0;
  const double cutoff = tol.rel * reference;
  Index r = 0;
  while (r < sigma.size() && sigma(r) > cutoff) ++r;
  return r;
}

}  // namespace

SvdSubspaces svd_subspaces(const Matrix& m, const Tolerance& tol, double scale_floor) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  SvdSubspaces out;
  if (rows == 0 || cols == 0) {
    out.kernel = SubspaceBasis::whole(cols);
    out.image = SubspaceBasis::zero(rows);
    return out;
  }
  FullSvd svd = full_svd(m);
  out.rank = rank_from_sigma(svd.sigma, tol, scale_floor);
  out.kernel = {cols, svd.v.rightCols(cols - out.rank)};
  out.image = {rows, svd.u.leftCols(out.rank)};
  return out;
}

SubspaceBasis kernel_basis(const Matrix& m, const Tolerance& tol) {
  return svd_subspaces(m, tol).kernel;
}

SubspaceBasis image_basis(const Matrix& m, const Tolerance& tol, double scale_floor) {
  return svd_subspaces(m, tol, scale_floor).image;
}

Index numeric_rank(const Matrix& m, const Tolerance& tol) { return svd_subspaces(m, tol).rank; }

SubspaceBasis quotient_representatives(const SubspaceBasis& ambient, const SubspaceBasis& sub,
                                       const Tolerance& tol) {
  if (ambient.ambient_dim != sub.ambient_dim)
    throw Error(ErrorKind::NotASubspace, "ambient dimensions differ");
  if (sub.dim() == 0) return ambient;
  if (sub.dim() > ambient.dim())
    throw Error(ErrorKind::NotASubspace, "subspace has larger dimension than ambient space");

  Matrix coords = ambient.basis.adjoint() * sub.basis;
  Matrix residual = sub.basis - ambient.basis * coords;
  if (max_abs(residual) > tol.abs_cutoff(1.0))
    throw Error(ErrorKind::NotASubspace,
                "projection residual " + std::to_string(max_abs(residual)) + " exceeds tolerance");

  // The left singular vectors of coords beyond its (full) column rank span the
  // complement in ambient coordinates.
  FullSvd svd = full_svd(coords);
  const Index keep = ambient.dim() - sub.dim();
  return {ambient.ambient_dim, ambient.basis * svd.u.rightCols(keep)};
}

LeastSquares solve_ls(const Matrix& m, const Vector& b, const Tolerance& tol) {
  LeastSquares out;
  if (m.cols() == 0) {
    out.x = Vector::Zero(0);
    out.residual_norm = b.norm();
    return out;
  }
  if (m.rows() == 0) {
    out.x = Vector::Zero(m.cols());
    return out;
  }
  if (is_real(m) && is_real(b)) {
    RealMatrix re = m.real();
    Eigen::BDCSVD<RealMatrix> svd(re, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(tol.rel);
    out.x = svd.solve(RealVector(b.real())).cast<Complex>();
  } else {
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(tol.rel);
    out.x = svd.solve(b);
  }
  out.residual_norm = (m * out.x - b).norm();
  return out;
}

Matrix projector(const SubspaceBasis& b) { return b.basis * b.basis.adjoint(); }

bool same_subspace(const SubspaceBasis& a, const SubspaceBasis& b, double tol) {
  if (a.ambient_dim != b.ambient_dim || a.dim() != b.dim()) return false;
  return max_abs(projector(a) - projector(b)) <= tol;
}

}  // namespace eqgs
