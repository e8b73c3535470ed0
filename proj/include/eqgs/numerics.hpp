#pragma once

// Dense linear algebra shared by every homology computation. All matrices are
// complex; real problems are stored with zero imaginary parts and are solved
// in real arithmetic so that their bases come back real.

#include <complex>

#include <Eigen/Dense>

namespace eqgs {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Tolerance policy. Singular values at or below `rel * sigma_max` count as
/// zero; residuals are compared against `abs * max(1, scale)`.
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-8;

  double abs_cutoff(double scale) const;

  /// Defaults, overridden by the COSHEAF_TOL environment variable when set.
  /// Accepted forms: "REL" or "REL,ABS".
  static Tolerance from_env();
};

/// Orthonormal basis of a subspace of C^ambient_dim, stored as columns.
struct SubspaceBasis {
  Index ambient_dim = 0;
  Matrix basis;

  Index dim() const { return basis.cols(); }
  static SubspaceBasis whole(Index n);
  static SubspaceBasis zero(Index n);
};

struct SvdSubspaces {
  SubspaceBasis kernel;
  SubspaceBasis image;
  Index rank = 0;
};

/// Kernel and image from a single SVD so rank-nullity holds exactly.
/// `scale_floor` raises the reference magnitude for the relative cutoff; pass 1
/// when the columns are known to be O(1) (projections of orthonormal vectors).
SvdSubspaces svd_subspaces(const Matrix& m, const Tolerance& tol, double scale_floor = 0.0);

SubspaceBasis kernel_basis(const Matrix& m, const Tolerance& tol);
SubspaceBasis image_basis(const Matrix& m, const Tolerance& tol, double scale_floor = 0.0);
Index numeric_rank(const Matrix& m, const Tolerance& tol);

/// Orthonormal basis of the orthogonal complement of `sub` inside `ambient`.
/// Throws NotASubspace when `sub` does not lie in `ambient`.
SubspaceBasis quotient_representatives(const SubspaceBasis& ambient, const SubspaceBasis& sub,
                                       const Tolerance& tol);

struct LeastSquares {
  Vector x;
  double residual_norm = 0.0;
};

/// Minimum-norm least-squares solution of m x = b.
LeastSquares solve_ls(const Matrix& m, const Vector& b, const Tolerance& tol);

bool is_real(const Matrix& m, double tol = 0.0);
double max_abs(const Matrix& m);

/// ||B^H B - I||_inf, for checking basis orthonormality.
double orthonormality_defect(const Matrix& b);

/// Orthogonal projector onto the column span of an orthonormal basis.
Matrix projector(const SubspaceBasis& b);

/// True when the two subspaces coincide within `tol` (projector difference).
bool same_subspace(const SubspaceBasis& a, const SubspaceBasis& b, double tol);

}  // namespace eqgs
