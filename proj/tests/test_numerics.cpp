#include <doctest.h>

#include <cstdlib>
#include <random>

#include "eqgs/error.hpp"
#include "eqgs/numerics.hpp"

using namespace eqgs;

namespace {

Matrix random_real(std::mt19937_64& rng, Index r, Index c) {
  std::normal_distribution<double> n;
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = n(rng);
  return m;
}

Matrix random_complex(std::mt19937_64& rng, Index r, Index c) {
  std::normal_distribution<double> n;
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

}  // namespace

TEST_CASE("rank five products") {
  std::mt19937_64 rng(3);
  const Tolerance tol;
  for (int t = 0; t < 20; ++t) {
    const Matrix a = random_real(rng, 12, 5) * random_real(rng, 5, 9);
    const SvdSubspaces s = svd_subspaces(a, tol);
    CHECK(s.rank == 5);
    CHECK(s.kernel.dim() == 4);
    CHECK(s.image.dim() == 5);
    CHECK(max_abs(a * s.kernel.basis) < 1e-10);
    CHECK(orthonormality_defect(s.kernel.basis) < 1e-12);
    CHECK(orthonormality_defect(s.image.basis) < 1e-12);
    CHECK(is_real(s.kernel.basis));
    // Image basis spans the columns.
    const Matrix p = projector(s.image);
    CHECK(max_abs(p * a - a) < 1e-9 * max_abs(a));
    CHECK(numeric_rank(a, tol) == 5);
  }
}

TEST_CASE("complex kernels") {
  std::mt19937_64 rng(4);
  const Matrix a = random_complex(rng, 6, 3) * random_complex(rng, 3, 8);
  const SubspaceBasis k = kernel_basis(a, Tolerance{});
  CHECK(k.dim() == 5);
  CHECK(max_abs(a * k.basis) < 1e-10);
}

TEST_CASE("empty and zero matrices") {
  const Tolerance tol;
  CHECK(kernel_basis(Matrix::Zero(0, 4), tol).dim() == 4);
  CHECK(kernel_basis(Matrix::Zero(3, 0), tol).dim() == 0);
  CHECK(image_basis(Matrix::Zero(3, 2), tol).dim() == 0);
  CHECK(numeric_rank(Matrix::Zero(3, 3), tol) == 0);
  CHECK(SubspaceBasis::whole(3).dim() == 3);
  CHECK(SubspaceBasis::zero(3).dim() == 0);
}

TEST_CASE("scale floor drops tiny images") {
  Matrix m = Matrix::Zero(3, 1);
  m(0, 0) = 1e-12;
  CHECK(image_basis(m, Tolerance{}).dim() == 1);
  CHECK(image_basis(m, Tolerance{}, 1.0).dim() == 0);
}

TEST_CASE("quotient representatives") {
  std::mt19937_64 rng(5);
  const Tolerance tol;
  const SubspaceBasis amb = image_basis(random_real(rng, 7, 4), tol);
  const SubspaceBasis sub = image_basis(amb.basis * random_real(rng, 4, 2), tol);
  const SubspaceBasis q = quotient_representatives(amb, sub, tol);
  CHECK(q.dim() == 2);
  CHECK(max_abs(sub.basis.adjoint() * q.basis) < 1e-12);
  CHECK(max_abs(projector(amb) * q.basis - q.basis) < 1e-12);

  CHECK(quotient_representatives(amb, SubspaceBasis::zero(7), tol).dim() == 4);

  const SubspaceBasis outside = image_basis(random_real(rng, 7, 1), tol);
  try {
    quotient_representatives(amb, outside, tol);
    FAIL("expected NotASubspace");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotASubspace);
  }
}

TEST_CASE("least squares") {
  std::mt19937_64 rng(6);
  const Matrix a = random_real(rng, 8, 3);
  const Vector x = random_real(rng, 3, 1).col(0);
  const LeastSquares ls = solve_ls(a, a * x, Tolerance{});
  CHECK((ls.x - x).norm() < 1e-10);
  CHECK(ls.residual_norm < 1e-10);

  // Rank-deficient: minimum-norm solution is orthogonal to the kernel.
  const Matrix b = random_real(rng, 5, 2) * random_real(rng, 2, 4);
  const LeastSquares mn = solve_ls(b, b * random_real(rng, 4, 1).col(0), Tolerance{});
  CHECK(max_abs(kernel_basis(b, Tolerance{}).basis.adjoint() * mn.x) < 1e-10);
}

TEST_CASE("subspace comparison ignores basis choice") {
  std::mt19937_64 rng(7);
  const Tolerance tol;
  const Matrix m = random_complex(rng, 6, 3);
  const SubspaceBasis a = image_basis(m, tol);
  const SubspaceBasis b = image_basis(m * random_complex(rng, 3, 3), tol);
  CHECK(same_subspace(a, b, 1e-9));
  CHECK_FALSE(same_subspace(a, image_basis(random_complex(rng, 6, 3), tol), 1e-9));
}

TEST_CASE("tolerance from the environment") {
  CHECK(Tolerance{}.abs_cutoff(0.5) == doctest::Approx(1e-8));
  CHECK(Tolerance{}.abs_cutoff(100.0) == doctest::Approx(1e-6));
  ::setenv("COSHEAF_TOL", "1e-7,1e-5", 1);
  Tolerance t = Tolerance::from_env();
  CHECK(t.rel == doctest::Approx(1e-7));
  CHECK(t.abs == doctest::Approx(1e-5));
  ::setenv("COSHEAF_TOL", "1e-6", 1);
  t = Tolerance::from_env();
  CHECK(t.rel == doctest::Approx(1e-6));
  CHECK(t.abs == doctest::Approx(1e-8));
  ::unsetenv("COSHEAF_TOL");
  t = Tolerance::from_env();
  CHECK(t.rel == doctest::Approx(1e-9));
}
