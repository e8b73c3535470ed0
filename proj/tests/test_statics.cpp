#include <doctest.h>

#include <random>

#include "eqgs/error.hpp"
#include "eqgs/framework_io.hpp"
#include "eqgs/statics.hpp"
#include "support/frameworks.hpp"

using namespace eqgs;

namespace {

struct Analysis {
  GraphicStaticsSequence seq;
  SymmetricStatics sym;
  GraphicStaticsReport report;
};

Analysis analyze_sample(const FrameworkFile& file) {
  const Tolerance tol;
  GraphicStaticsSequence seq = build_graphic_statics_sequence(file.framework, tol);
  SymmetricStatics sym = build_symmetric_statics(seq, build_action(file.framework, *file.group), tol);
  GraphicStaticsReport report = symmetric_graphic_statics(seq, sym, tol);
  return {std::move(seq), std::move(sym), std::move(report)};
}

Matrix conj(const Matrix& m) { return m.conjugate(); }

}  // namespace

TEST_CASE("homology dimensions match the rigidity matrix") {
  std::mt19937_64 rng(41);
  const Tolerance tol;
  for (int t = 0; t < 25; ++t) {
    const Framework fw = testing::random_sphere_framework(rng, 40);
    const CellComplex& cx = *fw.complex;
    const Index rank = testing::lu_rank(testing::rigidity_matrix(fw));
    const Index h1 = self_stresses(fw, tol).dim();
    const Index h0 = infinitesimal_motions(fw, tol).dim();
    CHECK(h1 == cx.count(1) - rank);
    CHECK(h0 == 2 * cx.count(0) - rank);
    const MaxwellCount mc = maxwell_check(fw, tol);
    CHECK(mc.lhs == mc.rhs);
    CHECK(mc.rhs == 2 * cx.count(0) - cx.count(1));

    const GraphicStaticsSequence seq = build_graphic_statics_sequence(fw, tol);
    CHECK(reciprocal_space(seq, tol).dim() == h1 + 2);
    CHECK(homology(seq.position_chain, 1, tol).dim() == h0 - 2);
    CHECK(homology(seq.position_chain, 0, tol).dim() == 0);
  }
}

TEST_CASE("stresses are equilibria") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 10; ++t) {
    const Framework fw = testing::random_sphere_framework(rng, 30);
    const SubspaceBasis s = self_stresses(fw, Tolerance{});
    const RealMatrix rt = testing::rigidity_matrix(fw).transpose();
    if (s.dim() > 0) CHECK(max_abs(rt.cast<Complex>() * s.basis) < 1e-9 * fw.diameter());
  }
}

TEST_CASE("reciprocal round trip") {
  std::mt19937_64 rng(43);
  const Tolerance tol;
  int checked = 0;
  for (int t = 0; t < 30; ++t) {
    const Framework fw = testing::random_sphere_framework(rng, 40);
    const GraphicStaticsSequence seq = build_graphic_statics_sequence(fw, tol);
    const SubspaceBasis s = self_stresses(fw, tol);
    for (Index c = 0; c < s.dim(); ++c) {
      const Vector w = s.basis.col(c);
      const Vector xi = reciprocal_from_stress(fw, w, tol);
      CHECK(parallelism_defect(fw, xi) < 1e-9);
      const Vector back = stress_from_reciprocal(seq, xi, tol);
      CHECK((back - w).norm() <= 1e-8 * w.norm());
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("reciprocal encoding") {
  ReciprocalDiagram xi = {Eigen::Vector2cd(1, 2), Eigen::Vector2cd(Complex(0, 1), 3)};
  const Vector v = encode_reciprocal(xi);
  CHECK(v.size() == 4);
  CHECK(v(3) == Complex(3));
  const ReciprocalDiagram back = decode_reciprocal(v);
  CHECK(back[1](0) == Complex(0, 1));
}

TEST_CASE("translations are reciprocals with zero stress") {
  const FrameworkFile tri = testing::load_sample("triangle");
  const Tolerance tol;
  const GraphicStaticsSequence seq = build_graphic_statics_sequence(tri.framework, tol);
  const HomologyBasis h = reciprocal_space(seq, tol);
  CHECK(h.dim() == 2);
  for (Index c = 0; c < h.dim(); ++c) {
    CHECK(stress_from_reciprocal(seq, h.representatives.basis.col(c), tol).norm() < 1e-9);
    CHECK(parallelism_defect(tri.framework, h.representatives.basis.col(c)) < 1e-12);
  }
}

TEST_CASE("non-parallel diagrams and non-stresses are rejected") {
  const FrameworkFile file = testing::load_sample("desargues");
  const Tolerance tol;
  const GraphicStaticsSequence seq = build_graphic_statics_sequence(file.framework, tol);
  Vector junk = Vector::Zero(2 * file.framework.complex->count(2));
  junk(0) = 1.0;
  try {
    stress_from_reciprocal(seq, junk, tol);
    FAIL("expected NotACycle");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotACycle);
  }
  Vector w = Vector::Ones(file.framework.complex->count(1));
  try {
    reciprocal_from_stress(file.framework, w, tol);
    FAIL("expected InconsistentStress");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentStress);
  }
}

TEST_CASE("Desargues mirror stress gives a mirror reciprocal") {
  const FrameworkFile file = testing::load_sample("desargues");
  const Analysis a = analyze_sample(file);
  const Tolerance tol;
  CHECK(a.report.h1_force == 1);
  const SubspaceBasis stress = self_stresses(file.framework, tol);
  REQUIRE(stress.dim() == 1);
  const Vector w = stress.basis.col(0);
  const CellAction& act = *a.sym.action;
  const int s = act.group->index({0, 1});
  // w(s e) = w(e): the stress is symmetric under the vertical mirror.
  for (Index e = 0; e < w.size(); ++e) CHECK(std::abs(w(act.perm[1][s][e]) - w(e)) < 1e-9);
  const ReciprocalDiagram xi = decode_reciprocal(reciprocal_from_stress(file.framework, w, tol));
  const Index outer = *file.framework.complex->outer_face;
  CHECK(xi[outer].norm() == 0.0);
  const double scale = std::max(1.0, encode_reciprocal(xi).cwiseAbs().maxCoeff());
  for (Index f = 0; f < static_cast<Index>(xi.size()); ++f) {
    const Eigen::Vector2cd& img = xi[act.perm[2][s][f]];
    CHECK(std::abs(img(0) - xi[f](0)) <= 1e-8 * scale);
    CHECK(std::abs(img(1) + xi[f](1)) <= 1e-8 * scale);
  }
}

TEST_CASE("isotypic pieces add up and satisfy the identities") {
  for (const char* name : {"desargues", "d4_grid", "d6_wheel", "d8_star", "z5_flower"}) {
    CAPTURE(name);
    const FrameworkFile file = testing::load_sample(name);
    const Analysis a = analyze_sample(file);
    Index s1 = 0, s2 = 0, s0 = 0, sp1 = 0;
    for (const auto& ir : a.report.irreps) {
      s1 += ir.h1_force;
      s2 += ir.h2_position;
      s0 += ir.h0_force;
      sp1 += ir.h1_position;
      CHECK(ir.h2_position == ir.h1_force + ir.translations);
      CHECK(ir.h0_force == ir.h1_position + ir.translations);
      CHECK(ir.stresses.dim() == ir.h1_force);
      CHECK(ir.reciprocals.dim() == ir.h2_position);
      for (const Vector& v : ir.matched_stresses) {
        // The connecting map sends an isotypic reciprocal to the same isotypic part.
        if (v.norm() > 1e-9)
          CHECK((projector(ir.stresses) * v - v).norm() < 1e-8 * v.norm());
      }
    }
    CHECK(s1 == a.report.h1_force);
    CHECK(s2 == a.report.h2_position);
    CHECK(s0 == a.report.h0_force);
    CHECK(sp1 == a.report.h1_position);
    for (const HomologyDecomposition* d : {&a.report.force, &a.report.constant, &a.report.position})
      CHECK(d->euler_chain == d->euler_homology);
  }
}

TEST_CASE("random symmetric frameworks satisfy the per-irrep identities") {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 10; ++t) {
    const auto sf = testing::random_symmetric_framework(rng);
    const Analysis a = analyze_sample(sf.file);
    Index total = 0;
    for (const auto& ir : a.report.irreps) {
      CHECK(ir.h2_position == ir.h1_force + ir.translations);
      total += ir.h2_position;
    }
    CHECK(total == a.report.h2_position);
    CHECK(a.report.h2_position == a.report.h1_force + 2);
  }
}

TEST_CASE("Z5 conjugate irreps give conjugate reciprocal spaces") {
  const FrameworkFile file = testing::load_sample("z5_flower");
  const Analysis a = analyze_sample(file);
  const Tolerance tol;
  const CharacterTable& t = a.sym.table;
  for (int j = 0; j < t.size(); ++j) {
    const int k = t.conjugate(j);
    const auto& hj = a.report.irreps[j].reciprocals;
    const auto& hk = a.report.irreps[k].reciprocals;
    CHECK(hj.dim() == hk.dim());
    CHECK(same_subspace({hj.ambient_dim, conj(hj.basis)}, hk, 1e-8));
  }
  const auto merged = merge_conjugates(a.report, t, tol);
  CHECK(merged.size() == 3);
  for (const auto& mp : merged) {
    CHECK(is_real(mp.reciprocals.basis));
    const SubspaceBasis a1 = realify(a.report.irreps[mp.first].reciprocals, tol);
    const SubspaceBasis a2 = realify(a.report.irreps[mp.second].reciprocals, tol);
    CHECK(same_subspace(a1, a2, 1e-8));
    CHECK(same_subspace(a1, mp.reciprocals, 1e-8));
  }
}

TEST_CASE("realify keeps real spans") {
  std::mt19937_64 rng(45);
  std::normal_distribution<double> n;
  Matrix m(6, 2);
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 2; ++j) m(i, j) = n(rng);
  const SubspaceBasis b = image_basis(m, Tolerance{});
  CHECK(same_subspace(realify(b, Tolerance{}), b, 1e-10));
  const SubspaceBasis rot{6, b.basis * Complex(0.0, 1.0)};
  CHECK(realify(rot, Tolerance{}).dim() == 2);
}
