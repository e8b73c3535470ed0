#include <doctest.h>

#include <random>

#include "eqgs/equivariant.hpp"
#include "eqgs/error.hpp"
#include "eqgs/framework_io.hpp"
#include "eqgs/statics.hpp"
#include "support/frameworks.hpp"

using namespace eqgs;

namespace {

const char* symmetric_samples[] = {"desargues", "d4_grid", "d6_wheel", "d8_star", "z5_flower"};

struct Setup {
  GraphicStaticsSequence seq;
  SymmetricStatics sym;
};

Setup setup(const FrameworkFile& file) {
  const Tolerance tol;
  GraphicStaticsSequence seq = build_graphic_statics_sequence(file.framework, tol);
  auto action = build_action(file.framework, *file.group);
  SymmetricStatics sym = build_symmetric_statics(seq, action, tol);
  return {std::move(seq), std::move(sym)};
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidInput;
}

// All six faces of the cube for phi : F -> R^2 and pi : R^2 -> P.
void check_cube(const Setup& s) {
  const Tolerance tol;
  for (const CosheafRep* rep : {&s.sym.force_rep, &s.sym.constant_rep, &s.sym.position_rep}) {
    const EquivarianceReport r = verify_equivariance(*rep, tol);
    CHECK(r.ok());
    CHECK(r.max_commutator_error <= 1e-9);
  }
  CHECK(verify_map(s.seq.phi, tol).empty());
  CHECK(verify_map(s.seq.quotient.pi, tol).empty());
  CHECK(map_equivariance_error(s.seq.phi, s.sym.force_rep, s.sym.constant_rep) <= 1e-9);
  CHECK(map_equivariance_error(s.seq.quotient.pi, s.sym.constant_rep, s.sym.position_rep) <= 1e-9);
}

}  // namespace

TEST_CASE("sample actions are valid and equivariant") {
  for (const char* name : symmetric_samples) {
    CAPTURE(name);
    const FrameworkFile file = testing::load_sample(name);
    REQUIRE(file.group);
    const Setup s = setup(file);
    CHECK(check_action(*s.sym.action).empty());
    check_cube(s);
  }
}

TEST_CASE("random symmetric frameworks pass the cube") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 12; ++t) {
    const auto sf = testing::random_symmetric_framework(rng);
    CAPTURE(t);
    const Setup s = setup(sf.file);
    CHECK(check_action(*s.sym.action).empty());
    check_cube(s);
  }
}

TEST_CASE("reflections reverse every face") {
  for (const char* name : {"desargues", "d4_grid", "d6_wheel", "d8_star"}) {
    const FrameworkFile file = testing::load_sample(name);
    const Setup s = setup(file);
    const Group& g = *s.sym.action->group;
    for (int x = 0; x < g.order(); ++x) {
      const int expect = g.element(x).b ? -1 : 1;
      for (int sign : s.sym.action->sign[2][x]) CHECK(sign == expect);
    }
  }
}

TEST_CASE("projector algebra") {
  const Tolerance tol;
  for (const char* name : symmetric_samples) {
    CAPTURE(name);
    const Setup s = setup(testing::load_sample(name));
    const CharacterTable& t = s.sym.table;
    for (const CosheafRep* rep : {&s.sym.force_rep, &s.sym.constant_rep, &s.sym.position_rep})
      for (int i = 0; i <= 2; ++i) {
        const Index n = rep->cosheaf->chain_dim(i);
        Matrix sum = Matrix::Zero(n, n);
        for (int j = 0; j < t.size(); ++j) {
          const Matrix p = isotypic_projector(*rep, t, i, j);
          CHECK(max_abs(p * p - p) <= 1e-9);
          for (int k = 0; k < t.size(); ++k)
            if (k != j) CHECK(max_abs(p * isotypic_projector(*rep, t, i, k)) <= 1e-9);
          for (int g = 0; g < s.sym.action->group->order(); ++g) {
            const Matrix r = rep->chain_matrix(i, g);
            CHECK(max_abs(r * p - p * r) <= 1e-9);
          }
          sum += p;
        }
        CHECK(max_abs(sum - Matrix::Identity(n, n)) <= 1e-9);
      }
  }
}

TEST_CASE("chain multiplicities match a trace oracle") {
  for (const char* name : symmetric_samples) {
    CAPTURE(name);
    const Setup s = setup(testing::load_sample(name));
    const Group& g = *s.sym.action->group;
    const CharacterTable& t = s.sym.table;
    const auto mult = multiplicities(s.sym.force_rep, t);
    for (int i = 0; i <= 2; ++i) {
      Index total = 0;
      for (int j = 0; j < t.size(); ++j) {
        Complex acc = 0.0;
        for (int x = 0; x < g.order(); ++x)
          acc += s.sym.force_rep.chain_matrix(i, x).trace() * std::conj(character_at(g, t.irreps[j].character, x));
        acc /= double(g.order());
        CHECK(std::abs(acc - Complex(mult[i][j])) < 1e-9);
        total += mult[i][j] * t.irreps[j].dim;
      }
      CHECK(total == s.sym.force_rep.cosheaf->chain_dim(i));
    }
  }
}

TEST_CASE("asymmetric coordinates are not a realization") {
  FrameworkFile file = testing::load_sample("desargues");
  file.framework.positions[0] += Point(0.05, 0.0);
  CHECK(kind_of([&] { build_action(file.framework, *file.group); }) == ErrorKind::NotARealization);
}

TEST_CASE("broken vertex maps are not an action") {
  FrameworkFile file = testing::load_sample("d6_wheel");
  GroupBlock block = *file.group;
  auto& r = block.generators.at("r");
  std::swap(r[1], r[2]);
  const ErrorKind k = kind_of([&] { build_action(file.framework, block); });
  CHECK((k == ErrorKind::NotAnAction || k == ErrorKind::NotARealization || k == ErrorKind::NotEquivariant));

  GroupBlock missing = *file.group;
  missing.generators.erase("s");
  CHECK(kind_of([&] { build_action(file.framework, missing); }) == ErrorKind::NotAnAction);

  GroupBlock dup = *file.group;
  dup.generators["r"][0] = dup.generators["r"][1];
  CHECK(kind_of([&] { build_action(file.framework, dup); }) == ErrorKind::NotAnAction);
}

TEST_CASE("position rep closed form agrees with the induced blocks") {
  // build_position_rep throws EquivarianceBroken when the closed form and the
  // blocks induced through the complement bases disagree.
  for (const char* name : symmetric_samples) {
    const FrameworkFile file = testing::load_sample(name);
    const Tolerance tol;
    const GraphicStaticsSequence seq = build_graphic_statics_sequence(file.framework, tol);
    auto action = build_action(file.framework, *file.group);
    CHECK_NOTHROW(build_position_rep(seq.position, seq.quotient.complement, action, tol));
  }
}

TEST_CASE("symmetric Euler from multiplicities") {
  std::array<std::vector<int>, 3> m = {std::vector<int>{3, 1}, std::vector<int>{2, 2}, std::vector<int>{0, 4}};
  CHECK(symmetric_euler(m) == std::vector<int>{1, 3});
}
