#include "eqgs/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eqgs/error.hpp"

namespace eqgs {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

Group::Group(GroupKind kind, int m, double mirror_axis) : kind_(kind), m_(m), axis_(mirror_axis) {
  const int n = order();
  class_of_.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (class_of_[x] >= 0) continue;
    ConjugacyClass cls;
    cls.representative = x;
    for (int h = 0; h < n; ++h) {
      const int y = multiply(multiply(h, x), inverse(h));
      if (std::find(cls.members.begin(), cls.members.end(), y) == cls.members.end())
        cls.members.push_back(y);
    }
    std::sort(cls.members.begin(), cls.members.end());
    for (int y : cls.members) class_of_[y] = static_cast<int>(classes_.size());
    classes_.push_back(std::move(cls));
  }
}

GroupElement Group::element(int index) const { return {index % m_, index / m_}; }

int Group::index(GroupElement g) const { return g.b * m_ + mod(g.k, m_); }

int Group::multiply(int a, int b) const {
  const GroupElement x = element(a), y = element(b);
  return index({x.k + (x.b ? -y.k : y.k), x.b ^ y.b});
}

int Group::inverse(int a) const {
  const GroupElement x = element(a);
  return x.b ? a : index({-x.k, 0});
}

std::string Group::element_name(int index) const {
  const GroupElement g = element(index);
  if (g.k == 0 && g.b == 0) return "e";
  std::string s;
  if (g.k == 1) s = "r";
  else if (g.k > 1) s = "r^" + std::to_string(g.k);
  if (g.b) s += "s";
  return s;
}

Group build_group(GroupKind kind, int m, double mirror_axis_deg) {
  if (m < 1) throw Error(ErrorKind::BadOrder, "group order parameter must be at least 1");
  if (m > 360) throw Error(ErrorKind::BadOrder, "group order parameter is unreasonably large");
  return Group(kind, m, mirror_axis_deg * std::numbers::pi / 180.0);
}

int CharacterTable::find(const std::string& key) const {
  for (std::size_t j = 0; j < irreps.size(); ++j)
    if (irreps[j].label == key) return static_cast<int>(j);
  try {
    std::size_t used = 0;
    const int n = std::stoi(key, &used);
    if (used == key.size() && n >= 1 && n <= static_cast<int>(irreps.size())) return n - 1;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::UnknownIrrep, "no irreducible representation '" + key + "'");
}

int CharacterTable::conjugate(int j) const {
  const auto& chi = irreps[j].character;
  for (std::size_t t = 0; t < irreps.size(); ++t) {
    const auto& psi = irreps[t].character;
    bool same = true;
    for (std::size_t c = 0; c < chi.size() && same; ++c)
      same = std::abs(std::conj(chi[c]) - psi[c]) < 1e-9;
    if (same) return static_cast<int>(t);
  }
  throw Error(ErrorKind::InternalInvariant, "conjugate character missing from table");
}

Complex character_at(const Group& g, const Character& chi, int element) {
  return chi[g.class_of(element)];
}

Complex inner_product(const Group& g, const Character& chi0, const Character& chi1) {
  Complex s = 0.0;
  for (std::size_t c = 0; c < g.classes().size(); ++c)
    s += double(g.classes()[c].members.size()) * chi0[c] * std::conj(chi1[c]);
  return s / double(g.order());
}

namespace {

Irrep irrep_from(const Group& g, std::string label, int dim, auto&& value) {
  Irrep ir{std::move(label), dim, {}};
  for (const auto& cls : g.classes()) ir.character.push_back(value(g.element(cls.representative)));
  return ir;
}

void check_table(const Group& g, const CharacterTable& t) {
  int sum_sq = 0;
  for (std::size_t a = 0; a < t.irreps.size(); ++a) {
    sum_sq += t.irreps[a].dim * t.irreps[a].dim;
    for (std::size_t b = 0; b < t.irreps.size(); ++b) {
      const Complex ip = inner_product(g, t.irreps[a].character, t.irreps[b].character);
      if (std::abs(ip - Complex(a == b ? 1.0 : 0.0)) > 1e-10)
        throw Error(ErrorKind::InternalInvariant, "character table is not orthonormal");
    }
  }
  if (sum_sq != g.order() || t.irreps.size() != g.classes().size())
    throw Error(ErrorKind::InternalInvariant, "character table is incomplete");
}

}  // namespace

CharacterTable character_table(const Group& g) {
  CharacterTable t;
  const int m = g.m();
  const double two_pi = 2.0 * std::numbers::pi;
  t.zeta = std::polar(1.0, two_pi / m);
  auto sgn = [](int e) { return (e % 2 == 0) ? 1.0 : -1.0; };

  if (g.kind() == GroupKind::Cyclic) {
    for (int j = 1; j <= m; ++j)
      t.irreps.push_back(irrep_from(g, std::to_string(j), 1, [&](GroupElement x) {
        return std::polar(1.0, two_pi * double(mod(x.k * (j - 1), m)) / m);
      }));
  } else if (m == 2) {
    // D4 = Z2 x Z2 with coordinates t1 = k + b, t2 = k, so that
    // tau(r) = (1,1), tau(s) = (1,0) for a vertical mirror.
    const int bits[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (const auto& jb : bits) {
      const int j1 = jb[0], j2 = jb[1];
      t.irreps.push_back(irrep_from(
          g, std::to_string(j1) + std::to_string(j2), 1,
          [&](GroupElement x) { return Complex(sgn(j1 * (x.k + x.b) + j2 * x.k)); }));
    }
  } else {
    t.irreps.push_back(irrep_from(g, "A1", 1, [](GroupElement) { return Complex(1.0); }));
    t.irreps.push_back(irrep_from(g, "A2", 1, [&](GroupElement x) { return Complex(sgn(x.b)); }));
    if (m % 2 == 0) {
      t.irreps.push_back(irrep_from(g, "B1", 1, [&](GroupElement x) { return Complex(sgn(x.k)); }));
      t.irreps.push_back(
          irrep_from(g, "B2", 1, [&](GroupElement x) { return Complex(sgn(x.k + x.b)); }));
    }
    const int top = (m % 2 == 1) ? (m - 1) / 2 : m / 2 - 1;
    for (int h = 1; h <= top; ++h)
      t.irreps.push_back(irrep_from(g, "E" + std::to_string(h), 2, [&](GroupElement x) {
        return x.b ? Complex(0.0) : Complex(2.0 * std::cos(two_pi * h * x.k / m));
      }));
  }
  check_table(g, t);
  return t;
}

std::vector<int> decompose_character(const Group& g, const CharacterTable& table,
                                     const Character& chi) {
  std::vector<int> out;
  for (const auto& ir : table.irreps) {
    const Complex c = inner_product(g, chi, ir.character);
    const double r = std::round(c.real());
    if (std::abs(c - Complex(r)) > 1e-6 || r < 0.0)
      throw Error(ErrorKind::NotIntegral, "multiplicity of " + ir.label + " is " +
                                              std::to_string(c.real()) + "+" +
                                              std::to_string(c.imag()) + "i");
    out.push_back(static_cast<int>(r));
  }
  return out;
}

Eigen::Matrix2d tau(const Group& g, int element) {
  const GroupElement x = g.element(element);
  const double a = 2.0 * std::numbers::pi * x.k / g.m();
  Eigen::Matrix2d r;
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  if (!x.b) return r;
  const double t = 2.0 * g.mirror_axis();
  Eigen::Matrix2d s;
  s << std::cos(t), std::sin(t), std::sin(t), -std::cos(t);
  return r * s;
}

std::vector<Eigen::Matrix2d> standard_rep(const Group& g) {
  std::vector<Eigen::Matrix2d> out;
  for (int x = 0; x < g.order(); ++x) out.push_back(tau(g, x));
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if ((out[a] * out[b] - out[g.multiply(a, b)]).cwiseAbs().maxCoeff() > 1e-12)
        throw Error(ErrorKind::InternalInvariant, "tau is not a homomorphism");
  return out;
}

Character tau_character(const Group& g) {
  Character chi;
  for (const auto& cls : g.classes()) chi.push_back(tau(g, cls.representative).trace());
  return chi;
}

Character regular_character(const Group& g) {
  Character chi;
  for (const auto& cls : g.classes())
    chi.push_back(cls.representative == g.identity() ? double(g.order()) : 0.0);
  return chi;
}

}  // namespace eqgs
