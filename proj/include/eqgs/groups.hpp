#pragma once

// Cyclic groups Z_m and dihedral groups D_2m acting on the plane.
//
// Elements are r^k s^b with 0 <= k < m and b in {0, 1}; the element index is
// b * m + k. tau(r) rotates counterclockwise by 2 pi / m and tau(s) reflects
// across the line through the origin at angle `mirror_axis` (radians).

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqgs/numerics.hpp"

namespace eqgs {

enum class GroupKind { Cyclic, Dihedral };

struct GroupElement {
  int k = 0;  // rotation exponent mod m
  int b = 0;  // reflection bit

  bool operator==(const GroupElement&) const = default;
};

struct ConjugacyClass {
  int representative = 0;  // element index
  std::vector<int> members;
};

class Group {
 public:
  Group(GroupKind kind, int m, double mirror_axis);

  GroupKind kind() const { return kind_; }
  int m() const { return m_; }
  int order() const { return kind_ == GroupKind::Cyclic ? m_ : 2 * m_; }
  double mirror_axis() const { return axis_; }

  GroupElement element(int index) const;
  int index(GroupElement g) const;
  int multiply(int a, int b) const;
  int inverse(int a) const;
  int identity() const { return 0; }

  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  int class_of(int element) const { return class_of_[element]; }

  std::string element_name(int index) const;

 private:
  GroupKind kind_;
  int m_;
  double axis_;
  std::vector<ConjugacyClass> classes_;
  std::vector<int> class_of_;
};

/// Throws BadOrder for m < 1. `mirror_axis_deg` is ignored for cyclic groups.
Group build_group(GroupKind kind, int m, double mirror_axis_deg = 90.0);

/// Class function, one value per conjugacy class in Group::classes() order.
using Character = std::vector<Complex>;

struct Irrep {
  std::string label;
  int dim = 1;
  Character character;
};

struct CharacterTable {
  std::vector<Irrep> irreps;  // trivial first, one-dimensional before two-dimensional
  Complex zeta;               // e^{2 pi i / m}

  Index size() const { return static_cast<Index>(irreps.size()); }
  /// Index of the irrep with the given label, or of a 1-based numeric index.
  /// Throws UnknownIrrep.
  int find(const std::string& label_or_index) const;
  /// Index of the complex-conjugate irrep (itself when the character is real).
  int conjugate(int j) const;
};

/// Character value of an irrep at an arbitrary element.
Complex character_at(const Group& g, const Character& chi, int element);

/// Builds the table and checks orthonormality; throws InternalInvariant if it fails.
CharacterTable character_table(const Group& g);

/// (1/|G|) sum_g chi0(g) conj(chi1(g)), classwise.
Complex inner_product(const Group& g, const Character& chi0, const Character& chi1);

/// Multiplicity of each irrep. Throws NotIntegral when a multiplicity is not
/// a nonnegative integer within 1e-6.
std::vector<int> decompose_character(const Group& g, const CharacterTable& table,
                                     const Character& chi);

Eigen::Matrix2d tau(const Group& g, int element);

/// tau(g) for every element, after checking the homomorphism property on all
/// pairs; throws InternalInvariant otherwise.
std::vector<Eigen::Matrix2d> standard_rep(const Group& g);

Character tau_character(const Group& g);

/// Character of the regular representation.
Character regular_character(const Group& g);

}  // namespace eqgs
