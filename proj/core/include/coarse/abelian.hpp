#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarse/integer.hpp"
#include "coarse/linalg.hpp"

namespace coarse {

/// Finitely generated abelian group Z^rank + Z/t_1 + ... + Z/t_k in invariant-factor form.
///
/// Generators are ordered canonically: the `rank` free generators first, then one
/// generator per torsion factor in ascending order. Elements are coordinate vectors
/// of length `generator_count()`, torsion coordinates reduced mod their order.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  /// Throws std::invalid_argument unless every factor is >= 2 and the divisibility chain holds.
  FgAbGroup(std::size_t rank, std::vector<Integer> torsion);

  static FgAbGroup free(std::size_t rank) { return FgAbGroup(rank, {}); }
  static FgAbGroup cyclic(const Integer& order);
  /// Normalizes an arbitrary list of cyclic orders (0 = infinite, 1 = trivial).
  static FgAbGroup from_cyclic_orders(const std::vector<Integer>& orders);

  std::size_t rank() const { return rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  std::size_t generator_count() const { return rank_ + torsion_.size(); }
  bool is_trivial() const { return generator_count() == 0; }
  /// Order of generator i (0 for free generators).
  Integer generator_order(std::size_t i) const;

  /// Reduces torsion coordinates into [0, order).
  std::vector<Integer> normalize(std::vector<Integer> element) const;
  /// Columns are the relation generators d_i e_{rank+i}; shape generator_count x torsion count.
  IntMatrix relation_matrix() const;

  /// "Z^2 + Z/2 + Z/6", "Z", "0".
  std::string str() const;
  nlohmann::json to_json() const;
  static FgAbGroup from_json(const nlohmann::json& j);

  friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<Integer> torsion_;
};

std::ostream& operator<<(std::ostream& os, const FgAbGroup& g);

/// Subgroup of an FgAbGroup, stored as a canonical lattice basis of its preimage
/// in Z^{generator_count}. Two subgroups are equal iff their bases are equal.
class Subgroup {
 public:
  Subgroup(FgAbGroup ambient, const IntMatrix& generators);

  static Subgroup whole(const FgAbGroup& g);
  static Subgroup trivial(const FgAbGroup& g);

  const FgAbGroup& ambient() const { return ambient_; }
  const IntMatrix& lattice_basis() const { return basis_; }
  bool contains(const std::vector<Integer>& element) const;
  bool contains(const Subgroup& other) const;
  /// Isomorphism type of the subgroup itself.
  FgAbGroup isomorphism_type() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  FgAbGroup ambient_;
  IntMatrix basis_;
};

/// Group homomorphism in canonical generator bases: column j is the image of source
/// generator j. Torsion rows are kept reduced.
class Homomorphism {
 public:
  Homomorphism(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

  static Homomorphism identity(const FgAbGroup& g);
  static Homomorphism zero(const FgAbGroup& source, const FgAbGroup& target);

  const FgAbGroup& source() const { return source_; }
  const FgAbGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  std::vector<Integer> apply(const std::vector<Integer>& x) const;
  /// this ∘ inner
  Homomorphism compose(const Homomorphism& inner) const;

  Subgroup image() const;
  Subgroup kernel() const;
  /// Image of a subgroup of the source.
  Subgroup image_of(const Subgroup& s) const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const { return is_injective() && is_surjective(); }
  bool is_zero() const { return matrix_.is_zero(); }

  nlohmann::json to_json() const;

  friend bool operator==(const Homomorphism& a, const Homomorphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.matrix_ == b.matrix_;
  }

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  IntMatrix matrix_;
};

/// A group given by cyclic orders (0 = infinite, 1 = trivial, arbitrary order), together
/// with its canonical form and the coordinate changes in both directions.
struct Presentation {
  std::vector<Integer> orders;
  FgAbGroup group;
  IntMatrix to_canonical;    // canonical coordinates = to_canonical * presentation coordinates
  IntMatrix from_canonical;  // column j = presentation element of canonical generator j
};

Presentation present(const std::vector<Integer>& orders);
/// Direct sum of canonical groups; generators of the summands are concatenated.
Presentation direct_sum(const std::vector<FgAbGroup>& summands);

/// Isomorphism type of s / t for t ⊆ s; throws std::invalid_argument otherwise.
FgAbGroup quotient_type(const Subgroup& s, const Subgroup& t);

/// Restriction of a homomorphism to a subgroup of its source, landing in a subgroup of its
/// target, viewed as a map between the isomorphism types. Used to test whether a map of
/// subgroups is an isomorphism.
bool restricted_is_isomorphism(const Homomorphism& f, const Subgroup& from, const Subgroup& onto);

}  // namespace coarse
