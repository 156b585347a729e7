#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarse/graph.hpp"

namespace coarse {

/// Canonical form of a group element: lattice coordinates (free abelian), the reduced
/// word as letters 2j / 2j+1 for generator j and its inverse (free), or the row-major
/// matrix entries (integer matrix groups).
using Element = std::vector<std::int64_t>;

enum class GroupKind { FreeAbelian, Free, IntegerMatrix };

/// A finitely generated group with a decidable word problem and its symmetrized
/// generating set. Symmetrized generator 2j is the j-th base generator, 2j+1 its inverse.
class GroupSpec {
 public:
  static GroupSpec free_abelian(std::size_t rank);
  static GroupSpec free(std::size_t rank);
  /// Throws NonInvertibleGenerator unless every matrix is unimodular.
  static GroupSpec integer_matrix(std::size_t dimension, std::vector<std::vector<std::int64_t>> matrices,
                                  std::vector<std::string> names = {});
  /// Upper unitriangular 3x3 integer matrices with x = E + e12, y = E + e23.
  static GroupSpec heisenberg();
  /// {"kind": "free_abelian"|"free"|"matrix"|"heisenberg", "rank", "dimension", "matrices", "names"}.
  static GroupSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  GroupKind kind() const { return kind_; }
  std::size_t rank() const { return rank_; }
  std::size_t dimension() const { return dim_; }
  std::size_t base_generator_count() const { return names_.size(); }
  std::size_t generator_count() const { return 2 * names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  bool is_heisenberg() const;

  Element identity() const;
  Element generator(std::size_t s) const;
  /// Throws ArithmeticOverflow when a matrix entry leaves int64.
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  /// Word over symmetrized generators, e.g. "aB" (capitals are inverses).
  std::vector<std::size_t> parse_word(const std::string& word) const;
  Element evaluate(const std::vector<std::size_t>& word) const;
  std::string str(const Element& e) const;

 private:
  GroupKind kind_ = GroupKind::FreeAbelian;
  std::size_t rank_ = 0;
  std::size_t dim_ = 0;
  std::vector<std::string> names_;
  std::vector<Element> gens_;  // symmetrized, matrix kind only
};

/// Elements of word length <= R, listed by BFS layer and canonical form within a layer.
struct CayleyBall {
  GroupSpec spec;
  int radius = 0;
  std::vector<Element> elements;        // element 0 is the identity
  std::vector<std::int32_t> length;     // word length of each element
  std::vector<std::vector<std::int32_t>> right;  // right[g][s] = index of g*s or -1
  Graph graph;
  /// Pairs inside the ball of this radius have exact word distances in `graph`.
  int trust_radius() const { return radius / 2; }

  std::size_t size() const { return elements.size(); }
  /// Index of an element, or -1 when it lies outside the ball.
  std::int64_t find(const Element& e) const;
};

/// Throws BallTooLarge when the ball would exceed `cap` elements.
CayleyBall cayley_ball(const GroupSpec& spec, int radius, std::size_t cap = 200000);

/// A peripheral subgroup, given by generating words in the symmetrized generators.
struct PeripheralSpec {
  std::vector<std::vector<std::size_t>> words;
  std::string name;
};

/// Parses "a", "a,b", "[x,y]" style descriptions; throws UndecidableMembership when the
/// subgroup is not one the toolkit can decide membership for.
PeripheralSpec parse_peripheral(const GroupSpec& spec, const std::string& text);

/// Canonical key of the left coset gP: two elements share a key iff they lie in the same coset.
/// Throws UndecidableMembership for unsupported subgroups.
Element coset_key(const GroupSpec& spec, const PeripheralSpec& p, const Element& g);

struct CosetEntry {
  std::size_t index = 0;        // i, 1-based
  std::size_t subgroup = 0;     // 0-based position in the peripheral list, i.e. (i) - 1
  std::uint32_t representative = 0;  // ball index of g_i
  Element key;
};

/// Enumeration g_1, g_2, ... of peripheral cosets: g_1..g_k are the identity, then the
/// cosets of each P_r in the order their first element appears in the ball, interleaved
/// round-robin so that i ≡ r (mod k). Stops after `max_cosets` entries or when some
/// subgroup runs out of cosets meeting the ball.
struct CosetOrder {
  std::vector<PeripheralSpec> peripherals;
  std::vector<CosetEntry> entries;
  /// Ball elements lying in coset entry i (ascending ball index).
  std::vector<std::uint32_t> members(const CayleyBall& ball, std::size_t entry) const;
  nlohmann::json to_json(const CayleyBall& ball) const;
};

CosetOrder coset_order(const CayleyBall& ball, const std::vector<PeripheralSpec>& peripherals,
                       std::size_t max_cosets);

}  // namespace coarse
