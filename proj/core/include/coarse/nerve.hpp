#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarse/metric.hpp"
#include "coarse/simplicial.hpp"

namespace coarse {

/// A cover of a finite metric space by point sets. Members are indexed in the ascending
/// order of their centres; covers built from explicit members keep the given order.
struct Cover {
  std::size_t point_count = 0;
  std::vector<PointSet> members;
  /// Centre of each member for U_{Z,C}(k) covers; empty otherwise.
  std::vector<PointIndex> centers;
  HalfInt c;
  int k = 0;
  /// (k+1)C, 2(k+1)C and kC for U_{Z,C}(k); zero for explicit covers.
  HalfInt radius;
  HalfInt diameter_bound;
  HalfInt lebesgue_bound;
  /// Largest member diameter, measured exactly.
  HalfInt max_diameter;
  /// True once the diameter and Lebesgue checks have passed.
  bool certified = false;

  std::size_t size() const { return members.size(); }
  /// For each point, the ascending list of members containing it.
  std::vector<std::vector<VertexId>> incidence() const;
  nlohmann::json to_json() const;
};

/// U_{Z,C}(k) = { Pen(z, (k+1)C) : z ∈ Z }. Verifies on construction that Z is C-dense, that
/// every member has diameter <= 2(k+1)C (all pairs), and that every ball B(x, kC) lies in a
/// single member, which bounds the Lebesgue number below by kC for all subsets.
/// Throws BoundViolation when a check fails.
Cover anti_cech_cover(const FiniteMetricSpace& space, const PointSet& net, HalfInt c, int k);

/// Cover by explicit members; throws std::invalid_argument for empty members or a gap.
Cover cover_from_members(std::size_t point_count, std::vector<PointSet> members);

/// Largest radius ρ (a realised distance) such that every ball B(x, ρ) lies in some member;
/// a lower bound for the Lebesgue number that needs no subset enumeration.
HalfInt ball_lebesgue_number(const FiniteMetricSpace& space, const Cover& cover);

/// All families of at most cap+1 members with a common point, as a complex on member indices.
/// Throws SimplexExplosion when more than `simplex_cap` simplices would be produced.
SimplicialComplex nerve_complex(const Cover& cover, int cap, std::size_t simplex_cap = 5'000'000);

/// Sends each fine member to the coarse member with the same centre when both covers have
/// centres and that member contains it, and otherwise to the smallest-index coarse member
/// containing it.
/// Throws NoContainingMember naming the first fine member without one.
SimplicialMap coarsening_map(const Cover& fine, const Cover& coarse);

/// The opposite choice: the largest-index coarse member containing each fine member.
SimplicialMap coarsening_map_last(const Cover& fine, const Cover& coarse);

/// True when, for every simplex σ of `domain`, the coarse members f(σ) ∪ g(σ) share a point.
/// This is contiguity into the full nerve of `coarse`, independent of any dimension cap.
bool contiguous_through_cover(const SimplicialMap& f, const SimplicialMap& g, const SimplicialComplex& domain,
                              const Cover& coarse);

/// Full subcomplex on the members meeting L.
SimplicialComplex subcomplex_meeting(const Cover& cover, const SimplicialComplex& nerve, const PointSet& l);

/// Full subcomplex on the members not contained in B(basepoint, core_radius).
SimplicialComplex end_subcomplex(const Cover& cover, const SimplicialComplex& nerve, const FiniteMetricSpace& space,
                                 HalfInt core_radius, PointIndex basepoint);

/// One scale of an anti-Čech tower.
struct ScaleLevel {
  HalfInt c;
  int k = 1;
  friend bool operator==(const ScaleLevel&, const ScaleLevel&) = default;
};

/// k_1, 2k_1+2, 2(2k_1+2)+2, ... at a fixed C: the slowest growth with k_{j+1}C >= 2(k_j+1)C.
std::vector<ScaleLevel> default_schedule(HalfInt c, int k1, std::size_t levels);

/// Covers U(1), U(2), ... with coarsening maps U(j) -> U(j+1). Levels sharing C share one
/// greedy net; a level with a new C gets its own net.
struct AntiCechSystem {
  std::vector<ScaleLevel> levels;
  std::vector<Cover> covers;
  std::vector<SimplicialMap> maps;  // maps[j] : U(j) -> U(j+1)
  /// R_j = 2(k_j+1)C_j and δ_j = k_jC_j as recorded bounds.
  std::vector<HalfInt> diameter_bounds;
  std::vector<HalfInt> lebesgue_bounds;

  /// δ_{j+1} >= R_j for every consecutive pair of levels.
  bool lebesgue_dominates() const;
  nlohmann::json to_json() const;
};

/// Throws NoContainingMember when some cover fails to refine the next one.
AntiCechSystem anti_cech_system(const FiniteMetricSpace& space, const std::vector<ScaleLevel>& levels);

}  // namespace coarse
