#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarse/graph.hpp"
#include "coarse/group.hpp"
#include "coarse/metric.hpp"

namespace coarse {

/// Grp(point) for level-0 vertices, Horo(coset, point, level) with level >= 1 otherwise.
/// `point` is a ball index (augmented spaces) or a base-point index (standalone horoballs).
struct VertexLabel {
  enum class Kind : std::uint8_t { Group, Horo };
  Kind kind = Kind::Group;
  std::uint32_t coset = 0;
  std::uint32_t point = 0;
  std::uint32_t level = 0;

  bool operator==(const VertexLabel&) const = default;
};

/// A graph whose vertices are group elements or horoball vertices. Group vertices come first
/// (index = point), then each horoball level by level, base points ascending within a level.
class LabeledGraph {
 public:
  std::vector<VertexLabel> labels;
  Graph graph;
  int depth = 0;
  /// Per horoball i (1-based, stored at i-1): ascending group vertices of the coset.
  std::vector<std::vector<PointIndex>> coset_members;
  /// Per horoball: the group vertex of the coset representative g_i.
  std::vector<PointIndex> representatives;
  /// Per horoball: index of its first level-1 vertex.
  std::vector<PointIndex> horo_offset;

  std::size_t size() const { return labels.size(); }
  std::size_t horoball_count() const { return coset_members.size(); }
  bool in_coset(std::size_t i, PointIndex v) const;
  /// The vertex (i, p, l); l = 0 is the group vertex p itself. Throws std::out_of_range.
  PointIndex vertex(std::size_t i, PointIndex p, int l) const;
  /// True for Horo(i, ., l >= 1), the part of horoball i removed in X^i.
  bool in_horoball_interior(std::size_t i, PointIndex v) const;
  int level(PointIndex v) const { return static_cast<int>(labels[v].level); }

  /// {"vertices", "edges", "depth", "coset_index_map"}.
  nlohmann::json to_json() const;
};

using GeodesicPath = std::vector<PointIndex>;

/// H(P) truncated at depth L: horizontal edges at level l between points at base distance in
/// (0, 2^l], vertical edges between consecutive levels over the same point. Level 0 carries
/// Grp labels; the horoball is recorded as coset 1 containing every base point.
LabeledGraph combinatorial_horoball(const FiniteMetricSpace& base, int depth);

/// The Cayley ball with horoballs of the given depth over the first `n_horoballs` cosets,
/// each glued along its intersection with the ball. Base distances are word distances,
/// exact for free and free abelian groups and taken from the ball otherwise.
/// Throws CosetMissesBall when fewer cosets are enumerated than requested.
LabeledGraph augmented_space(const CayleyBall& ball, const CosetOrder& order, std::size_t n_horoballs, int depth);

/// Deterministic BFS geodesic (minimum-index parent). Throws Disconnected.
GeodesicPath geodesic(const LabeledGraph& graph, PointIndex x, PointIndex y);

/// Last vertex of the path lying in coset i at level 0, if any.
std::optional<PointIndex> last_exit(const LabeledGraph& graph, std::size_t i, const GeodesicPath& path);

/// Smallest integer strictly greater than δ₀ + 1.
int basepoint_level(HalfInt delta0);

/// e_i = (i, g_i, N). Throws std::out_of_range when N exceeds the depth.
PointIndex basepoint(const LabeledGraph& graph, std::size_t i, int level);

/// Vertices of X^i at BFS distance >= horizon from e_i; horizon < 0 means the maximal distance.
/// With `below_top`, top-level vertices are left out of both the candidates and the maximum:
/// their geodesics from e_i end on the truncation ceiling, so every record using them is untrusted.
std::vector<PointIndex> horizon_targets(const LabeledGraph& graph, std::size_t i, PointIndex e_i, int horizon = -1,
                                        bool below_top = false);

struct Projection {
  PointIndex vertex = 0;  // L_i F_i(x), a group vertex of coset i
  PointIndex target = 0;  // far target of the chosen geodesic
  HalfInt proximity;      // distance from x to that geodesic
  GeodesicPath path;
};

/// L_i F_i(x): among far targets in ascending order, the first whose geodesic from e_i passes
/// within 2δ₀ of x; returns the last exit of that geodesic from coset i. Throws
/// NoWitnessGeodesic (naming the best proximity seen) when no target qualifies.
Projection boundary_projection(const LabeledGraph& graph, std::size_t i, PointIndex e_i, PointIndex x,
                               const std::vector<PointIndex>& far_targets, HalfInt delta0);

struct InequalityRecord {
  enum class Kind { Contraction, Retraction, Lipschitz };
  Kind kind = Kind::Contraction;
  std::size_t sample = 0;
  PointIndex x = 0, y = 0;
  HalfInt distance;  // d(x, y); 0 for retraction records
  HalfInt lhs, rhs;
  bool trusted = true;  // false when a geodesic used touches the top level
  HalfInt slack() const { return rhs - lhs; }
  bool violated() const { return slack() < HalfInt(0); }
};

struct ProjectionReport {
  std::size_t coset = 0;
  PointIndex basepoint = 0;
  int basepoint_level = 0;
  HalfInt delta0;
  std::size_t far_target_count = 0;
  std::vector<InequalityRecord> records;
  /// Samples skipped because no witness geodesic existed, with the reason.
  std::vector<std::pair<std::size_t, std::string>> skipped;

  std::size_t count(InequalityRecord::Kind kind) const;
  std::size_t violations() const;
  std::size_t untrusted() const;
  /// Largest lhs - distance per kind (lhs for retraction), for tightness inspection.
  HalfInt max_excess(InequalityRecord::Kind kind) const;
  nlohmann::json to_json(bool include_records = false) const;
  std::string to_csv() const;
};

std::string to_string(InequalityRecord::Kind kind);

/// Checks, with the measured δ₀: contraction d(l_x(n_i), l_y(n_i)) <= d(x,y) + 2δ₀ for the
/// geodesics from e_i to x and y; Lipschitz d(L_iF_i x, L_iF_i y) <= d(x,y) + 10δ₀ for each
/// pair; retraction d(x, L_iF_i x) <= 6δ₀ for each coset point.
ProjectionReport verify_projection_bounds(const LabeledGraph& graph, std::size_t i, PointIndex e_i,
                                          const std::vector<std::pair<PointIndex, PointIndex>>& pairs,
                                          const std::vector<PointIndex>& coset_points,
                                          const std::vector<PointIndex>& far_targets, HalfInt delta0);

/// Vertices of X^i within the trust region: group vertices of word length <= radius, and
/// horoball vertices over them up to `max_level`.
std::vector<PointIndex> trusted_vertices(const LabeledGraph& graph, const CayleyBall& ball, std::size_t i,
                                         int radius, int max_level);

/// `count` deterministic pairs drawn from `pool` by the counter-based generator.
std::vector<std::pair<PointIndex, PointIndex>> sample_pairs(const std::vector<PointIndex>& pool, std::uint64_t seed,
                                                            std::size_t count);

}  // namespace coarse
