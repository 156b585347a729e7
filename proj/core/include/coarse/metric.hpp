#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarse {

/// Exact non-negative-or-signed half-integer, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(std::int64_t integer) : twice_(2 * integer) {}
  static constexpr HalfInt from_twice(std::int64_t twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  /// Parses "3", "3.5", "7/2".
  static HalfInt parse(const std::string& text);

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  /// Smallest integer >= value.
  constexpr std::int64_t ceil() const { return twice_ >= 0 ? (twice_ + 1) / 2 : -((-twice_) / 2); }
  /// Largest integer <= value.
  constexpr std::int64_t floor() const { return twice_ >= 0 ? twice_ / 2 : -((-twice_ + 1) / 2); }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
  friend constexpr HalfInt operator*(std::int64_t k, HalfInt a) { return from_twice(k * a.twice_); }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  std::string str() const;
  /// Integer values as JSON integers, proper halves as decimal numbers.
  nlohmann::json to_json() const;

 private:
  std::int64_t twice_ = 0;
};

std::ostream& operator<<(std::ostream& os, HalfInt h);

using PointIndex = std::uint32_t;
/// Sorted, duplicate-free list of point indices.
using PointSet = std::vector<PointIndex>;

struct Edge {
  PointIndex u;
  PointIndex v;
};

/// Finite metric space with exact half-integer distances (stored scaled by 2).
///
/// Immutable after construction. Construction checks zero diagonal, symmetry and
/// positivity off the diagonal; `check_triangle_inequality` performs the exhaustive
/// triple scan.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  /// `twice` holds 2*d(i,j) row-major. Throws InvalidMetric.
  FiniteMetricSpace(std::size_t n, std::vector<std::int32_t> twice);

  std::size_t size() const { return n_; }
  HalfInt dist(PointIndex i, PointIndex j) const { return HalfInt::from_twice(twice_[i * n_ + j]); }
  std::int32_t dist_twice(PointIndex i, PointIndex j) const { return twice_[i * n_ + j]; }
  const std::int32_t* row_twice(PointIndex i) const { return twice_.data() + i * n_; }
  HalfInt diameter() const;
  /// Distance from x to the nearest point of a (a non-empty).
  HalfInt dist_to_set(PointIndex x, const PointSet& a) const;

  /// Exhaustive scan over all triples; returns the first violating triple if any.
  std::optional<std::array<PointIndex, 3>> find_triangle_violation() const;
  void check_triangle_inequality() const;  // throws InvalidMetric

  /// Metric space on the given points with the restricted distances.
  FiniteMetricSpace restrict_to(const PointSet& points) const;

  friend bool operator==(const FiniteMetricSpace&, const FiniteMetricSpace&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int32_t> twice_;
};

/// Shortest-path metric of a connected simple undirected graph. Throws DisconnectedGraph.
FiniteMetricSpace graph_metric(std::size_t n, const std::vector<Edge>& edges);

/// Pen(A; R) = {x : d(x, A) <= R}. Throws EmptySubset for empty A.
PointSet penumbra(const FiniteMetricSpace& space, const PointSet& a, HalfInt radius);

/// Ascending-index greedy net: a point is selected iff it is at distance > separation from
/// every previously selected point. With separation <= C the result satisfies Pen(Z, C) = X;
/// the default separation is C itself.
PointSet greedy_net(const FiniteMetricSpace& space, HalfInt c, std::optional<HalfInt> separation = {});

struct ExcisiveProfile {
  std::vector<HalfInt> radii;
  /// Least S with Pen(A;R) ∩ Pen(B;R) ⊆ Pen(A∩B; S); nullopt encodes UNBOUNDED.
  std::vector<std::optional<HalfInt>> min_s;
  nlohmann::json to_json() const;
};

/// Throws NotADecomposition unless A ∪ B is the whole space.
ExcisiveProfile omega_excisive_profile(const FiniteMetricSpace& space, const PointSet& a, const PointSet& b,
                                       const std::vector<HalfInt>& radii);

/// A map between finite metric spaces sampled on every domain point.
struct MapSample {
  std::shared_ptr<const FiniteMetricSpace> domain;
  std::shared_ptr<const FiniteMetricSpace> codomain;
  std::vector<PointIndex> table;

  /// Throws std::invalid_argument unless the table is total and lands in the codomain.
  void validate() const;
  /// this ∘ inner
  MapSample compose_after(const MapSample& inner) const;
};

/// ρ(R) = max{ d(f x, f y) : d(x, y) <= R } for each radius.
std::vector<std::pair<HalfInt, HalfInt>> expansion_profile(const MapSample& f, const std::vector<HalfInt>& radii);

/// max over the domain of d(f s, g s). Throws DomainMismatch.
HalfInt closeness(const MapSample& f, const MapSample& g);

// --- file formats ---------------------------------------------------------------------------

/// CSV distance matrix, one row per point. A leading comment line `#scale=2` means the
/// entries are already doubled; otherwise entries are plain integers.
FiniteMetricSpace read_distance_csv(std::istream& in);
void write_distance_csv(std::ostream& out, const FiniteMetricSpace& space);

/// Edge list: one `u v` pair per line, 0-based; `#` starts a comment.
/// Returns (vertex count, edges); vertex count is max index + 1 unless `min_vertices` is larger.
std::pair<std::size_t, std::vector<Edge>> read_edge_list(std::istream& in, std::size_t min_vertices = 0);

}  // namespace coarse
