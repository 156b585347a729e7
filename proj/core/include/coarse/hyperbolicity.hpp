#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarse/graph.hpp"
#include "coarse/metric.hpp"

namespace coarse {

/// (x|y)_p = (d(x,p) + d(y,p) - d(x,y)) / 2, exact.
HalfInt gromov_product(const FiniteMetricSpace& space, PointIndex x, PointIndex y, PointIndex p);

/// Counter-based generator: the i-th draw depends only on (seed, i).
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index);

struct SamplingMode {
  enum class Kind { Exhaustive, Sampled };
  Kind kind = Kind::Exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;

  static SamplingMode exhaustive() { return {}; }
  static SamplingMode sampled(std::uint64_t seed, std::uint64_t count) { return {Kind::Sampled, seed, count}; }
  std::string str() const;
};

struct DeltaReport {
  HalfInt delta;
  /// Quadruple (four-point) or triangle plus the corner index in slot 3 (thin triangles).
  std::array<PointIndex, 4> witness{};
  bool has_witness = false;
  SamplingMode mode;
  std::uint64_t evaluated = 0;
  /// "four-point" or "thin-triangle"; thin-triangle values are relative to the deterministic geodesics.
  std::string kind;
  nlohmann::json to_json() const;
};

/// Four-point δ: half the gap between the two largest of d(x,y)+d(z,w), d(x,z)+d(y,w),
/// d(x,w)+d(y,z), maximised over quadruples. Exhaustive mode is exact and throws
/// CapExceeded above `cap` points; sampled mode is a lower bound. The witness is the
/// lexicographically smallest maximising quadruple among those scanned.
DeltaReport four_point_delta(const FiniteMetricSpace& space, const SamplingMode& mode, std::size_t cap = 300);

/// Evaluates the four-point gap of one quadruple (used to re-check witnesses).
HalfInt four_point_gap(const FiniteMetricSpace& space, const std::array<PointIndex, 4>& q);

/// Thin-triangle δ over triangles with corners in `corners`, using the graph's deterministic
/// geodesic for each unordered pair (computed from the smaller index, reversed as needed).
/// For each corner x of a triangle xyz and each integer t <= (y|z)_x, the points at
/// distance t from x along [x,y] and [x,z] are compared. `metric` must be the graph metric.
/// Exhaustive mode throws CapExceeded above `cap` corners.
DeltaReport thin_triangle_delta(const Graph& graph, const FiniteMetricSpace& metric,
                                const std::vector<PointIndex>& corners, const SamplingMode& mode,
                                std::size_t cap = 300);

/// Mismatch of one triangle (x, y, z) at corner x under the same geodesic rule.
HalfInt thin_triangle_gap(const Graph& graph, const FiniteMetricSpace& metric, PointIndex x, PointIndex y,
                          PointIndex z);

}  // namespace coarse
