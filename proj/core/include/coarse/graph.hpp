#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coarse/metric.hpp"

namespace coarse {

/// Undirected simple graph in compressed adjacency form; neighbour lists ascend.
class Graph {
 public:
  Graph() = default;
  /// Loops are dropped and parallel edges merged.
  Graph(std::size_t n, const std::vector<Edge>& edges);

  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }
  std::span<const PointIndex> neighbors(PointIndex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  bool adjacent(PointIndex u, PointIndex v) const;
  /// Each edge once, as (u < v), sorted.
  std::vector<Edge> edges() const;

  /// Hop distances from `source`; -1 for unreachable vertices.
  std::vector<std::int32_t> bfs(PointIndex source) const;
  /// Hop distances from `source`, abandoning the search beyond `limit` hops.
  std::vector<std::int32_t> bfs_bounded(PointIndex source, std::int32_t limit) const;
  bool connected() const;

  /// Shortest path x → y. Walking back from y, each step takes the smallest-index
  /// neighbour one hop closer to x, so the path is a function of (x, y) alone.
  /// Throws Disconnected.
  std::vector<PointIndex> geodesic(PointIndex x, PointIndex y) const;
  /// Same rule against precomputed distances from x.
  std::vector<PointIndex> geodesic_from(const std::vector<std::int32_t>& dist_from_x, PointIndex y) const;

  /// All-pairs hop metric. Throws DisconnectedGraph.
  FiniteMetricSpace metric() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<PointIndex> targets_;
};

}  // namespace coarse
