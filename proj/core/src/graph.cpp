#include "coarse/graph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "coarse/errors.hpp"

namespace coarse {

Graph::Graph(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::size_t> degree(n, 0);
  std::vector<std::pair<PointIndex, PointIndex>> arcs;
  arcs.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) continue;
    arcs.emplace_back(e.u, e.v);
    arcs.emplace_back(e.v, e.u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  offsets_.assign(n + 1, 0);
  for (const auto& a : arcs) ++offsets_[a.first + 1];
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
  targets_.reserve(arcs.size());
  for (const auto& a : arcs) targets_.push_back(a.second);
}

bool Graph::adjacent(PointIndex u, PointIndex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (PointIndex u = 0; u < size(); ++u)
    for (PointIndex v : neighbors(u))
      if (u < v) out.push_back({u, v});
  return out;
}

std::vector<std::int32_t> Graph::bfs(PointIndex source) const {
  return bfs_bounded(source, std::numeric_limits<std::int32_t>::max());
}

std::vector<std::int32_t> Graph::bfs_bounded(PointIndex source, std::int32_t limit) const {
  std::vector<std::int32_t> dist(size(), -1);
  std::vector<PointIndex> queue;
  queue.reserve(size());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    PointIndex x = queue[head];
    if (dist[x] >= limit) continue;
    for (PointIndex y : neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

bool Graph::connected() const {
  if (size() == 0) return true;
  auto d = bfs(0);
  return std::none_of(d.begin(), d.end(), [](std::int32_t v) { return v < 0; });
}

std::vector<PointIndex> Graph::geodesic_from(const std::vector<std::int32_t>& dist, PointIndex y) const {
  if (dist[y] < 0) throw Disconnected("no path reaches vertex " + std::to_string(y));
  std::vector<PointIndex> path{y};
  PointIndex cur = y;
  while (dist[cur] > 0) {
    for (PointIndex nb : neighbors(cur)) {
      if (dist[nb] == dist[cur] - 1) {
        cur = nb;
        break;
      }
    }
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<PointIndex> Graph::geodesic(PointIndex x, PointIndex y) const {
  auto dist = bfs(x);
  if (dist[y] < 0) {
    throw Disconnected("vertices " + std::to_string(x) + " and " + std::to_string(y) + " lie in different components");
  }
  return geodesic_from(dist, y);
}

FiniteMetricSpace Graph::metric() const { return graph_metric(size(), edges()); }

}  // namespace coarse
