#include "coarse/models.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace coarse {

std::vector<PointIndex> OpenCone::base_vertices(int t) const {
  if (t < 1 || t > radius) throw std::out_of_range("radius outside the cone");
  const std::size_t n = (sphere_start[2] - sphere_start[1]);  // sphere 1 carries exactly Y's vertices
  std::vector<PointIndex> out;
  for (std::size_t v = 0; v < n; ++v) out.push_back(sphere_start[static_cast<std::size_t>(t)] + static_cast<PointIndex>(v));
  return out;
}

OpenCone open_cone(const Graph& base, int radius) {
  if (radius < 1) throw std::invalid_argument("cone radius must be at least 1");
  const auto base_edges = base.edges();
  if (base_edges.empty()) throw std::invalid_argument("cone base needs at least one edge");
  const auto n = static_cast<PointIndex>(base.size());
  const auto m = static_cast<PointIndex>(base_edges.size());

  OpenCone cone;
  cone.radius = radius;
  cone.sphere_start = {0, 1};
  for (int t = 1; t <= radius; ++t) cone.sphere_start.push_back(cone.sphere_start.back() + n + m * static_cast<PointIndex>(t - 1));

  // Point at position p in 0..t along edge e at radius t: Y's vertices first, then interior
  // points edge by edge.
  auto point = [&](int t, PointIndex e, int p) -> PointIndex {
    const PointIndex start = cone.sphere_start[static_cast<std::size_t>(t)];
    if (p == 0) return start + base_edges[e].u;
    if (p == t) return start + base_edges[e].v;
    return start + n + e * static_cast<PointIndex>(t - 1) + static_cast<PointIndex>(p - 1);
  };

  std::vector<Edge> edges;
  for (PointIndex v = 0; v < n; ++v) edges.push_back({0, 1 + v});
  for (int t = 1; t <= radius; ++t) {
    for (PointIndex e = 0; e < m; ++e) {
      for (int p = 0; p < t; ++p) edges.push_back({point(t, e, p), point(t, e, p + 1)});
      if (t == radius) continue;
      for (int p = 0; p <= t; ++p) {
        const int q = (2 * p * (t + 1) + t) / (2 * t);
        edges.push_back({point(t, e, p), point(t + 1, e, q)});
      }
    }
  }
  cone.graph = Graph(cone.sphere_start.back(), edges);
  return cone;
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    edges.push_back({static_cast<PointIndex>(i), static_cast<PointIndex>((i + 1) % n)});
  return Graph(n, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({static_cast<PointIndex>(i), static_cast<PointIndex>(i + 1)});
  return Graph(n, edges);
}

SimplicialComplex graph_complex(const Graph& g) {
  std::vector<Simplex> facets;
  for (std::size_t v = 0; v < g.size(); ++v) facets.push_back({static_cast<VertexId>(v)});
  for (const auto& e : g.edges()) facets.push_back({e.u, e.v});
  return SimplicialComplex::from_facets(g.size(), facets);
}

SimplicialComplex subdivided_octahedron(int times) {
  if (times < 0) throw std::invalid_argument("subdivision count must be non-negative");
  std::vector<Simplex> tri = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 1, 4}, {1, 2, 5}, {2, 3, 5}, {3, 4, 5}, {1, 4, 5}};
  VertexId next = 6;
  for (int r = 0; r < times; ++r) {
    std::map<std::pair<VertexId, VertexId>, VertexId> mid;
    auto midpoint = [&](VertexId a, VertexId b) {
      auto key = std::minmax(a, b);
      auto [it, fresh] = mid.try_emplace({key.first, key.second}, next);
      if (fresh) ++next;
      return it->second;
    };
    std::vector<Simplex> finer;
    for (const auto& t : tri) {
      const VertexId ab = midpoint(t[0], t[1]), bc = midpoint(t[1], t[2]), ca = midpoint(t[2], t[0]);
      finer.push_back({t[0], ab, ca});
      finer.push_back({t[1], ab, bc});
      finer.push_back({t[2], bc, ca});
      finer.push_back({ab, bc, ca});
    }
    tri = std::move(finer);
  }
  for (auto& t : tri) std::sort(t.begin(), t.end());
  return SimplicialComplex::from_facets(next, tri);
}

}  // namespace coarse
