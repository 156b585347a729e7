#pragma once

#include <vector>

#include "coarse/graph.hpp"
#include "coarse/simplicial.hpp"

namespace coarse {

/// Truncated open cone over a finite graph Y, as a graph. The apex is vertex 0; the sphere of
/// radius t (1 <= t <= radius) is a copy of Y with every edge cut into t unit segments, and
/// each point at fraction p/t along an edge has a radial edge to the nearest point at
/// fraction p'/(t+1) on the same edge, rounding half up.
struct OpenCone {
  Graph graph;
  int radius = 0;
  /// Vertices of the sphere of radius t are [sphere_start[t], sphere_start[t+1]); sphere 0 is the apex.
  std::vector<PointIndex> sphere_start;
  /// Vertices over the original vertices of Y at radius t, in Y's order.
  std::vector<PointIndex> base_vertices(int t) const;
};

/// Throws std::invalid_argument for radius < 1 or a graph without edges.
OpenCone open_cone(const Graph& base, int radius);

/// The cycle graph on n >= 3 vertices.
Graph cycle_graph(std::size_t n);
/// The path graph 0 - 1 - ... - (n-1).
Graph path_graph(std::size_t n);

/// 1-dimensional complex of a graph (vertices and edges).
SimplicialComplex graph_complex(const Graph& g);

/// Boundary of the octahedron with each triangle cut into four by its edge midpoints, `times`
/// times over. The six original vertices keep ids 0..5; 0/5, 1/3 and 2/4 are antipodal.
SimplicialComplex subdivided_octahedron(int times);

}  // namespace coarse
