#include <gtest/gtest.h>

#include "coarse/homology.hpp"
#include "coarse/models.hpp"

using coarse::Coefficients;
using coarse::FgAbGroup;
using coarse::HalfInt;
using coarse::PointIndex;

TEST(Models, CycleAndPathGraphs) {
  const auto c = coarse::cycle_graph(8);
  EXPECT_EQ(c.size(), 8u);
  EXPECT_EQ(c.edge_count(), 8u);
  EXPECT_EQ(c.metric().diameter(), HalfInt(4));
  const auto p = coarse::path_graph(5);
  EXPECT_EQ(p.edge_count(), 4u);
  EXPECT_EQ(p.metric().dist(0, 4), HalfInt(4));
  EXPECT_THROW(coarse::cycle_graph(2), std::invalid_argument);
}

TEST(Models, GraphComplexOfACycleIsACircle) {
  const auto k = coarse::graph_complex(coarse::cycle_graph(6));
  const auto h = coarse::cohomology(k, Coefficients::integers(), false, 2);
  EXPECT_EQ(h[0], FgAbGroup::free(1));
  EXPECT_EQ(h[1], FgAbGroup::free(1));
  EXPECT_TRUE(h[2].is_trivial());
}

TEST(Models, OpenConeSpheresGrowLinearly) {
  const auto cone = coarse::open_cone(coarse::cycle_graph(8), 5);
  ASSERT_EQ(cone.sphere_start.size(), 7u);
  for (int t = 1; t <= 5; ++t)
    EXPECT_EQ(cone.sphere_start[t + 1] - cone.sphere_start[t], static_cast<PointIndex>(8 * t)) << "radius " << t;
  EXPECT_TRUE(cone.graph.connected());
  const auto dist = cone.graph.bfs(0);
  for (int t = 1; t <= 5; ++t) {
    for (PointIndex v : cone.base_vertices(t)) EXPECT_EQ(dist[v], t);
  }
  // Each sphere is a cycle, so every sphere vertex has exactly two neighbours on its own sphere.
  for (int t = 1; t <= 5; ++t) {
    for (PointIndex v = cone.sphere_start[t]; v < cone.sphere_start[t + 1]; ++v) {
      int same = 0;
      for (PointIndex w : cone.graph.neighbors(v)) same += (w >= cone.sphere_start[t] && w < cone.sphere_start[t + 1]);
      EXPECT_EQ(same, 2);
    }
  }
  EXPECT_THROW(coarse::open_cone(coarse::cycle_graph(4), 0), std::invalid_argument);
}

TEST(Models, OpenConeDistancesGrowLikeTheRadius) {
  // Opposite base points at radius t: the distance grows with t and never beats the route
  // through the apex, 2t.
  const auto cone = coarse::open_cone(coarse::cycle_graph(8), 12);
  const auto m = cone.graph.metric();
  HalfInt previous(0);
  for (int t = 2; t <= 12; t += 2) {
    const auto b = cone.base_vertices(t);
    const HalfInt d = m.dist(b[0], b[4]);
    EXPECT_GT(d, previous) << "radius " << t;
    EXPECT_LE(d, HalfInt(2 * t));
    previous = d;
  }
}

TEST(Models, SubdividedOctahedronIsASphere) {
  for (int times = 0; times <= 2; ++times) {
    const auto s = coarse::subdivided_octahedron(times);
    EXPECT_EQ(s.euler_characteristic(), 2);
    EXPECT_EQ(s.count(2), 8u << (2 * times));
    const auto h = coarse::cohomology(s, Coefficients::integers(), true, 2);
    EXPECT_TRUE(h[0].is_trivial());
    EXPECT_TRUE(h[1].is_trivial());
    EXPECT_EQ(h[2], FgAbGroup::free(1));
  }
  EXPECT_THROW(coarse::subdivided_octahedron(-1), std::invalid_argument);
}

TEST(Models, OriginalVerticesOfTheSubdivisionAreNotAdjacent) {
  const auto s = coarse::subdivided_octahedron(1);
  for (coarse::VertexId a = 0; a < 6; ++a)
    for (coarse::VertexId b = a + 1; b < 6; ++b) EXPECT_FALSE(s.contains(std::vector<coarse::VertexId>{a, b}));
}
