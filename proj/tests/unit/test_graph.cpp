#include <gtest/gtest.h>

#include "coarse/errors.hpp"
#include "coarse/graph.hpp"

using coarse::Edge;
using coarse::Graph;

TEST(Graph, DeduplicatesAndSorts) {
  Graph g(4, {{1, 0}, {0, 1}, {2, 2}, {3, 1}});
  EXPECT_EQ(g.edge_count(), 2u);
  auto nb = g.neighbors(1);
  EXPECT_EQ(std::vector<coarse::PointIndex>(nb.begin(), nb.end()), (std::vector<coarse::PointIndex>{0, 3}));
  EXPECT_TRUE(g.adjacent(3, 1));
  EXPECT_FALSE(g.adjacent(0, 3));
  EXPECT_FALSE(g.connected());
}

TEST(Graph, GeodesicUsesSmallestIndexParent) {
  // 4-cycle 0-1-2-3-0: two geodesics from 0 to 2; walking back from 2 picks neighbour 1.
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  EXPECT_EQ(g.geodesic(0, 2), (std::vector<coarse::PointIndex>{0, 1, 2}));
  EXPECT_EQ(g.geodesic(2, 2), (std::vector<coarse::PointIndex>{2}));
  EXPECT_EQ(g.geodesic(0, 1).size(), 2u);
  Graph split(3, {{0, 1}});
  EXPECT_THROW(split.geodesic(0, 2), coarse::Disconnected);
}

TEST(Graph, MetricMatchesBfs) {
  Graph g(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  auto m = g.metric();
  for (coarse::PointIndex s = 0; s < 6; ++s) {
    auto d = g.bfs(s);
    for (coarse::PointIndex t = 0; t < 6; ++t) EXPECT_EQ(m.dist_twice(s, t), 2 * d[t]);
  }
  auto bounded = g.bfs_bounded(0, 1);
  EXPECT_EQ(bounded[3], -1);
  EXPECT_EQ(bounded[1], 1);
}
