#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "coarse/errors.hpp"
#include "coarse/metric.hpp"

using namespace coarse;

namespace {

FiniteMetricSpace path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({PointIndex(i), PointIndex(i + 1)});
  return graph_metric(n, e);
}

FiniteMetricSpace complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.push_back({PointIndex(i), PointIndex(j)});
  return graph_metric(n, e);
}

}  // namespace

TEST(HalfInt, ParseAndFormat) {
  EXPECT_EQ(HalfInt::parse("3.5").twice(), 7);
  EXPECT_EQ(HalfInt::parse("7/2").twice(), 7);
  EXPECT_EQ(HalfInt::parse("-0.5").twice(), -1);
  EXPECT_EQ(HalfInt::parse("4").twice(), 8);
  EXPECT_EQ(HalfInt::from_twice(7).str(), "3.5");
  EXPECT_EQ(HalfInt::from_twice(-3).str(), "-1.5");
  EXPECT_EQ(HalfInt::from_twice(7).floor(), 3);
  EXPECT_EQ(HalfInt::from_twice(7).ceil(), 4);
  EXPECT_THROW(HalfInt::parse("1.25"), ParseError);
}

TEST(GraphMetric, CycleDistancesAndTriangle) {
  std::vector<Edge> e;
  for (PointIndex i = 0; i < 8; ++i) e.push_back({i, PointIndex((i + 1) % 8)});
  auto c8 = graph_metric(8, e);
  EXPECT_EQ(c8.dist(0, 4), HalfInt(4));
  EXPECT_EQ(c8.dist(1, 7), HalfInt(2));
  EXPECT_EQ(c8.diameter(), HalfInt(4));
  EXPECT_FALSE(c8.find_triangle_violation().has_value());
}

TEST(GraphMetric, DisconnectedNamesWitnesses) {
  try {
    graph_metric(4, {{0, 1}, {2, 3}});
    FAIL() << "expected DisconnectedGraph";
  } catch (const DisconnectedGraph& err) {
    EXPECT_NE(std::string(err.what()).find("vertex 2"), std::string::npos);
  }
}

TEST(GraphMetric, RandomGraphsSatisfyMetricAxioms) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 5 + rng() % 30;
    std::vector<Edge> e;
    for (std::size_t i = 1; i < n; ++i) e.push_back({PointIndex(rng() % i), PointIndex(i)});
    for (int k = 0; k < 10; ++k) e.push_back({PointIndex(rng() % n), PointIndex(rng() % n)});
    auto m = graph_metric(n, e);
    EXPECT_FALSE(m.find_triangle_violation().has_value());
  }
}

TEST(Metric, InvalidMatricesRejected) {
  EXPECT_THROW(FiniteMetricSpace(2, {0, 2, 4, 0}), InvalidMetric);
  EXPECT_THROW(FiniteMetricSpace(2, {0, 0, 0, 0}), InvalidMetric);
  FiniteMetricSpace bad(3, {0, 2, 10, 2, 0, 2, 10, 2, 0});
  EXPECT_THROW(bad.check_triangle_inequality(), InvalidMetric);
}

TEST(Penumbra, MonotoneAndContainsSet) {
  auto p = path(11);
  PointSet a{5};
  PointSet prev = penumbra(p, a, HalfInt(0));
  EXPECT_EQ(prev, a);
  for (int r = 1; r <= 6; ++r) {
    PointSet cur = penumbra(p, a, HalfInt(r));
    EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
    prev = cur;
  }
  EXPECT_EQ(prev.size(), 11u);
  EXPECT_THROW(penumbra(p, {}, HalfInt(1)), EmptySubset);
}

TEST(GreedyNet, PathAndComplete) {
  auto p = path(11);
  EXPECT_EQ(greedy_net(p, HalfInt(1)), (PointSet{0, 2, 4, 6, 8, 10}));
  EXPECT_EQ(greedy_net(complete(5), HalfInt(1)), (PointSet{0}));
}

TEST(GreedyNet, CoversAndSeparates) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 10; ++t) {
    std::size_t n = 20 + rng() % 40;
    std::vector<Edge> e;
    for (std::size_t i = 1; i < n; ++i) e.push_back({PointIndex(rng() % i), PointIndex(i)});
    auto m = graph_metric(n, e);
    for (int c = 1; c <= 3; ++c) {
      PointSet z = greedy_net(m, HalfInt(c));
      EXPECT_EQ(penumbra(m, z, HalfInt(c)).size(), n);
      for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) EXPECT_GT(m.dist(z[i], z[j]), HalfInt(c));
    }
  }
}

TEST(Excisive, LineSplitAtZero) {
  auto p = path(21);  // points -10..10 as 0..20
  PointSet a, b;
  for (PointIndex i = 0; i <= 10; ++i) a.push_back(i);
  for (PointIndex i = 10; i <= 20; ++i) b.push_back(i);
  auto prof = omega_excisive_profile(p, a, b, {HalfInt(0), HalfInt(3)});
  EXPECT_EQ(prof.min_s[0], HalfInt(0));
  EXPECT_EQ(prof.min_s[1], HalfInt(3));
}

TEST(Excisive, DisjointIsUnboundedAndNonCoverRejected) {
  auto p = path(4);
  auto prof = omega_excisive_profile(p, {0, 1}, {2, 3}, {HalfInt(0), HalfInt(1)});
  EXPECT_EQ(prof.min_s[0], HalfInt(0));
  EXPECT_FALSE(prof.min_s[1].has_value());
  EXPECT_THROW(omega_excisive_profile(p, {0}, {3}, {HalfInt(1)}), NotADecomposition);
}

TEST(MapSample, ExpansionAndCloseness) {
  auto dom = std::make_shared<const FiniteMetricSpace>(path(6));
  MapSample id{dom, dom, {0, 1, 2, 3, 4, 5}};
  MapSample shift{dom, dom, {1, 2, 3, 4, 5, 5}};
  MapSample twice{dom, dom, {0, 2, 4, 5, 5, 5}};
  auto rho = expansion_profile(twice, {HalfInt(1), HalfInt(2)});
  EXPECT_EQ(rho[0].second, HalfInt(2));
  EXPECT_EQ(rho[1].second, HalfInt(4));
  EXPECT_EQ(closeness(id, shift), HalfInt(1));
  auto other = std::make_shared<const FiniteMetricSpace>(path(7));
  MapSample alien{other, other, {0, 1, 2, 3, 4, 5, 6}};
  EXPECT_THROW(closeness(id, alien), DomainMismatch);
}

TEST(Io, CsvRoundTripAndEdgeList) {
  auto p = path(5);
  std::stringstream ss;
  write_distance_csv(ss, p);
  EXPECT_EQ(read_distance_csv(ss), p);
  std::stringstream plain("0,1\n1,0\n");
  EXPECT_EQ(read_distance_csv(plain).dist(0, 1), HalfInt(1));
  std::stringstream edges("# comment\n0 1\n1 2 # tail\n\n");
  auto [n, e] = read_edge_list(edges);
  EXPECT_EQ(n, 3u);
  EXPECT_EQ(e.size(), 2u);
}
