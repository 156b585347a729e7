#include <gtest/gtest.h>

#include <functional>
#include <numeric>

#include "coarse/errors.hpp"
#include "coarse/homology.hpp"
#include "coarse/nerve.hpp"
#include "oracles/graph_oracle.hpp"

using coarse::Coefficients;
using coarse::Cover;
using coarse::FiniteMetricSpace;
using coarse::HalfInt;
using coarse::PointIndex;
using coarse::PointSet;
using coarse::Simplex;
using coarse::SimplicialComplex;
using coarse::VertexId;

namespace {

FiniteMetricSpace line(std::size_t n) {
  std::vector<coarse::Edge> e;
  for (PointIndex i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return coarse::graph_metric(n, e);
}

FiniteMetricSpace cycle(std::size_t n) {
  std::vector<coarse::Edge> e;
  for (PointIndex i = 0; i < n; ++i) e.push_back({i, static_cast<PointIndex>((i + 1) % n)});
  return coarse::graph_metric(n, e);
}

PointSet evens(std::size_t n) {
  PointSet z;
  for (PointIndex i = 0; i < n; i += 2) z.push_back(i);
  return z;
}

std::size_t rank(const std::vector<coarse::FgAbGroup>& h, std::size_t d) { return d < h.size() ? h[d].rank() : 0; }

/// Nerve by pairwise and triple intersection scans, independent of the incidence enumeration.
std::vector<std::vector<Simplex>> scan_nerve(const Cover& c, int cap) {
  std::vector<std::vector<Simplex>> out(static_cast<std::size_t>(cap) + 1);
  const auto m = static_cast<VertexId>(c.size());
  auto meet = [&](const std::vector<VertexId>& s) {
    for (std::size_t p = 0; p < c.point_count; ++p) {
      bool all = true;
      for (auto v : s) all = all && std::binary_search(c.members[v].begin(), c.members[v].end(), p);
      if (all) return true;
    }
    return false;
  };
  std::vector<VertexId> s;
  std::function<void(VertexId)> rec = [&](VertexId from) {
    if (!s.empty()) out[s.size() - 1].push_back(s);
    if (s.size() == static_cast<std::size_t>(cap) + 1) return;
    for (VertexId v = from; v < m; ++v) {
      s.push_back(v);
      if (meet(s)) rec(v + 1);
      s.pop_back();
    }
  };
  rec(0);
  return out;
}

std::size_t components(const SimplicialComplex& k) {
  oracle::Adjacency adj(k.vertex_count());
  if (k.dimension() >= 1)
    for (std::size_t i = 0; i < k.count(1); ++i) {
      auto e = k.simplex(1, i);
      adj[e[0]].insert(e[1]);
      adj[e[1]].insert(e[0]);
    }
  std::vector<char> seen(k.vertex_count(), 0);
  std::size_t comps = 0;
  for (auto v : k.vertices()) {
    if (seen[v]) continue;
    ++comps;
    auto d = oracle::bfs(adj, v);
    for (std::size_t u = 0; u < d.size(); ++u)
      if (d[u] >= 0) seen[u] = 1;
  }
  return comps;
}

SimplicialComplex octahedron() {
  // Antipodal pairs {0,1}, {2,3}, {4,5}.
  std::vector<Simplex> f;
  for (VertexId a : {0u, 1u})
    for (VertexId b : {2u, 3u})
      for (VertexId c : {4u, 5u}) f.push_back({a, b, c});
  return SimplicialComplex::from_facets(6, f);
}

}  // namespace

TEST(AntiCechCover, LineMembersAreRadiusTwoIntervals) {
  auto x = line(11);
  auto net = coarse::greedy_net(x, HalfInt(1));
  EXPECT_EQ(net, evens(11));
  auto c = coarse::anti_cech_cover(x, net, HalfInt(1), 1);
  ASSERT_EQ(c.size(), 6u);
  EXPECT_EQ(c.members[2], (PointSet{2, 3, 4, 5, 6}));
  EXPECT_EQ(c.members[0], (PointSet{0, 1, 2}));
  EXPECT_EQ(c.max_diameter, HalfInt(4));
  EXPECT_EQ(c.diameter_bound, HalfInt(4));
  EXPECT_EQ(c.lebesgue_bound, HalfInt(1));
  EXPECT_TRUE(c.certified);
  EXPECT_GE(coarse::ball_lebesgue_number(x, c), c.lebesgue_bound);
}

TEST(AntiCechCover, SinglePointAndFourCycle) {
  auto pt = coarse::graph_metric(1, {});
  auto c = coarse::anti_cech_cover(pt, {0}, HalfInt(1), 1);
  EXPECT_EQ(c.members, (std::vector<PointSet>{{0}}));

  auto c4 = coarse::anti_cech_cover(cycle(4), {0, 2}, HalfInt(1), 2);
  EXPECT_EQ(c4.members, (std::vector<PointSet>{{0, 1, 2, 3}, {0, 1, 2, 3}}));
}

TEST(AntiCechCover, SparseNetIsRejected) {
  EXPECT_THROW(coarse::anti_cech_cover(line(11), {0, 10}, HalfInt(1), 1), coarse::BoundViolation);
  EXPECT_THROW(coarse::anti_cech_cover(line(5), {0}, HalfInt(1), 0), std::invalid_argument);
}

TEST(AntiCechCover, BoundsHoldOnCycles) {
  for (std::size_t n : {9u, 16u, 25u}) {
    auto x = cycle(n);
    for (int twice_c : {2, 3, 4})
      for (int k : {1, 2, 3}) {
        const auto c = HalfInt::from_twice(twice_c);
        auto cover = coarse::anti_cech_cover(x, coarse::greedy_net(x, c), c, k);
        EXPECT_LE(cover.max_diameter, cover.diameter_bound);
        // Radii beyond the diameter are all realised by the diameter itself.
        const auto reachable = std::min(cover.lebesgue_bound, HalfInt(static_cast<std::int64_t>(n / 2)));
        EXPECT_GE(coarse::ball_lebesgue_number(x, cover), reachable) << n << " " << twice_c << " " << k;
      }
  }
}

TEST(CoverFromMembers, RejectsGapsAndEmptyMembers) {
  EXPECT_THROW(coarse::cover_from_members(3, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(coarse::cover_from_members(2, {{0, 1}, {}}), std::invalid_argument);
  auto c = coarse::cover_from_members(3, {{2, 0, 0}, {1}});
  EXPECT_EQ(c.members[0], (PointSet{0, 2}));
}

TEST(Nerve, DisjointMembersGiveTwoVertices) {
  auto n = coarse::nerve_complex(coarse::cover_from_members(2, {{0}, {1}}), 2);
  EXPECT_EQ(n.count(0), 2u);
  EXPECT_EQ(n.dimension(), 0);
}

TEST(Nerve, LineCoverMatchesIntersectionScan) {
  auto x = line(11);
  auto c = coarse::anti_cech_cover(x, evens(11), HalfInt(1), 1);
  auto n = coarse::nerve_complex(c, 3);
  auto scan = scan_nerve(c, 3);
  for (int d = 0; d <= 3; ++d) {
    const std::size_t got = d <= n.dimension() ? n.count(d) : 0;
    EXPECT_EQ(got, scan[static_cast<std::size_t>(d)].size()) << d;
    for (const auto& s : scan[static_cast<std::size_t>(d)]) EXPECT_TRUE(n.contains(s));
  }
  for (VertexId i = 0; i + 2 < 6; ++i) {
    EXPECT_TRUE(n.contains(Simplex{i, i + 1}));
    EXPECT_TRUE(n.contains(Simplex{i, i + 2}));
    EXPECT_TRUE(n.contains(Simplex{i, i + 1, i + 2}));
    EXPECT_FALSE(n.contains(Simplex{i, static_cast<VertexId>(i + 3)}));
  }
  auto h = coarse::homology(n, Coefficients::integers(), false, 1);
  EXPECT_EQ(rank(h, 0), 1u);
  EXPECT_EQ(rank(h, 1), 0u);
}

TEST(Nerve, FourArcsOfACycleGiveACircle) {
  auto c = coarse::cover_from_members(8, {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}, {6, 7, 0}});
  auto n = coarse::nerve_complex(c, 2);
  EXPECT_EQ(n.count(1), 4u);
  EXPECT_EQ(n.dimension(), 1);
  auto h = coarse::homology(n, Coefficients::integers(), false, 1);
  EXPECT_EQ(rank(h, 1), 1u);
  EXPECT_TRUE(h[1].torsion().empty());
}

TEST(Nerve, ClosedUnderFacesAndExplodesPastCap) {
  auto x = cycle(20);
  auto c = coarse::anti_cech_cover(x, coarse::greedy_net(x, HalfInt(1)), HalfInt(1), 2);
  auto n = coarse::nerve_complex(c, 3);
  std::vector<Simplex> all;
  for (int d = 0; d <= n.dimension(); ++d)
    for (std::size_t i = 0; i < n.count(d); ++i) {
      auto s = n.simplex(d, i);
      all.emplace_back(s.begin(), s.end());
    }
  auto closed = SimplicialComplex::from_facets(n.vertex_count(), all, 3);
  EXPECT_EQ(closed.total_count(), n.total_count());
  EXPECT_THROW(coarse::nerve_complex(c, 3, 20), coarse::SimplexExplosion);
}

TEST(Coarsening, IdentityAndSameCentre) {
  auto x = line(21);
  auto net = coarse::greedy_net(x, HalfInt(1));
  auto u1 = coarse::anti_cech_cover(x, net, HalfInt(1), 1);
  EXPECT_EQ(coarse::coarsening_map(u1, u1), coarse::SimplicialMap::identity(u1.size()));
  auto u3 = coarse::anti_cech_cover(x, net, HalfInt(1), 3);
  auto f = coarse::coarsening_map(u1, u3);
  EXPECT_EQ(f, coarse::SimplicialMap::identity(u1.size()));
  f.validate(coarse::nerve_complex(u1, 2), coarse::nerve_complex(u3, 2));
  EXPECT_EQ(f, coarse::coarsening_map(u1, u3));
}

TEST(Coarsening, MinimalIndexForExplicitCovers) {
  auto fine = coarse::cover_from_members(4, {{0, 1}, {2, 3}});
  auto coarse_cover = coarse::cover_from_members(4, {{1, 2, 3}, {0, 1, 2, 3}, {0, 1}});
  auto f = coarse::coarsening_map(fine, coarse_cover);
  EXPECT_EQ(f.table, (std::vector<VertexId>{1, 0}));
  EXPECT_THROW(coarse::coarsening_map(coarse_cover, fine), coarse::NoContainingMember);
}

TEST(Coarsening, AllContainingChoicesAreContiguous) {
  auto x = cycle(16);
  auto net = coarse::greedy_net(x, HalfInt(1));
  auto fine = coarse::anti_cech_cover(x, net, HalfInt(1), 1);
  auto coarse_cover = coarse::anti_cech_cover(x, net, HalfInt(1), 4);
  auto nf = coarse::nerve_complex(fine, 2);
  // Unions of two images of a triangle can have six vertices.
  auto nc = coarse::nerve_complex(coarse_cover, 5);
  // Every valid choice function, sampled by rotating through each fine member's candidates.
  std::vector<std::vector<VertexId>> choices(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i)
    for (VertexId j = 0; j < coarse_cover.size(); ++j)
      if (std::includes(coarse_cover.members[j].begin(), coarse_cover.members[j].end(), fine.members[i].begin(),
                        fine.members[i].end()))
        choices[i].push_back(j);
  auto base = coarse::coarsening_map(fine, coarse_cover);
  for (std::size_t shift = 0; shift < 5; ++shift) {
    coarse::SimplicialMap g;
    for (std::size_t i = 0; i < fine.size(); ++i) g.table.push_back(choices[i][(i + shift) % choices[i].size()]);
    g.validate(nf, nc);
    EXPECT_TRUE(coarse::contiguous(base, g, nf, nc)) << shift;
    EXPECT_TRUE(coarse::contiguous_through_cover(base, g, nf, coarse_cover)) << shift;
  }
}

TEST(Coarsening, LastChoiceContainsAndAgreesThroughTheCover) {
  auto x = line(30);
  auto fine = coarse::anti_cech_cover(x, coarse::greedy_net(x, HalfInt(1)), HalfInt(1), 1);
  auto coarse_cover = coarse::anti_cech_cover(x, coarse::greedy_net(x, HalfInt(2)), HalfInt(2), 1);
  auto first = coarse::coarsening_map(fine, coarse_cover);
  auto last = coarse::coarsening_map_last(fine, coarse_cover);
  bool differs = false;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const auto& v = coarse_cover.members[last.table[i]];
    EXPECT_TRUE(std::includes(v.begin(), v.end(), fine.members[i].begin(), fine.members[i].end()));
    EXPECT_GE(last.table[i], first.table[i]);
    differs = differs || last.table[i] != first.table[i];
  }
  EXPECT_TRUE(differs);
  EXPECT_TRUE(coarse::contiguous_through_cover(first, last, coarse::nerve_complex(fine, 3), coarse_cover));
}

TEST(Coarsening, FarApartImagesAreNotContiguousThroughTheCover) {
  auto x = line(30);
  auto fine = coarse::anti_cech_cover(x, coarse::greedy_net(x, HalfInt(1)), HalfInt(1), 1);
  auto nf = coarse::nerve_complex(fine, 1);
  auto f = coarse::coarsening_map(fine, fine);
  coarse::SimplicialMap g = f;
  std::reverse(g.table.begin(), g.table.end());
  EXPECT_FALSE(coarse::contiguous_through_cover(f, g, nf, fine));
  EXPECT_TRUE(coarse::contiguous_through_cover(f, f, nf, fine));
}

TEST(Coarsening, MapsIntoSeparateComponentsAreNotContiguous) {
  auto k = SimplicialComplex::from_facets(2, {{0}, {1}});
  coarse::SimplicialMap f{{0, 0}}, g{{1, 1}};
  EXPECT_FALSE(coarse::contiguous(f, g, k, k));
  EXPECT_TRUE(coarse::contiguous(f, f, k, k));
}

TEST(Subcomplexes, MeetingAPoint) {
  auto x = line(11);
  auto c = coarse::anti_cech_cover(x, evens(11), HalfInt(1), 1);
  auto n = coarse::nerve_complex(c, 2);
  auto s = coarse::subcomplex_meeting(c, n, {0});
  EXPECT_EQ(s.vertices(), (std::vector<VertexId>{0, 1}));
  EXPECT_EQ(s.count(1), 1u);
  EXPECT_TRUE(coarse::subcomplex_meeting(c, n, {}).empty());
  PointSet all(11);
  std::iota(all.begin(), all.end(), 0);
  EXPECT_EQ(coarse::subcomplex_meeting(c, n, all).total_count(), n.total_count());
}

TEST(Subcomplexes, EndOfTheLineHasTwoComponents) {
  auto x = line(41);  // point i stands for i - 20
  auto c = coarse::anti_cech_cover(x, coarse::greedy_net(x, HalfInt(1)), HalfInt(1), 1);
  auto n = coarse::nerve_complex(c, 2);
  auto end = coarse::end_subcomplex(c, n, x, HalfInt(10), 20);
  EXPECT_EQ(components(end), 2u);
  EXPECT_EQ(coarse::end_subcomplex(c, n, x, HalfInt(0), 20).total_count(), n.total_count());
  EXPECT_TRUE(coarse::end_subcomplex(c, n, x, HalfInt(40), 20).empty());
}

TEST(Surgery, OctahedronStarsAndCones) {
  auto s2 = octahedron();
  auto h = coarse::homology(s2, Coefficients::integers(), true, 2);
  EXPECT_EQ(rank(h, 2), 1u);

  auto disk = coarse::remove_open_stars(s2, {0});
  auto hd = coarse::homology(disk, Coefficients::integers(), true, 2);
  for (std::size_t d = 0; d < 3; ++d) EXPECT_EQ(rank(hd, d), 0u) << d;

  auto annulus = coarse::remove_open_stars(s2, {0, 1});
  auto ha = coarse::homology(annulus, Coefficients::integers(), true, 2);
  EXPECT_EQ(rank(ha, 1), 1u);
  EXPECT_EQ(rank(ha, 2), 0u);
  EXPECT_THROW(coarse::remove_open_stars(s2, {0, 2}), coarse::AdjacentCenters);
  EXPECT_EQ(coarse::remove_open_stars(s2, {}).total_count(), s2.total_count());

  // Coning off one boundary circle of the annulus leaves a disk.
  auto circle = coarse::link(s2, 0);
  auto capped = coarse::attach_cone(annulus, circle);
  auto hc = coarse::homology(capped, Coefficients::integers(), true, 2);
  for (std::size_t d = 0; d < 3; ++d) EXPECT_EQ(rank(hc, d), 0u) << d;

  // Coning the removed link back onto the disk restores the sphere.
  auto restored = coarse::homology(coarse::attach_cone(disk, circle), Coefficients::integers(), true, 2);
  EXPECT_EQ(rank(restored, 2), 1u);
  EXPECT_EQ(rank(restored, 1), 0u);
}

TEST(Surgery, ConeOverEverythingIsContractible) {
  auto s2 = octahedron();
  auto cone = coarse::attach_cone(s2, s2);
  auto h = coarse::homology(cone, Coefficients::integers(), true, 3);
  for (std::size_t d = 0; d < h.size(); ++d) EXPECT_EQ(h[d].generator_count(), 0u) << d;
  auto lonely = coarse::attach_cone(s2, SimplicialComplex(6));
  EXPECT_EQ(coarse::homology(lonely, Coefficients::integers(), true, 0)[0].rank(), 1u);
}

TEST(AntiCechSystem, DefaultScheduleDominatesDiameters) {
  auto sched = coarse::default_schedule(HalfInt(1), 1, 3);
  EXPECT_EQ(sched[1].k, 4);
  EXPECT_EQ(sched[2].k, 10);
  auto x = cycle(60);
  auto sys = coarse::anti_cech_system(x, sched);
  EXPECT_EQ(sys.maps.size(), 2u);
  EXPECT_TRUE(sys.lebesgue_dominates());
  auto again = coarse::anti_cech_system(x, sched);
  EXPECT_EQ(sys.to_json(), again.to_json());
  EXPECT_EQ(sys.maps[0], again.maps[0]);
}
