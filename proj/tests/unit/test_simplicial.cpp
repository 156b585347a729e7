#include <gtest/gtest.h>

#include <sstream>

#include "coarse/errors.hpp"
#include "coarse/simplicial.hpp"

using coarse::Simplex;
using coarse::SimplicialComplex;
using coarse::SimplicialMap;

namespace {

SimplicialComplex hexagon() {
  std::vector<Simplex> edges;
  for (unsigned i = 0; i < 6; ++i) edges.push_back({i, (i + 1) % 6});
  return SimplicialComplex::from_facets(6, edges);
}

SimplicialComplex octahedron() {
  // vertices 0/1 = ±x, 2/3 = ±y, 4/5 = ±z
  std::vector<Simplex> tris;
  for (unsigned a : {0u, 1u})
    for (unsigned b : {2u, 3u})
      for (unsigned c : {4u, 5u}) tris.push_back({a, b, c});
  return SimplicialComplex::from_facets(6, tris);
}

}  // namespace

TEST(SimplicialComplex, FaceClosureCounts) {
  auto k = octahedron();
  EXPECT_EQ(k.count(0), 6u);
  EXPECT_EQ(k.count(1), 12u);
  EXPECT_EQ(k.count(2), 8u);
  EXPECT_EQ(k.dimension(), 2);
  EXPECT_EQ(k.euler_characteristic(), 2);
  EXPECT_TRUE(k.contains(Simplex{0, 2, 4}));
  EXPECT_FALSE(k.contains(Simplex{0, 1}));
}

TEST(SimplicialComplex, CapTruncatesClosure) {
  auto k = SimplicialComplex::from_facets(4, {{0, 1, 2, 3}}, 1);
  EXPECT_EQ(k.dimension(), 1);
  EXPECT_EQ(k.count(1), 6u);
  EXPECT_EQ(k.dimension_cap(), 1);
}

TEST(SimplicialComplex, FromTablesRejectsMissingFaces) {
  std::vector<std::vector<coarse::VertexId>> tables{{0, 1}, {0, 1}};
  EXPECT_NO_THROW(SimplicialComplex::from_tables(2, tables));
  std::vector<std::vector<coarse::VertexId>> broken{{0}, {0, 1}};
  EXPECT_THROW(SimplicialComplex::from_tables(2, broken), coarse::NotASubcomplex);
}

TEST(SimplicialComplex, TextRoundTrip) {
  auto k = octahedron();
  std::stringstream ss;
  k.write_text(ss);
  EXPECT_EQ(SimplicialComplex::read_text(ss), k);
}

TEST(SimplicialComplex, UnionAndIntersection) {
  auto a = SimplicialComplex::from_facets(4, {{0, 1}, {1, 2}});
  auto b = SimplicialComplex::from_facets(4, {{1, 2}, {2, 3}});
  auto u = SimplicialComplex::union_of(a, b);
  auto i = SimplicialComplex::intersection_of(a, b);
  EXPECT_EQ(u.count(1), 3u);
  EXPECT_EQ(i, SimplicialComplex::from_facets(4, {{1, 2}}));
  EXPECT_TRUE(a.is_subcomplex_of(u));
  EXPECT_TRUE(i.is_subcomplex_of(b));
  EXPECT_FALSE(u.is_subcomplex_of(a));
}

TEST(SimplicialComplex, FullSubcomplexKeepsIdSpace) {
  auto k = octahedron();
  std::vector<char> mask{1, 0, 1, 0, 1, 1};
  auto f = k.full_subcomplex(mask);
  EXPECT_EQ(f.vertex_count(), 6u);
  EXPECT_EQ(f.count(2), 2u);
  EXPECT_EQ(f.vertices(), (std::vector<coarse::VertexId>{0, 2, 4, 5}));
}

TEST(SimplicialOps, RemoveOpenStarsAndLink) {
  auto k = octahedron();
  auto l = coarse::link(k, 0);
  EXPECT_EQ(l.count(0), 4u);
  EXPECT_EQ(l.count(1), 4u);
  auto holed = coarse::remove_open_stars(k, {0});
  EXPECT_EQ(holed.count(2), 4u);
  EXPECT_EQ(holed.euler_characteristic(), 1);
  EXPECT_THROW(coarse::remove_open_stars(k, {0, 2}), coarse::AdjacentCenters);
  EXPECT_NO_THROW(coarse::remove_open_stars(k, {0, 1}));
}

TEST(SimplicialOps, AttachConeRestoresSphere) {
  auto k = octahedron();
  auto holed = coarse::remove_open_stars(k, {0});
  auto capped = coarse::attach_cone(holed, coarse::link(k, 0));
  EXPECT_EQ(capped.vertex_count(), 7u);
  EXPECT_EQ(capped.euler_characteristic(), 2);
  EXPECT_EQ(capped.count(2), 8u);
}

TEST(SimplicialOps, SortWithSign) {
  Simplex s{2, 0, 1};
  EXPECT_EQ(coarse::sort_with_sign(s), 1);
  EXPECT_EQ(s, (Simplex{0, 1, 2}));
  Simplex t{1, 0, 2};
  EXPECT_EQ(coarse::sort_with_sign(t), -1);
  Simplex d{1, 0, 1};
  EXPECT_EQ(coarse::sort_with_sign(d), 0);
}

TEST(SimplicialMap, ValidateAndContiguity) {
  auto c6 = hexagon();
  auto c3 = SimplicialComplex::from_facets(3, {{0, 1}, {1, 2}, {0, 2}});
  SimplicialMap wrap{{0, 1, 2, 0, 1, 2}};
  EXPECT_NO_THROW(wrap.validate(c6, c3));
  SimplicialMap shifted{{1, 2, 0, 1, 2, 0}};
  EXPECT_FALSE(coarse::contiguous(wrap, shifted, c6, c3));
  auto filled = SimplicialComplex::from_facets(3, {{0, 1, 2}});
  EXPECT_TRUE(coarse::contiguous(wrap, shifted, c6, filled));
  SimplicialMap bad{{0, 1, 2, 0, 1}};
  EXPECT_THROW(coarse::contiguous(wrap, bad, c6, c3), coarse::ShapeMismatch);
  auto path = SimplicialComplex::from_facets(3, {{0, 1}, {1, 2}});
  EXPECT_THROW(wrap.validate(c6, path), std::invalid_argument);
}

TEST(SimplicialMap, Composition) {
  SimplicialMap f{{1, 2, 0}};
  SimplicialMap g{{2, 2, 1}};
  auto h = g.compose_after(f);
  EXPECT_EQ(h.table, (std::vector<coarse::VertexId>{2, 1, 2}));
  EXPECT_EQ(SimplicialMap::identity(3).compose_after(f), f);
}
