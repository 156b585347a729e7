#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "coarse/errors.hpp"
#include "coarse/models.hpp"
#include "coarse/pipeline.hpp"

using coarse::FgAbGroup;
using coarse::HalfInt;
using coarse::NerveCache;
using coarse::NerveTowerOptions;
using coarse::ScaleLevel;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("coarse-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

NerveTowerOptions cycle_options() {
  NerveTowerOptions o;
  o.levels = {{HalfInt(1), 1}, {HalfInt(2), 1}, {HalfInt(4), 1}, {HalfInt(8), 1}};
  o.top_degree = 2;
  o.core_radius = HalfInt(32);
  o.basepoint = 0;
  o.space_key = "cycle:96";
  return o;
}

}  // namespace

TEST(Pipeline, CycleTowerStabilizesAtTheCircle) {
  const auto space = coarse::cycle_graph(96).metric();
  const auto tower = coarse::nerve_cohomology_tower(space, cycle_options());
  ASSERT_EQ(tower.levels.size(), 4u);
  EXPECT_TRUE(tower.resolved());
  for (const auto& l : tower.levels) EXPECT_TRUE(l.cover.certified);
  const auto limits = tower.limits();
  ASSERT_EQ(limits.size(), 3u);
  // The end is the far arc, so (N, E) looks like a circle relative to an arc: H^1 = Z.
  EXPECT_EQ(limits[1].lim_str(), "STABLE(Z)");
  EXPECT_EQ(limits[0].lim_str(), "STABLE(0)");
  EXPECT_EQ(limits[2].lim_str(), "STABLE(0)");
  for (const auto& a : tower.alternatives) {
    EXPECT_TRUE(a.contiguous);
    for (bool same : a.identical) EXPECT_TRUE(same);
  }
}

TEST(Pipeline, UnresolvedLevelsAreFlagged) {
  auto o = cycle_options();
  o.core_radius = HalfInt(12);
  const auto tower = coarse::nerve_cohomology_tower(coarse::cycle_graph(96).metric(), o);
  EXPECT_TRUE(tower.levels[0].resolved);
  EXPECT_FALSE(tower.levels[3].resolved);
  EXPECT_FALSE(tower.resolved());
  EXPECT_EQ(tower.to_json()["resolved"], false);
}

TEST(Pipeline, CacheDoesNotChangeTheTower) {
  const auto dir = scratch_dir("cache");
  const NerveCache cache(dir);
  const auto space = coarse::cycle_graph(96).metric();
  auto o = cycle_options();
  const auto plain = coarse::nerve_cohomology_tower(space, o);
  o.cache = &cache;
  const auto first = coarse::nerve_cohomology_tower(space, o);
  const auto second = coarse::nerve_cohomology_tower(space, o);
  for (const auto& l : first.levels) EXPECT_FALSE(l.from_cache);
  for (const auto& l : second.levels) EXPECT_TRUE(l.from_cache);
  EXPECT_EQ(plain.to_json(), first.to_json());
  EXPECT_EQ(plain.to_json(), second.to_json());
  std::filesystem::remove_all(dir);
}

TEST(Pipeline, DamagedCacheEntriesAreRecomputed) {
  const auto dir = scratch_dir("damaged");
  const NerveCache cache(dir);
  const auto space = coarse::cycle_graph(96).metric();
  auto o = cycle_options();
  o.cache = &cache;
  const auto reference = coarse::nerve_cohomology_tower(space, o);
  for (const auto& entry : std::filesystem::directory_iterator(dir)) std::ofstream(entry.path()) << "not a complex\n";
  const auto again = coarse::nerve_cohomology_tower(space, o);
  for (const auto& l : again.levels) EXPECT_FALSE(l.from_cache);
  EXPECT_EQ(reference.to_json(), again.to_json());
  std::filesystem::remove_all(dir);
}

TEST(Pipeline, CacheRoundTripsAComplex) {
  const auto dir = scratch_dir("roundtrip");
  const NerveCache cache(dir);
  const auto k = coarse::subdivided_octahedron(1);
  EXPECT_FALSE(cache.load("octahedron").has_value());
  cache.store("octahedron", k);
  const auto back = cache.load("octahedron");
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, k);
  std::filesystem::remove_all(dir);
}

TEST(Pipeline, SimplexCapIsAnErrorNotATruncation) {
  auto o = cycle_options();
  o.simplex_cap = 10;
  EXPECT_THROW(coarse::nerve_cohomology_tower(coarse::cycle_graph(96).metric(), o), coarse::SimplexExplosion);
}
