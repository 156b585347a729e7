#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "coarse/errors.hpp"
#include "coarse/towers.hpp"

using coarse::ColimResult;
using coarse::DirectedSystem;
using coarse::FgAbGroup;
using coarse::Homomorphism;
using coarse::IntMatrix;
using coarse::Integer;
using coarse::Tower;
using coarse::TowerLimits;

namespace {

const FgAbGroup kZ = FgAbGroup::free(1);

Homomorphism scalar(const FgAbGroup& g, long c) {
  IntMatrix m(1, 1);
  m(0, 0) = Integer(c);
  return Homomorphism(g, g, m);
}

Tower doubling_tower(std::size_t m) {
  return Tower(std::vector<FgAbGroup>(m, kZ), std::vector<Homomorphism>(m - 1, scalar(kZ, 2)));
}

std::int64_t order(const FgAbGroup& g) {
  std::int64_t n = 1;
  for (const auto& t : g.torsion()) n *= t.to_int64();
  return n;
}

/// Every element of a finite group in canonical coordinates.
std::vector<std::vector<Integer>> elements(const FgAbGroup& g) {
  std::vector<std::vector<Integer>> out{{}};
  for (const auto& t : g.torsion()) {
    std::vector<std::vector<Integer>> next;
    for (const auto& e : out)
      for (std::int64_t v = 0; v < t.to_int64(); ++v) {
        auto f = e;
        f.push_back(Integer(v));
        next.push_back(std::move(f));
      }
    out = std::move(next);
  }
  return out;
}

using ElementSet = std::set<std::vector<std::int64_t>>;

std::vector<std::int64_t> plain(const std::vector<Integer>& v) {
  std::vector<std::int64_t> out;
  for (const auto& x : v) out.push_back(x.to_int64());
  return out;
}

/// Image of A_{k+j} in A_k, chasing every element one map at a time.
ElementSet chase(const Tower& t, std::size_t k, std::size_t j) {
  ElementSet out;
  for (auto e : elements(t.groups[k + j])) {
    for (std::size_t i = k + j; i > k; --i) e = t.maps[i - 1].apply(e);
    out.insert(plain(e));
  }
  return out;
}

/// Random homomorphism between products of cyclic groups given in canonical form.
Homomorphism random_hom(const FgAbGroup& src, const FgAbGroup& dst, std::mt19937& rng) {
  IntMatrix m(dst.generator_count(), src.generator_count());
  for (std::size_t c = 0; c < src.generator_count(); ++c)
    for (std::size_t r = 0; r < dst.generator_count(); ++r) {
      const std::int64_t a = src.generator_order(c).to_int64(), b = dst.generator_order(r).to_int64();
      // A generator of order a can hit multiples of b / gcd(a, b) in Z/b.
      const std::int64_t step = a == 0 ? (b == 0 ? 1 : b) : (b == 0 ? 0 : b / std::gcd(a, b));
      m(r, c) = step == 0 ? Integer(0) : Integer(step * static_cast<std::int64_t>(rng() % 4));
    }
  return Homomorphism(src, dst, m);
}

FgAbGroup random_finite(std::mt19937& rng) {
  static const std::vector<std::vector<Integer>> shapes{{Integer(2)}, {Integer(4)}, {Integer(2), Integer(2)},
                                                        {Integer(2), Integer(4)}, {Integer(8)}, {Integer(3)},
                                                        {Integer(6)}, {Integer(2), Integer(6)}};
  return FgAbGroup(0, shapes[rng() % shapes.size()]);
}

}  // namespace

TEST(StabilizedImage, ConstantTowerStabilizesAtOnce) {
  auto lim = coarse::limits(Tower::constant(kZ, 5));
  for (const auto& li : lim.levels) {
    if (!li.determinable()) continue;
    EXPECT_EQ(li.stabilized_at, 1u);
    EXPECT_EQ(li.eventual().isomorphism_type(), kZ);
  }
  EXPECT_EQ(lim.lim, TowerLimits::Lim::Stable);
  EXPECT_EQ(lim.lim_str(), "STABLE(Z)");
  EXPECT_EQ(lim.lim1, TowerLimits::Lim1::ZeroMl);
}

TEST(StabilizedImage, DoublingNeverStabilizes) {
  auto levels = coarse::stabilized_image(doubling_tower(5));
  ASSERT_EQ(levels[0].chain.size(), 4u);
  EXPECT_FALSE(levels[0].stabilized_at.has_value());
  EXPECT_EQ(levels[0].strict_drops.size(), 3u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_TRUE(levels[0].chain[i].contains({Integer(std::int64_t{1} << (i + 1))}));
    EXPECT_FALSE(levels[0].chain[i].contains({Integer(std::int64_t{1} << i)}));
  }
}

TEST(StabilizedImage, ChainsDescend) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FgAbGroup> g{FgAbGroup::free(2), FgAbGroup::free(2), FgAbGroup::free(2), FgAbGroup::free(2)};
    std::vector<Homomorphism> m;
    for (int i = 0; i < 3; ++i) m.push_back(random_hom(g[0], g[0], rng));
    for (const auto& li : coarse::stabilized_image(Tower(g, m)))
      for (std::size_t i = 0; i + 1 < li.chain.size(); ++i) EXPECT_TRUE(li.chain[i].contains(li.chain[i + 1]));
  }
}

TEST(Limits, DoublingGivesFiniteIndexWitness) {
  auto lim = coarse::limits(doubling_tower(5));
  EXPECT_EQ(lim.lim, TowerLimits::Lim::Inconclusive);
  EXPECT_EQ(lim.lim1, TowerLimits::Lim1::NonzeroWitness);
  EXPECT_EQ(lim.witness_level, 0u);
  ASSERT_EQ(lim.witness_quotients.size(), 3u);
  for (const auto& q : lim.witness_quotients) EXPECT_EQ(q, FgAbGroup::cyclic(Integer(2)));
  auto j = lim.to_json();
  EXPECT_EQ(j["lim1"], "NONZERO_WITNESS");
  EXPECT_EQ(j["window"], 5);
}

TEST(Limits, FiniteIdentityTower) {
  auto lim = coarse::limits(Tower::constant(FgAbGroup::cyclic(Integer(2)), 4));
  EXPECT_EQ(lim.lim_str(), "STABLE(Z/2)");
  EXPECT_EQ(lim.lim1_str(), "ZERO_ML");
}

TEST(Limits, ShortWindowIsNotStable) {
  auto lim = coarse::limits(Tower::constant(kZ, 3));
  EXPECT_EQ(lim.lim1, TowerLimits::Lim1::ZeroMl);
  EXPECT_EQ(lim.lim, TowerLimits::Lim::Inconclusive);
  EXPECT_THROW(Tower::constant(kZ, 2), std::invalid_argument);
}

TEST(Limits, ZeroMapsGiveZeroLimit) {
  std::vector<FgAbGroup> g(5, FgAbGroup::free(2));
  std::vector<Homomorphism> m(4, Homomorphism::zero(g[0], g[0]));
  auto lim = coarse::limits(Tower(g, m));
  EXPECT_EQ(lim.lim_str(), "STABLE(0)");
  EXPECT_EQ(lim.lim1_str(), "ZERO_ML");
}

TEST(Limits, SurjectionsAreMittagLeffler) {
  // Z^3 -> Z^2 -> Z -> ... by coordinate projections, plus a finite quotient at the bottom.
  std::vector<FgAbGroup> g{FgAbGroup::cyclic(Integer(4)), kZ, FgAbGroup::free(2), FgAbGroup::free(3),
                           FgAbGroup::free(3)};
  auto proj = [](std::size_t from, std::size_t to) {
    IntMatrix m(to, from);
    for (std::size_t i = 0; i < to; ++i) m(i, i) = Integer(1);
    return Homomorphism(FgAbGroup::free(from), FgAbGroup::free(to), m);
  };
  IntMatrix q(1, 1);
  q(0, 0) = Integer(1);
  std::vector<Homomorphism> m{Homomorphism(kZ, g[0], q), proj(2, 1), proj(3, 2), proj(3, 3)};
  auto lim = coarse::limits(Tower(g, m));
  EXPECT_EQ(lim.lim1, TowerLimits::Lim1::ZeroMl);
  for (const auto& li : lim.levels)
    if (li.determinable()) EXPECT_EQ(li.eventual(), coarse::Subgroup::whole(g[li.level]));
}

TEST(Limits, FiniteTowersMatchElementChase) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<FgAbGroup> g;
    for (int i = 0; i < 5; ++i) g.push_back(random_finite(rng));
    std::vector<Homomorphism> m;
    for (int i = 0; i < 4; ++i) m.push_back(random_hom(g[i + 1], g[i], rng));
    Tower t(g, m);
    auto lim = coarse::limits(t);
    for (const auto& li : lim.levels) {
      for (std::size_t i = 0; i < li.chain.size(); ++i) {
        auto oracle = chase(t, li.level, i + 1);
        EXPECT_EQ(order(li.chain[i].isomorphism_type()), static_cast<std::int64_t>(oracle.size()));
        for (const auto& e : oracle) {
          std::vector<Integer> v(e.begin(), e.end());
          EXPECT_TRUE(li.chain[i].contains(v));
        }
      }
    }
    // A finite tower can never witness a nonzero lim¹.
    EXPECT_NE(lim.lim1, TowerLimits::Lim1::NonzeroWitness);
    if (lim.lim == TowerLimits::Lim::Stable) {
      const auto k = *lim.lim_level;
      EXPECT_EQ(order(*lim.lim_group), static_cast<std::int64_t>(chase(t, k, t.window() - 1 - k).size()));
    }
  }
}

TEST(Limits, InvariantUnderLevelwiseIsomorphism) {
  // Conjugating every level by the shear (x, y) -> (x + y, y) leaves the limits unchanged.
  const auto z2 = FgAbGroup::free(2);
  IntMatrix s = IntMatrix::from_rows({{1, 1}, {0, 1}}), s_inv = IntMatrix::from_rows({{1, -1}, {0, 1}});
  const Homomorphism phi(z2, z2, s), phi_inv(z2, z2, s_inv);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FgAbGroup> g(5, z2);
    std::vector<Homomorphism> a, b;
    for (int i = 0; i < 4; ++i) {
      a.push_back(trial % 2 ? Homomorphism::identity(z2) : random_hom(z2, z2, rng));
      b.push_back(phi.compose(a.back()).compose(phi_inv));
    }
    auto la = coarse::limits(Tower(g, a)), lb = coarse::limits(Tower(g, b));
    EXPECT_EQ(la.lim_str(), lb.lim_str());
    EXPECT_EQ(la.lim1_str(), lb.lim1_str());
    for (std::size_t k = 0; k < la.levels.size(); ++k) {
      EXPECT_EQ(la.levels[k].stabilized_at, lb.levels[k].stabilized_at);
      EXPECT_EQ(la.levels[k].eventual().isomorphism_type(), lb.levels[k].eventual().isomorphism_type());
    }
  }
}

TEST(Colim, ConstantAndGrowing) {
  DirectedSystem constant(std::vector<FgAbGroup>(4, kZ), std::vector<Homomorphism>(3, Homomorphism::identity(kZ)));
  auto c = coarse::colim(constant);
  EXPECT_EQ(c.status, ColimResult::Status::Stable);
  EXPECT_EQ(c.str(), "STABLE(Z)");
  EXPECT_EQ(c.stable_from, 0u);

  std::vector<FgAbGroup> g{FgAbGroup::free(1), FgAbGroup::free(2), FgAbGroup::free(3)};
  auto incl = [](std::size_t from) {
    IntMatrix m(from + 1, from);
    for (std::size_t i = 0; i < from; ++i) m(i, i) = Integer(1);
    return Homomorphism(FgAbGroup::free(from), FgAbGroup::free(from + 1), m);
  };
  auto grow = coarse::colim(DirectedSystem(g, {incl(1), incl(2)}));
  EXPECT_EQ(grow.status, ColimResult::Status::Growing);
  EXPECT_EQ(grow.to_json()["stages"], (nlohmann::json{"Z", "Z^2", "Z^3"}));
}

TEST(Colim, DoublingIsInconclusive) {
  DirectedSystem d(std::vector<FgAbGroup>(4, kZ), std::vector<Homomorphism>(3, scalar(kZ, 2)));
  EXPECT_EQ(coarse::colim(d).status, ColimResult::Status::Inconclusive);
}

TEST(Colim, EventuallyIsomorphicFiniteSystem) {
  const auto z4 = FgAbGroup::cyclic(Integer(4)), z2 = FgAbGroup::cyclic(Integer(2));
  IntMatrix two(1, 1);
  two(0, 0) = Integer(2);
  DirectedSystem d({z2, z4, z4, z4}, {Homomorphism(z2, z4, two), Homomorphism::identity(z4), scalar(z4, 3)});
  auto c = coarse::colim(d);
  EXPECT_EQ(c.str(), "STABLE(Z/4)");
  EXPECT_EQ(c.stable_from, 1u);
}

TEST(Milnor, ConstantTowerPasses) {
  auto r = coarse::milnor_check(Tower::constant(kZ, 4), Homomorphism::identity(kZ), 1);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.to_json()["result"], "PASS");
}

TEST(Milnor, MismatchedTotalFails) {
  IntMatrix p = IntMatrix::from_rows({{1, 0}});
  auto r = coarse::milnor_check(Tower::constant(kZ, 4), Homomorphism(FgAbGroup::free(2), kZ, p), 0);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.kernel, kZ);

  auto r2 = coarse::milnor_check(Tower::constant(kZ, 4), scalar(kZ, 3), 0);
  EXPECT_FALSE(r2.pass);
  EXPECT_EQ(r2.cokernel, FgAbGroup::cyclic(Integer(3)));
}

TEST(Milnor, UnstableTowerIsRefused) {
  EXPECT_THROW(coarse::milnor_check(doubling_tower(5), Homomorphism::identity(kZ), 0), coarse::UnstableTower);
}

TEST(Quotient, SubgroupQuotients) {
  const auto z2 = FgAbGroup::free(2);
  coarse::Subgroup whole = coarse::Subgroup::whole(z2);
  coarse::Subgroup sub(z2, IntMatrix::from_rows({{2, 0}, {0, 6}}));
  EXPECT_EQ(coarse::quotient_type(whole, sub), FgAbGroup(0, {Integer(2), Integer(6)}));
  EXPECT_EQ(coarse::quotient_type(whole, coarse::Subgroup::trivial(z2)), z2);
  EXPECT_THROW(coarse::quotient_type(sub, whole), std::invalid_argument);
}
