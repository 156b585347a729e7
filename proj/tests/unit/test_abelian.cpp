#include <gtest/gtest.h>

#include "coarse/abelian.hpp"

using coarse::FgAbGroup;
using coarse::Homomorphism;
using coarse::Integer;
using coarse::IntMatrix;
using coarse::Subgroup;

TEST(FgAbGroup, NormalizesCyclicOrders) {
  auto g = FgAbGroup::from_cyclic_orders({Integer(4), Integer(6), Integer(0), Integer(1)});
  EXPECT_EQ(g.rank(), 1u);
  ASSERT_EQ(g.torsion().size(), 2u);
  EXPECT_EQ(g.torsion()[0], Integer(2));
  EXPECT_EQ(g.torsion()[1], Integer(12));
  EXPECT_EQ(g.str(), "Z + Z/2 + Z/12");
  EXPECT_EQ(FgAbGroup().str(), "0");
  EXPECT_EQ(FgAbGroup::free(3).str(), "Z^3");
  EXPECT_THROW(FgAbGroup(0, {Integer(4), Integer(6)}), std::invalid_argument);
}

TEST(FgAbGroup, JsonRoundTrip) {
  auto g = FgAbGroup(2, {Integer(3), Integer(9)});
  auto j = g.to_json();
  EXPECT_EQ(j["rank"], 2);
  EXPECT_EQ(FgAbGroup::from_json(j), g);
}

TEST(Homomorphism, MultiplicationByTwoOnZ) {
  auto z = FgAbGroup::free(1);
  Homomorphism twice(z, z, IntMatrix::from_rows({{2}}));
  EXPECT_TRUE(twice.is_injective());
  EXPECT_FALSE(twice.is_surjective());
  EXPECT_EQ(twice.image().isomorphism_type(), z);
  auto coker_gen = std::vector<Integer>{Integer(1)};
  EXPECT_FALSE(twice.image().contains(coker_gen));
}

TEST(Homomorphism, ReductionModFourToTwo) {
  auto z4 = FgAbGroup::cyclic(Integer(4));
  auto z2 = FgAbGroup::cyclic(Integer(2));
  Homomorphism red(z4, z2, IntMatrix::from_rows({{1}}));
  EXPECT_TRUE(red.is_surjective());
  EXPECT_FALSE(red.is_injective());
  EXPECT_EQ(red.kernel().isomorphism_type(), z2);
  // Z/2 -> Z/4, 1 -> 2 is the only nonzero map; 1 -> 1 must be rejected.
  Homomorphism inc(z2, z4, IntMatrix::from_rows({{2}}));
  EXPECT_TRUE(inc.is_injective());
  EXPECT_THROW(Homomorphism(z2, z4, IntMatrix::from_rows({{1}})), std::invalid_argument);
  // Z/2 -> Z has only the zero map
  EXPECT_THROW(Homomorphism(z2, FgAbGroup::free(1), IntMatrix::from_rows({{1}})), std::invalid_argument);
}

TEST(Homomorphism, KernelImageOfMixedGroup) {
  // Z^2 -> Z + Z/6, (a,b) -> (a+b, 2a)
  auto src = FgAbGroup::free(2);
  auto tgt = FgAbGroup(1, {Integer(6)});
  Homomorphism f(src, tgt, IntMatrix::from_rows({{1, 1}, {2, 0}}));
  auto ker = f.kernel();
  // (a,b) with a+b=0 and 2a = 0 mod 6 -> a in 3Z: generated by (3,-3)
  EXPECT_TRUE(ker.contains(std::vector<Integer>{Integer(3), Integer(-3)}));
  EXPECT_FALSE(ker.contains(std::vector<Integer>{Integer(1), Integer(-1)}));
  EXPECT_EQ(ker.isomorphism_type(), FgAbGroup::free(1));
  EXPECT_EQ(f.image().isomorphism_type(), FgAbGroup(1, {Integer(3)}));
  auto comp = f.compose(Homomorphism::identity(src));
  EXPECT_EQ(comp, f);
}

TEST(Subgroup, EqualityIsLatticeEquality) {
  auto g = FgAbGroup(1, {Integer(4)});
  Subgroup a(g, IntMatrix::from_rows({{2, 0}, {0, 2}}));
  Subgroup b(g, IntMatrix::from_rows({{2, 2}, {2, 0}}));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.isomorphism_type(), FgAbGroup(1, {Integer(2)}));
  EXPECT_TRUE(Subgroup::whole(g).contains(a));
  EXPECT_FALSE(a.contains(Subgroup::whole(g)));
}

TEST(Homomorphism, RestrictedIsomorphism) {
  auto z = FgAbGroup::free(1);
  Homomorphism twice(z, z, IntMatrix::from_rows({{2}}));
  EXPECT_TRUE(coarse::restricted_is_isomorphism(twice, Subgroup::whole(z), twice.image()));
  Homomorphism zero = Homomorphism::zero(z, z);
  EXPECT_FALSE(coarse::restricted_is_isomorphism(zero, Subgroup::whole(z), zero.image()));
}
