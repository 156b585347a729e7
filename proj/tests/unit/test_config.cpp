#include <gtest/gtest.h>

#include "coarse/config.hpp"
#include "coarse/errors.hpp"

using coarse::ConfigTable;
using coarse::HalfInt;
using coarse::ParseError;
using nlohmann::json;

TEST(Config, DefaultsAreRecordedInTheNormalizedTable) {
  const json src = json::object();
  ConfigTable t(src, "");
  EXPECT_EQ(t.integer("n", 2, 1, 3), 2);
  EXPECT_EQ(t.text("mode", "fast", {"fast", "slow"}), "fast");
  EXPECT_TRUE(t.flag("check", true));
  EXPECT_EQ(t.half("C", HalfInt::from_twice(3), HalfInt(0), HalfInt(10)), HalfInt::from_twice(3));
  t.table("space").integer("T", 64, 1, 200);
  const json out = t.finish();
  EXPECT_EQ(out["n"], 2);
  EXPECT_EQ(out["mode"], "fast");
  EXPECT_EQ(out["check"], true);
  EXPECT_EQ(out["C"], 1.5);
  EXPECT_EQ(out["space"]["T"], 64);
}

TEST(Config, UnknownKeysAreRejectedWithTheirPath) {
  const json src = json::parse(R"({"n": 2, "space": {"T": 8, "typo": 1}})");
  ConfigTable t(src, "");
  t.integer("n", 1, 0, 10);
  t.table("space").integer("T", 1, 0, 100);
  try {
    t.finish();
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("space.typo"), std::string::npos) << e.what();
  }

  const json top = json::parse(R"({"n": 2, "extra": true})");
  ConfigTable u(top, "");
  u.integer("n", 1, 0, 10);
  EXPECT_THROW(u.finish(), ParseError);
}

TEST(Config, ValuesOutsideTheirRangeOrTypeAreRejected) {
  const json src = json::parse(R"({"n": 9, "s": 3, "b": "yes", "h": 1.25, "l": 4})");
  ConfigTable t(src, "root");
  EXPECT_THROW(t.integer("n", 1, 0, 5), ParseError);
  EXPECT_THROW(t.text("s", "x"), ParseError);
  EXPECT_THROW(t.flag("b", false), ParseError);
  EXPECT_THROW(t.half("h", HalfInt(1), HalfInt(0), HalfInt(4)), ParseError);
  EXPECT_THROW(t.array("l", json::array()), ParseError);
  const json words = json::parse(R"({"mode": "medium"})");
  ConfigTable w(words, "");
  EXPECT_THROW(w.text("mode", "fast", {"fast", "slow"}), ParseError);
}

TEST(Config, HalvesAcceptNumbersAndFractions) {
  const json src = json::parse(R"({"a": "3/2", "b": 2.5, "c": 4, "d": "7"})");
  ConfigTable t(src, "");
  const HalfInt lo(0), hi(100);
  EXPECT_EQ(t.half("a", HalfInt(0), lo, hi), HalfInt::from_twice(3));
  EXPECT_EQ(t.half("b", HalfInt(0), lo, hi), HalfInt::from_twice(5));
  EXPECT_EQ(t.half("c", HalfInt(0), lo, hi), HalfInt(4));
  EXPECT_EQ(t.half("d", HalfInt(0), lo, hi), HalfInt(7));
  const json bad = json::parse(R"({"a": "5/3"})");
  ConfigTable u(bad, "");
  EXPECT_THROW(u.half("a", HalfInt(0), lo, hi), ParseError);
}

TEST(Config, TextAllowsCommentsAndReportsSyntaxErrors) {
  const json j = coarse::parse_config_text("// levels\n{\"n\": 2 /* lattice rank */}");
  EXPECT_EQ(j["n"], 2);
  EXPECT_THROW(coarse::parse_config_text("{\"n\": }"), ParseError);
  EXPECT_THROW(coarse::load_config_file("/nonexistent/config.json"), ParseError);
}

TEST(Config, NonTableSectionsAreRejected) {
  const json src = json::parse(R"({"space": 3})");
  ConfigTable t(src, "");
  EXPECT_THROW(t.table("space"), ParseError);
}

TEST(Config, Fnv1aMatchesPublishedVectors) {
  EXPECT_EQ(coarse::fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(coarse::fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(coarse::fnv1a("foobar"), 0x85944171f73967e8ULL);
}
