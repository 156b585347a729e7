#include <gtest/gtest.h>

#include <sstream>

#include "coarse/errors.hpp"
#include "coarse/scenario.hpp"
#include "coarse/simplicial.hpp"

using nlohmann::json;

namespace {

coarse::RunOptions no_cache() {
  coarse::RunOptions o;
  o.use_cache = false;
  return o;
}

}  // namespace

TEST(Scenarios, CatalogHasEveryScenario) {
  std::vector<std::string> names;
  for (const auto& s : coarse::list_scenarios()) names.push_back(s.name);
  const std::vector<std::string> expected{"zn-cohomology",    "heisenberg-cohomology", "open-cone-transgression",
                                          "horoball-flasque", "relhyp-delta",          "z2-delta",
                                          "boundary-projection", "mayer-vietoris",      "sphere-blowup",
                                          "tower-limits"};
  EXPECT_EQ(names, expected);
}

TEST(Scenarios, CheckConfigFillsDefaultsForEveryScenario) {
  for (const auto& s : coarse::list_scenarios()) {
    const json normalized = coarse::check_config(s.name, json::object());
    EXPECT_EQ(normalized["scenario"], s.name);
    EXPECT_EQ(normalized["coefficients"], "Z");
    EXPECT_TRUE(normalized.contains("caps")) << s.name;
    // The normalized config is itself a valid config with the same normal form.
    EXPECT_EQ(coarse::check_config(s.name, normalized), normalized) << s.name;
  }
}

TEST(Scenarios, ConfigErrors) {
  EXPECT_THROW(coarse::check_config("no-such-scenario", json::object()), coarse::ConfigError);
  EXPECT_THROW(coarse::check_config("zn-cohomology", json::parse(R"({"space": {"n": 2, "N": 3}})")),
               coarse::ParseError);
  EXPECT_THROW(coarse::check_config("zn-cohomology", json::parse(R"({"scenario": "z2-delta"})")), coarse::ParseError);
  EXPECT_THROW(coarse::check_config("zn-cohomology", json::parse(R"({"caps": {"points": 100000}})")),
               coarse::ParseError);
  EXPECT_THROW(coarse::check_config("zn-cohomology", json::parse(R"({"coefficients": "Z/4"})")), coarse::ParseError);
  EXPECT_THROW(coarse::check_config("zn-cohomology", json::parse(R"({"tower": {"levels": []}})")), coarse::ParseError);
  EXPECT_THROW(coarse::check_config("zn-cohomology", json::parse(R"({"tower": {"levels": [{"C": 1, "q": 2}]}})")),
               coarse::ParseError);
}

TEST(Scenarios, CapsAreErrorsWithTheScenarioName) {
  try {
    coarse::run_scenario("zn-cohomology", json::parse(R"({"caps": {"points": 100}})"), no_cache());
    FAIL() << "expected a cap error";
  } catch (const coarse::BallTooLarge& e) {
    EXPECT_NE(std::string(e.what()).find("scenario zn-cohomology"), std::string::npos) << e.what();
  }
}

TEST(Scenarios, ReportsAreDeterministicApartFromTiming) {
  for (const std::string name : {"sphere-blowup", "tower-limits", "z2-delta"}) {
    const auto a = coarse::run_scenario(name, json::object(), no_cache());
    const auto b = coarse::run_scenario(name, json::object(), no_cache());
    EXPECT_EQ(a.to_json(false).dump(), b.to_json(false).dump()) << name;
    EXPECT_EQ(a.to_json()["schema_version"], coarse::kReportSchemaVersion);
    EXPECT_TRUE(a.to_json().contains("timing"));
  }
}

TEST(Scenarios, CacheDoesNotChangeTheReport) {
  coarse::RunOptions cached;
  cached.cache_dir = std::filesystem::temp_directory_path() / ("coarse-scenario-cache-" + std::to_string(::getpid()));
  std::filesystem::remove_all(cached.cache_dir);
  const json config = json::parse(R"({"space": {"n": 1, "T": 64}})");
  const auto plain = coarse::run_scenario("zn-cohomology", config, no_cache());
  const auto cold = coarse::run_scenario("zn-cohomology", config, cached);
  const auto warm = coarse::run_scenario("zn-cohomology", config, cached);
  EXPECT_EQ(plain.to_json(false), cold.to_json(false));
  EXPECT_EQ(plain.to_json(false), warm.to_json(false));
  EXPECT_GT(warm.timing["cache"]["hits"].get<int>(), 0);
  std::filesystem::remove_all(cached.cache_dir);
}

TEST(Scenarios, VerdictsCarryTheirEvidence) {
  const auto r = coarse::run_scenario("sphere-blowup", json::object(), no_cache());
  ASSERT_FALSE(r.verdicts.empty());
  for (const auto& v : r.verdicts) {
    const json j = v.to_json();
    EXPECT_FALSE(j["observed"].is_null()) << v.name;
    EXPECT_FALSE(j["expected"].is_null()) << v.name;
    EXPECT_TRUE(j["pass"].is_boolean() || v.status == coarse::Verdict::Status::Inconclusive);
  }
  EXPECT_EQ(r.status(), coarse::Verdict::Status::Pass);
}

TEST(Scenarios, ZOneLineHasCompactlySupportedClassInDegreeOne) {
  const auto r = coarse::run_scenario("zn-cohomology", json::parse(R"({"space": {"n": 1, "T": 64}})"), no_cache());
  EXPECT_EQ(r.status(), coarse::Verdict::Status::Pass) << r.to_json(false).dump(2);
  ASSERT_NE(r.find("H^1 stabilized image"), nullptr);
  EXPECT_EQ(r.find("H^1 stabilized image")->status, coarse::Verdict::Status::Pass);
}

TEST(Scenarios, DumpComplexWritesReadableText) {
  const auto names = coarse::complex_names("sphere-blowup", json::object());
  ASSERT_FALSE(names.empty());
  std::ostringstream out;
  coarse::dump_complex("sphere-blowup", json::object(), "stage:2", out, no_cache());
  std::istringstream in(out.str());
  const auto k = coarse::SimplicialComplex::read_text(in);
  EXPECT_EQ(k.euler_characteristic(), 0);
  std::ostringstream ignored;
  EXPECT_THROW(coarse::dump_complex("sphere-blowup", json::object(), "stage:99", ignored, no_cache()),
               coarse::ConfigError);
  std::ostringstream nerve;
  coarse::dump_complex("mayer-vietoris", json::object(), "line:overlap", nerve, no_cache());
  EXPECT_FALSE(nerve.str().empty());
}
