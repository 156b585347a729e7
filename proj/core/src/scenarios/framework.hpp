#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarse/abelian.hpp"
#include "coarse/config.hpp"
#include "coarse/homology.hpp"
#include "coarse/nerve.hpp"
#include "coarse/pipeline.hpp"
#include "coarse/scenario.hpp"

namespace coarse::scenarios {

/// Caps shared by every scenario; the defaults are documented in the README.
struct Caps {
  std::size_t points = 20000;
  std::size_t simplices = 5'000'000;
  std::size_t four_point = 600;
  std::size_t thin_triangle = 300;
};

/// Top-level keys common to every scenario.
struct CommonConfig {
  std::uint64_t seed = 1;
  Coefficients coefficients;
  Caps caps;
  std::string output;
};

/// State of one run: the report under construction, stage timers and the cache.
class Run {
 public:
  Run(ScenarioReport& report, const RunOptions& options, const CommonConfig& common);

  ScenarioReport& report() { return report_; }
  nlohmann::json& results() { return report_.results; }
  const CommonConfig& common() const { return common_; }
  const NerveCache* cache() const { return cache_ ? &*cache_ : nullptr; }

  /// Times `body` under a stage name in the timing block.
  template <class F>
  auto stage(const std::string& name, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    struct Record {
      Run* run;
      std::string name;
      std::chrono::steady_clock::time_point t0;
      ~Record() { run->record_stage(name, t0); }
    } record{this, name, t0};
    return body();
  }

  void verdict(std::string name, nlohmann::json expected, nlohmann::json observed, Verdict::Status status,
               std::string note = {});
  void check(std::string name, nlohmann::json expected, nlohmann::json observed, bool pass, std::string note = {});
  void note_cache_hits(std::size_t hits) { cache_hits_ += hits; }
  void finish();

 private:
  void record_stage(const std::string& name, std::chrono::steady_clock::time_point t0);

  ScenarioReport& report_;
  CommonConfig common_;
  std::optional<NerveCache> cache_;
  std::size_t cache_hits_ = 0;
  std::chrono::steady_clock::time_point start_;
};

class Scenario {
 public:
  virtual ~Scenario() = default;
  /// Reads the scenario-specific tables; every key is read here, before any work.
  virtual void configure(ConfigTable& root) = 0;
  virtual void run(Run& run) = 0;
  virtual std::vector<std::string> complexes() const { return {}; }
  virtual SimplicialComplex complex(const std::string& which, Run& run);
};

struct Entry {
  std::string name;
  std::string summary;
  std::function<std::unique_ptr<Scenario>()> make;
};

const std::vector<Entry>& registry();

// Factories, one per scenario source file.
std::unique_ptr<Scenario> make_zn_cohomology();
std::unique_ptr<Scenario> make_heisenberg_cohomology();
std::unique_ptr<Scenario> make_open_cone();
std::unique_ptr<Scenario> make_horoball_flasque();
std::unique_ptr<Scenario> make_relhyp_delta();
std::unique_ptr<Scenario> make_z2_delta();
std::unique_ptr<Scenario> make_boundary_projection();
std::unique_ptr<Scenario> make_mayer_vietoris();
std::unique_ptr<Scenario> make_sphere_blowup();
std::unique_ptr<Scenario> make_tower_limits();

// Helpers shared by scenario sources.

/// Levels from a list of {"C": c, "k": k} tables.
std::vector<ScaleLevel> read_levels(ConfigTable& table, const std::string& key, const std::vector<ScaleLevel>& fallback);
nlohmann::json levels_json(const std::vector<ScaleLevel>& levels);

/// The group R^r in the run's coefficients: Z^r, Q^r (reported as free) or (Z/p)^r.
FgAbGroup coefficient_power(const Coefficients& c, std::size_t r);
nlohmann::json group_json(const FgAbGroup& g);

/// Throws CapExceeded when a space would exceed the point cap.
void check_points(const Caps& caps, std::size_t points, const std::string& what);

/// Verdicts for a relative cohomology tower: cover certificates, resolution, the stabilized
/// image in each degree against `expected` (entries may be empty to skip a degree), lim¹,
/// and agreement of the two coarsening choices.
void tower_verdicts(Run& run, const NerveTower& tower, const std::vector<std::optional<FgAbGroup>>& expected);

}  // namespace coarse::scenarios
