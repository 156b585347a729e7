#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarse {

inline constexpr int kReportSchemaVersion = 1;

struct RunOptions {
  /// Recorded in the timing block; every computation is sequential, so results never depend on it.
  unsigned threads = 1;
  bool use_cache = true;
  std::filesystem::path cache_dir = ".coarse-cache";
};

/// One expectation checked by a scenario, with the data it was decided from.
struct Verdict {
  enum class Status { Pass, Fail, Inconclusive };
  std::string name;
  nlohmann::json expected;
  nlohmann::json observed;
  Status status = Status::Inconclusive;
  std::string note;

  /// {name, expected, observed, pass: true | false | null, status, note?}
  nlohmann::json to_json() const;
};

std::string to_string(Verdict::Status s);

struct ScenarioReport {
  std::string scenario;
  /// The normalized config: every key with the value actually used.
  nlohmann::json inputs;
  nlohmann::json results = nlohmann::json::object();
  std::vector<Verdict> verdicts;
  /// CSV exports of inequality tables, by name.
  std::vector<std::pair<std::string, std::string>> tables;
  /// Wall-clock seconds per stage plus run settings; the only part that may differ between reruns.
  nlohmann::json timing = nlohmann::json::object();

  /// FAIL if any verdict fails, else INCONCLUSIVE if any is inconclusive, else PASS.
  Verdict::Status status() const;
  const Verdict* find(const std::string& name) const;
  nlohmann::json to_json(bool include_timing = true) const;
};

struct ScenarioInfo {
  std::string name;
  std::string summary;
};

std::vector<ScenarioInfo> list_scenarios();

/// Validates a config for the named scenario and returns it normalized, with every default
/// filled in. A "scenario" key, when present, must name the same scenario.
/// Throws ConfigError for unknown scenarios and ParseError for bad or unknown keys.
nlohmann::json check_config(const std::string& scenario, const nlohmann::json& config);

/// Runs a scenario. Module errors propagate as their own types with the scenario name prefixed.
ScenarioReport run_scenario(const std::string& scenario, const nlohmann::json& config, const RunOptions& options = {});

/// Names of the complexes `dump_complex` can write for this scenario and config.
std::vector<std::string> complex_names(const std::string& scenario, const nlohmann::json& config);

/// Builds one named complex (for example "nerve:2", "end:2" or "stage:3") and writes it in the
/// text format of SimplicialComplex::write_text. Throws ConfigError for unknown names.
void dump_complex(const std::string& scenario, const nlohmann::json& config, const std::string& which,
                  std::ostream& out, const RunOptions& options = {});

}  // namespace coarse
