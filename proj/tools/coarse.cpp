#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "coarse/config.hpp"
#include "coarse/errors.hpp"
#include "coarse/scenario.hpp"

namespace {

/// Exit codes, also listed in the README.
enum Exit : int { kPass = 0, kFail = 1, kUsage = 2, kInconclusive = 3, kModuleError = 4 };

nlohmann::json read_config(const std::string& path) {
  return path.empty() ? nlohmann::json::object() : coarse::load_config_file(path);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw coarse::ConfigError("cannot write " + path.string());
  out << text;
}

/// report.json plus report.<table>.csv next to it.
void write_report(const coarse::ScenarioReport& report, const std::filesystem::path& out) {
  write_file(out, report.to_json().dump(2) + "\n");
  for (const auto& [name, csv] : report.tables) {
    std::filesystem::path table = out;
    table.replace_extension("." + name + ".csv");
    write_file(table, csv);
  }
}

void print_summary(const coarse::ScenarioReport& report, std::ostream& os) {
  std::size_t width = 0;
  for (const auto& v : report.verdicts) width = std::max(width, v.name.size());
  for (const auto& v : report.verdicts) {
    os << "  " << v.name << std::string(width - v.name.size() + 2, ' ') << coarse::to_string(v.status);
    if (!v.note.empty()) os << "  (" << v.note << ")";
    os << "\n";
  }
  os << report.scenario << ": " << coarse::to_string(report.status()) << "\n";
}

int exit_for(coarse::Verdict::Status s) {
  switch (s) {
    case coarse::Verdict::Status::Pass:
      return kPass;
    case coarse::Verdict::Status::Fail:
      return kFail;
    case coarse::Verdict::Status::Inconclusive:
      break;
  }
  return kInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coarse: anti-Čech nerve towers, hyperbolicity and tower-limit experiments"};
  app.require_subcommand(1);

  std::string scenario, config_path, out_path, which, cache_dir = ".coarse-cache";
  unsigned threads = 1;
  bool no_cache = false, list_complexes = false;

  auto* run = app.add_subcommand("run", "run a scenario and report its verdicts");
  run->add_option("scenario", scenario, "scenario name (see list-scenarios)")->required();
  run->add_option("--config", config_path, "JSON config file; absent keys take their defaults")->check(CLI::ExistingFile);
  run->add_option("--out", out_path, "write the JSON report here, CSV tables alongside");
  run->add_option("--threads", threads, "worker bound, recorded in the timing block")->check(CLI::Range(1u, 1024u));
  run->add_flag("--no-cache", no_cache, "recompute every nerve instead of reading the cache");
  run->add_option("--cache-dir", cache_dir, "directory for cached nerves");

  auto* list = app.add_subcommand("list-scenarios", "print the scenario catalog");

  auto* dump = app.add_subcommand("dump-complex", "write one complex of a scenario in the text format");
  dump->add_option("scenario", scenario, "scenario name")->required();
  dump->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  dump->add_option("--which", which, "complex name, for example nerve:2 or stage:3");
  dump->add_option("--out", out_path, "output file (default: stdout)");
  dump->add_flag("--list", list_complexes, "list the complex names instead");
  dump->add_flag("--no-cache", no_cache, "ignore the nerve cache");
  dump->add_option("--cache-dir", cache_dir, "directory for cached nerves");

  auto* check = app.add_subcommand("check-config", "validate a config and print it with defaults filled in");
  check->add_option("scenario", scenario, "scenario name")->required();
  check->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  coarse::RunOptions options;
  options.threads = threads;
  options.use_cache = !no_cache;
  options.cache_dir = cache_dir;

  try {
    if (*list) {
      for (const auto& s : coarse::list_scenarios()) std::cout << s.name << "\t" << s.summary << "\n";
      return kPass;
    }
    const nlohmann::json config = read_config(config_path);
    if (*check) {
      std::cout << coarse::check_config(scenario, config).dump(2) << "\n";
      return kPass;
    }
    if (*dump) {
      if (list_complexes) {
        for (const auto& n : coarse::complex_names(scenario, config)) std::cout << n << "\n";
        return kPass;
      }
      if (which.empty()) throw coarse::ConfigError("dump-complex needs --which (or --list)");
      if (out_path.empty()) {
        coarse::dump_complex(scenario, config, which, std::cout, options);
      } else {
        std::ostringstream buf;
        coarse::dump_complex(scenario, config, which, buf, options);
        write_file(out_path, buf.str());
      }
      return kPass;
    }

    const coarse::ScenarioReport report = coarse::run_scenario(scenario, config, options);
    std::string target = out_path;
    if (target.empty()) target = report.inputs.value("output", std::string());
    if (!target.empty()) write_report(report, target);
    print_summary(report, std::cout);
    if (!target.empty()) std::cout << "report: " << target << "\n";
    return exit_for(report.status());
  } catch (const coarse::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const coarse::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const coarse::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kModuleError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kModuleError;
  }
}
