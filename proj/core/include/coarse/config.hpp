#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarse/metric.hpp"

namespace coarse {

/// Reads one table of a scenario config. Every read records the key and the value used
/// (the default when absent) so the normalized config can be echoed into reports; `finish`
/// rejects keys that were never read. Errors are ParseError naming the dotted key path.
class ConfigTable {
 public:
  ConfigTable(const nlohmann::json& table, std::string path);

  std::int64_t integer(const std::string& key, std::int64_t fallback, std::int64_t lo, std::int64_t hi);
  /// Accepts integers and multiples of 1/2 written as numbers or strings such as "3/2".
  HalfInt half(const std::string& key, HalfInt fallback, HalfInt lo, HalfInt hi);
  std::string text(const std::string& key, const std::string& fallback, const std::vector<std::string>& allowed = {});
  bool flag(const std::string& key, bool fallback);
  /// Nested table, owned by this one and finished with it; an absent key yields an empty table.
  ConfigTable& table(const std::string& key);
  /// Raw array for list-valued keys; the caller validates elements.
  nlohmann::json array(const std::string& key, const nlohmann::json& fallback);

  /// Throws ParseError on the first unread key, then returns the normalized table.
  nlohmann::json finish();
  const std::string& path() const { return path_; }

 private:
  const nlohmann::json* source_;
  nlohmann::json empty_ = nlohmann::json::object();
  std::string path_;
  nlohmann::json used_ = nlohmann::json::object();
  std::vector<std::pair<std::string, std::unique_ptr<ConfigTable>>> children_;
};

/// Parses JSON text (comments allowed); ParseError with the position on bad syntax.
nlohmann::json parse_config_text(const std::string& text);
nlohmann::json load_config_file(const std::string& path);

/// Stable 64-bit FNV-1a of a string, used for cache keys.
std::uint64_t fnv1a(const std::string& data);

}  // namespace coarse
