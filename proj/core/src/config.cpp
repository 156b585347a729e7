#include "coarse/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

std::string dotted(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

HalfInt parse_half(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_integer()) return HalfInt(v.get<std::int64_t>());
  if (v.is_number_float()) {
    const double twice = v.get<double>() * 2;
    if (twice != static_cast<double>(static_cast<std::int64_t>(twice))) {
      throw ParseError(where + ": " + v.dump() + " is not a multiple of 1/2");
    }
    return HalfInt::from_twice(static_cast<std::int64_t>(twice));
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return HalfInt(std::stoll(s));
      if (s.substr(slash + 1) == "2") return HalfInt::from_twice(std::stoll(s.substr(0, slash)));
    } catch (const std::exception&) {
    }
    throw ParseError(where + ": cannot read \"" + s + "\" as a multiple of 1/2");
  }
  throw ParseError(where + ": expected a number");
}

}  // namespace

ConfigTable::ConfigTable(const nlohmann::json& table, std::string path) : source_(&table), path_(std::move(path)) {
  if (!table.is_object()) throw ParseError((path_.empty() ? "config" : path_) + ": expected a table");
}

std::int64_t ConfigTable::integer(const std::string& key, std::int64_t fallback, std::int64_t lo, std::int64_t hi) {
  std::int64_t v = fallback;
  if (source_->contains(key)) {
    const auto& raw = (*source_)[key];
    if (!raw.is_number_integer()) throw ParseError(dotted(path_, key) + ": expected an integer");
    v = raw.get<std::int64_t>();
  }
  if (v < lo || v > hi) {
    throw ParseError(dotted(path_, key) + " = " + std::to_string(v) + " is outside [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  }
  used_[key] = v;
  return v;
}

HalfInt ConfigTable::half(const std::string& key, HalfInt fallback, HalfInt lo, HalfInt hi) {
  const HalfInt v = source_->contains(key) ? parse_half((*source_)[key], dotted(path_, key)) : fallback;
  if (v < lo || v > hi) {
    throw ParseError(dotted(path_, key) + " = " + v.str() + " is outside [" + lo.str() + ", " + hi.str() + "]");
  }
  used_[key] = v.to_json();
  return v;
}

std::string ConfigTable::text(const std::string& key, const std::string& fallback,
                              const std::vector<std::string>& allowed) {
  std::string v = fallback;
  if (source_->contains(key)) {
    if (!(*source_)[key].is_string()) throw ParseError(dotted(path_, key) + ": expected a string");
    v = (*source_)[key].get<std::string>();
  }
  if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw ParseError(dotted(path_, key) + " = \"" + v + "\" is not one of: " + list);
  }
  used_[key] = v;
  return v;
}

bool ConfigTable::flag(const std::string& key, bool fallback) {
  bool v = fallback;
  if (source_->contains(key)) {
    if (!(*source_)[key].is_boolean()) throw ParseError(dotted(path_, key) + ": expected true or false");
    v = (*source_)[key].get<bool>();
  }
  used_[key] = v;
  return v;
}

ConfigTable& ConfigTable::table(const std::string& key) {
  for (auto& [k, child] : children_)
    if (k == key) return *child;
  const nlohmann::json& sub = source_->contains(key) ? (*source_)[key] : empty_;
  children_.emplace_back(key, std::make_unique<ConfigTable>(sub, dotted(path_, key)));
  return *children_.back().second;
}

nlohmann::json ConfigTable::array(const std::string& key, const nlohmann::json& fallback) {
  nlohmann::json v = fallback;
  if (source_->contains(key)) {
    if (!(*source_)[key].is_array()) throw ParseError(dotted(path_, key) + ": expected a list");
    v = (*source_)[key];
  }
  used_[key] = v;
  return v;
}

nlohmann::json ConfigTable::finish() {
  nlohmann::json out = used_;
  for (auto& [k, child] : children_) out[k] = child->finish();
  for (const auto& item : source_->items()) {
    if (!out.contains(item.key())) throw ParseError("unknown config key \"" + dotted(path_, item.key()) + "\"");
  }
  return out;
}

nlohmann::json parse_config_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
}

nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace coarse
