#include "coarse/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "coarse/config.hpp"

namespace coarse {

namespace {

constexpr const char* kNerveFormat = "nerve-v1";

std::string cache_key(const NerveTowerOptions& o, const ScaleLevel& s) {
  const std::string text = std::string(kNerveFormat) + "|" + o.space_key + "|C2=" + std::to_string(s.c.twice()) +
                           "|k=" + std::to_string(s.k) + "|cap=" + std::to_string(o.top_degree + 1);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
  return buf;
}

}  // namespace

std::optional<SimplicialComplex> NerveCache::load(const std::string& key) const {
  std::ifstream in(dir_ / (key + ".nerve"));
  if (!in) return std::nullopt;
  try {
    return SimplicialComplex::read_text(in);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void NerveCache::store(const std::string& key, const SimplicialComplex& k) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return;
  const auto tmp = dir_ / (key + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) return;
    k.write_text(out);
    if (!out) return;
  }
  std::filesystem::rename(tmp, dir_ / (key + ".nerve"), ec);
}

bool NerveTower::resolved() const {
  for (const auto& l : levels)
    if (!l.resolved) return false;
  return true;
}

Tower NerveTower::tower(int q) const {
  std::vector<FgAbGroup> g;
  for (const auto& p : pairs) g.push_back(p.group(q));
  return Tower(std::move(g), induced[static_cast<std::size_t>(q)]);
}

std::vector<TowerLimits> NerveTower::limits() const {
  std::vector<TowerLimits> out;
  if (levels.size() < 3) return out;
  for (int q = 0; q <= options.top_degree; ++q) out.push_back(coarse::limits(tower(q)));
  return out;
}

NerveTower nerve_cohomology_tower(const FiniteMetricSpace& space, const NerveTowerOptions& options) {
  NerveTower t;
  t.options = options;
  t.options.cache = nullptr;
  const int cap = options.top_degree + 1;
  const AntiCechSystem sys = anti_cech_system(space, options.levels);
  const bool caching = options.cache != nullptr && !options.space_key.empty();

  for (std::size_t j = 0; j < sys.covers.size(); ++j) {
    NerveLevel level;
    level.scale = sys.levels[j];
    level.cover = sys.covers[j];
    level.resolved = level.cover.diameter_bound <= options.core_radius;
    std::optional<SimplicialComplex> cached;
    std::string key;
    if (caching) {
      key = cache_key(options, level.scale);
      cached = options.cache->load(key);
      if (cached && (cached->vertex_count() != level.cover.size() || cached->dimension_cap() != cap)) cached.reset();
    }
    if (cached) {
      level.nerve = std::move(*cached);
      level.from_cache = true;
    } else {
      level.nerve = nerve_complex(level.cover, cap, options.simplex_cap);
      if (caching) options.cache->store(key, level.nerve);
    }
    level.end = end_subcomplex(level.cover, level.nerve, space, options.core_radius, options.basepoint);

    HomologyComputation::Options ho;
    ho.coefficients = options.coefficients;
    ho.max_degree = options.top_degree;
    ho.sub = &level.end;
    t.pairs.emplace_back(level.nerve, ho);
    t.levels.push_back(std::move(level));
  }

  t.maps = sys.maps;
  t.induced.resize(static_cast<std::size_t>(options.top_degree) + 1);
  for (std::size_t j = 0; j < t.maps.size(); ++j) {
    for (int q = 0; q <= options.top_degree; ++q)
      t.induced[static_cast<std::size_t>(q)].push_back(induced_map(t.maps[j], t.pairs[j], t.pairs[j + 1], q));
    if (!options.check_alternatives) continue;
    AlternativeCheck check;
    check.level = j;
    const SimplicialMap other = coarsening_map_last(t.levels[j].cover, t.levels[j + 1].cover);
    check.differ = !(other == t.maps[j]);
    check.contiguous = contiguous_through_cover(t.maps[j], other, t.levels[j].nerve, t.levels[j + 1].cover);
    for (int q = 0; q <= options.top_degree; ++q) {
      if (!check.differ) {
        check.identical.push_back(true);
        continue;
      }
      check.identical.push_back(induced_map(other, t.pairs[j], t.pairs[j + 1], q) ==
                                t.induced[static_cast<std::size_t>(q)][j]);
    }
    t.alternatives.push_back(std::move(check));
  }
  return t;
}

nlohmann::json NerveTower::to_json() const {
  nlohmann::json lv = nlohmann::json::array();
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const auto& l = levels[j];
    std::vector<FgAbGroup> groups;
    for (int q = 0; q <= options.top_degree; ++q) groups.push_back(pairs[j].group(q));
    nlohmann::json sizes = nlohmann::json::array();
    for (int d = 0; d <= l.nerve.dimension(); ++d) sizes.push_back(l.nerve.count(d));
    lv.push_back({{"level", j + 1},
                  {"C", l.scale.c.to_json()},
                  {"k", l.scale.k},
                  {"cover", l.cover.to_json()},
                  {"nerve_simplices", std::move(sizes)},
                  {"end_simplices", l.end.total_count()},
                  {"resolved", l.resolved},
                  {"cohomology", groups_to_json(groups)}});
  }
  nlohmann::json alt = nlohmann::json::array();
  for (const auto& a : alternatives)
    alt.push_back({{"level", a.level + 1}, {"differ", a.differ}, {"contiguous", a.contiguous}, {"identical", a.identical}});
  nlohmann::json lims = nlohmann::json::array();
  const auto lim = limits();
  for (std::size_t q = 0; q < lim.size(); ++q) {
    auto j = lim[q].to_json();
    j["degree"] = q;
    lims.push_back(std::move(j));
  }
  return {{"levels", std::move(lv)},
          {"core_radius", options.core_radius.to_json()},
          {"basepoint", options.basepoint},
          {"top_degree", options.top_degree},
          {"resolved", resolved()},
          {"coarsening_alternatives", std::move(alt)},
          {"limits", std::move(lims)}};
}

}  // namespace coarse
