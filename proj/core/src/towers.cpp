#include "coarse/towers.hpp"

#include <algorithm>
#include <stdexcept>

#include "coarse/errors.hpp"

namespace coarse {

Tower::Tower(std::vector<FgAbGroup> g, std::vector<Homomorphism> m) : groups(std::move(g)), maps(std::move(m)) {
  if (groups.size() < 3) throw std::invalid_argument("tower window must have at least 3 levels");
  if (maps.size() + 1 != groups.size()) throw std::invalid_argument("tower needs one map per consecutive pair");
  for (std::size_t k = 0; k < maps.size(); ++k) {
    if (!(maps[k].source() == groups[k + 1]) || !(maps[k].target() == groups[k])) {
      throw std::invalid_argument("tower map " + std::to_string(k + 1) + " does not run A_" + std::to_string(k + 2) +
                                  " -> A_" + std::to_string(k + 1));
    }
  }
}

Tower Tower::constant(const FgAbGroup& g, std::size_t m) {
  return Tower(std::vector<FgAbGroup>(m, g),
               std::vector<Homomorphism>(m == 0 ? 0 : m - 1, Homomorphism::identity(g)));
}

Homomorphism Tower::composite(std::size_t k, std::size_t j) const {
  Homomorphism f = Homomorphism::identity(groups[k]);
  for (std::size_t i = 0; i < j; ++i) f = f.compose(maps[k + i]);
  return f;
}

std::vector<LevelImages> stabilized_image(const Tower& tower) {
  const std::size_t m = tower.window();
  std::vector<LevelImages> out;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    LevelImages li;
    li.level = k;
    Homomorphism f = tower.maps[k];
    li.chain.push_back(f.image());
    for (std::size_t i = k + 1; i + 1 < m; ++i) {
      f = f.compose(tower.maps[i]);
      li.chain.push_back(f.image());
    }
    for (std::size_t i = 0; i + 1 < li.chain.size(); ++i) {
      if (!(li.chain[i + 1] == li.chain[i])) li.strict_drops.push_back(i);
    }
    if (li.determinable()) {
      std::size_t start = li.chain.size() - 1;
      while (start > 0 && li.chain[start - 1] == li.chain.back()) --start;
      if (start + 1 < li.chain.size()) li.stabilized_at = start + 1;
    }
    out.push_back(std::move(li));
  }
  return out;
}

TowerLimits limits(const Tower& tower) {
  TowerLimits t;
  t.window = tower.window();
  t.levels = stabilized_image(tower);

  std::size_t determinable = 0;
  bool all_stable = true;
  for (const auto& li : t.levels) {
    if (!li.determinable()) continue;
    ++determinable;
    all_stable = all_stable && li.stabilized_at.has_value();
  }
  all_stable = all_stable && determinable > 0;

  if (all_stable) {
    t.lim1 = TowerLimits::Lim1::ZeroMl;
    if (determinable >= 2) {
      // Stabilized images S_k; maps[k] sends S_{k+1} onto S_k. Walk back from the last pair.
      std::optional<std::size_t> from;
      for (std::size_t k = determinable - 1; k-- > 0;) {
        if (!restricted_is_isomorphism(tower.maps[k], t.levels[k + 1].eventual(), t.levels[k].eventual())) break;
        from = k;
      }
      if (from) {
        t.lim = TowerLimits::Lim::Stable;
        t.lim_level = *from;
        t.lim_group = t.levels[*from].eventual().isomorphism_type();
      }
    }
    return t;
  }

  // Descending chains of finite groups always stabilize, so towers of finite groups are
  // Mittag-Leffler even when the window is too short to show it.
  if (std::all_of(tower.groups.begin(), tower.groups.end(), [](const FgAbGroup& g) { return g.rank() == 0; })) {
    t.lim1 = TowerLimits::Lim1::ZeroMl;
    return t;
  }
  for (const auto& li : t.levels) {
    if (!li.determinable() || li.strict_drops.size() + 1 != li.chain.size()) continue;
    if (li.chain.back().isomorphism_type().rank() == 0) continue;
    std::vector<FgAbGroup> quotients;
    bool finite = true;
    for (std::size_t i = 0; i + 1 < li.chain.size() && finite; ++i) {
      quotients.push_back(quotient_type(li.chain[i], li.chain[i + 1]));
      finite = quotients.back().rank() == 0;
    }
    if (!finite) continue;
    t.lim1 = TowerLimits::Lim1::NonzeroWitness;
    t.witness_level = li.level;
    for (const auto& s : li.chain) t.witness_chain.push_back(s.isomorphism_type());
    t.witness_quotients = std::move(quotients);
    break;
  }
  return t;
}

std::string TowerLimits::lim_str() const {
  switch (lim) {
    case Lim::Stable:
      return "STABLE(" + lim_group->str() + ")";
    case Lim::NotFg:
      return "NOT_FG";
    case Lim::Inconclusive:
      break;
  }
  return "INCONCLUSIVE";
}

std::string TowerLimits::lim1_str() const {
  switch (lim1) {
    case Lim1::ZeroMl:
      return "ZERO_ML";
    case Lim1::NonzeroWitness:
      return "NONZERO_WITNESS";
    case Lim1::Inconclusive:
      break;
  }
  return "INCONCLUSIVE";
}

nlohmann::json TowerLimits::to_json() const {
  nlohmann::json lv = nlohmann::json::array();
  for (const auto& li : levels) {
    nlohmann::json chain = nlohmann::json::array();
    for (const auto& s : li.chain) chain.push_back(s.isomorphism_type().str());
    nlohmann::json entry{{"level", li.level + 1},
                         {"group", li.chain.front().ambient().str()},
                         {"image", li.eventual().isomorphism_type().str()},
                         {"chain", std::move(chain)},
                         {"determinable", li.determinable()}};
    entry["stab_level"] = li.stabilized_at ? nlohmann::json(*li.stabilized_at) : nlohmann::json(nullptr);
    lv.push_back(std::move(entry));
  }
  nlohmann::json j{{"levels", std::move(lv)}, {"lim", lim_str()}, {"lim1", lim1_str()}, {"window", window}};
  if (lim_level) j["lim_level"] = *lim_level + 1;
  if (witness_level) {
    nlohmann::json chain = nlohmann::json::array(), quot = nlohmann::json::array();
    for (const auto& g : witness_chain) chain.push_back(g.str());
    for (const auto& g : witness_quotients) quot.push_back(g.str());
    j["lim1_witness"] = {{"level", *witness_level + 1}, {"chain", chain}, {"quotients", quot}};
  }
  return j;
}

DirectedSystem::DirectedSystem(std::vector<FgAbGroup> g, std::vector<Homomorphism> m)
    : groups(std::move(g)), maps(std::move(m)) {
  if (groups.size() < 3) throw std::invalid_argument("directed system window must have at least 3 stages");
  if (maps.size() + 1 != groups.size()) throw std::invalid_argument("directed system needs one map per step");
  for (std::size_t k = 0; k < maps.size(); ++k) {
    if (!(maps[k].source() == groups[k]) || !(maps[k].target() == groups[k + 1])) {
      throw std::invalid_argument("directed system map " + std::to_string(k + 1) + " has the wrong ends");
    }
  }
}

ColimResult colim(const DirectedSystem& system) {
  ColimResult r;
  r.window = system.window();
  r.stages = system.groups;
  std::size_t from = system.maps.size();
  while (from > 0 && system.maps[from - 1].is_isomorphism()) --from;
  if (system.maps.size() - from >= 2) {
    r.status = ColimResult::Status::Stable;
    r.stable_from = from;
    r.group = system.groups[from];
    return r;
  }
  bool growing = true;
  for (std::size_t k = 0; k < system.maps.size() && growing; ++k)
    growing = system.groups[k + 1].rank() > system.groups[k].rank() && system.maps[k].is_injective();
  if (growing) r.status = ColimResult::Status::Growing;
  return r;
}

std::string ColimResult::str() const {
  switch (status) {
    case Status::Stable:
      return "STABLE(" + group->str() + ")";
    case Status::Growing:
      return "GROWING";
    case Status::Inconclusive:
      break;
  }
  return "INCONCLUSIVE";
}

nlohmann::json ColimResult::to_json() const {
  nlohmann::json st = nlohmann::json::array();
  for (const auto& g : stages) st.push_back(g.str());
  nlohmann::json j{{"colim", str()}, {"window", window}, {"stages", std::move(st)}};
  if (stable_from) j["stable_from"] = *stable_from + 1;
  return j;
}

MilnorReport milnor_check(const Tower& tower, const Homomorphism& to_level, std::size_t level) {
  const TowerLimits lim = limits(tower);
  if (lim.lim != TowerLimits::Lim::Stable || lim.lim1 != TowerLimits::Lim1::ZeroMl) {
    throw UnstableTower("tower limits are " + lim.lim_str() + " / " + lim.lim1_str() + " over a window of " +
                        std::to_string(lim.window));
  }
  if (level < *lim.lim_level || level >= lim.levels.size() || !lim.levels[level].stabilized_at) {
    throw UnstableTower("level " + std::to_string(level + 1) + " is outside the stable range");
  }
  if (!(to_level.target() == tower.groups[level])) throw ShapeMismatch("comparison map does not land in the level");
  const Subgroup& s = lim.levels[level].eventual();
  MilnorReport r;
  r.level = level;
  r.total = to_level.source();
  r.lim = s.isomorphism_type();
  r.kernel = to_level.kernel().isomorphism_type();
  const Subgroup image = to_level.image();
  r.image_inside = s.contains(image);
  if (r.image_inside) r.cokernel = quotient_type(s, image);
  r.pass = r.image_inside && r.kernel.is_trivial() && r.cokernel.is_trivial();
  return r;
}

nlohmann::json MilnorReport::to_json() const {
  nlohmann::json j{{"result", pass ? "PASS" : "FAIL"}, {"level", level + 1},  {"total", total.str()},
                   {"lim", lim.str()},                 {"lim1", "0"},         {"kernel", kernel.str()},
                   {"image_inside_lim", image_inside}};
  if (image_inside) j["cokernel"] = cokernel.str();
  return j;
}

}  // namespace coarse
