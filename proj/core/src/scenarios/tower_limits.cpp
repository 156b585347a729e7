#include "coarse/errors.hpp"
#include "coarse/models.hpp"
#include "coarse/towers.hpp"
#include "scenarios/framework.hpp"

namespace coarse::scenarios {

namespace {

Homomorphism scalar(const FgAbGroup& g, std::int64_t c) {
  IntMatrix m(g.generator_count(), g.generator_count());
  for (std::size_t i = 0; i < g.generator_count(); ++i) m(i, i) = Integer(c);
  return Homomorphism(g, g, m);
}

/// Z^(r+1) -> Z^r forgetting the last coordinate, or Z^r -> Z^(r+1) adding a zero one.
Homomorphism projection(std::size_t r) {
  IntMatrix m(r, r + 1);
  for (std::size_t i = 0; i < r; ++i) m(i, i) = Integer(1);
  return Homomorphism(FgAbGroup::free(r + 1), FgAbGroup::free(r), m);
}
Homomorphism inclusion(std::size_t r) {
  IntMatrix m(r + 1, r);
  for (std::size_t i = 0; i < r; ++i) m(i, i) = Integer(1);
  return Homomorphism(FgAbGroup::free(r), FgAbGroup::free(r + 1), m);
}

/// Z/2^(k+1) <- Z/2^(k+2) <- ... by reduction.
Tower cyclic_reductions(std::size_t m) {
  std::vector<FgAbGroup> g;
  std::vector<Homomorphism> maps;
  for (std::size_t k = 0; k < m; ++k) g.push_back(FgAbGroup::cyclic(Integer(std::int64_t{4} << k)));
  for (std::size_t k = 0; k + 1 < m; ++k) {
    IntMatrix one(1, 1);
    one(0, 0) = Integer(1);
    maps.emplace_back(g[k + 1], g[k], one);
  }
  return Tower(std::move(g), std::move(maps));
}

class TowerLimitsScenario : public Scenario {
 public:
  void configure(ConfigTable& root) override {
    window_ = static_cast<std::size_t>(root.table("towers").integer("window", 5, 3, 12));
    ConfigTable& p = root.table("pipeline");
    cycle_ = static_cast<std::size_t>(p.integer("cycle_points", 48, 3, 2000));
    levels_ = read_levels(p, "levels", {{HalfInt(1), 1}, {HalfInt(2), 1}, {HalfInt(4), 1}});
    core_ = p.half("core_radius", HalfInt(16), HalfInt::from_twice(1), HalfInt(1 << 12));
    top_degree_ = static_cast<int>(p.integer("top_degree", 2, 0, 3));
  }

  void run(Run& run) override {
    const FgAbGroup z = FgAbGroup::free(1);
    nlohmann::json towers = nlohmann::json::object();
    auto report = [&](const std::string& name, const Tower& t, TowerLimits::Lim1 want_lim1,
                      std::optional<std::string> want_lim) {
      const TowerLimits l = limits(t);
      towers[name] = l.to_json();
      nlohmann::json expected{{"lim1", want_lim1 == TowerLimits::Lim1::ZeroMl ? "ZERO_ML" : "NONZERO_WITNESS"}};
      bool ok = l.lim1 == want_lim1;
      if (want_lim) {
        expected["lim"] = *want_lim;
        ok = ok && l.lim_str() == *want_lim;
      }
      run.check(name, expected, {{"lim", l.lim_str()}, {"lim1", l.lim1_str()}}, ok);
    };

    run.stage("towers", [&] {
      report("constant Z tower", Tower::constant(z, window_), TowerLimits::Lim1::ZeroMl, "STABLE(Z)");
      report("doubling tower", Tower(std::vector<FgAbGroup>(window_, z), std::vector<Homomorphism>(window_ - 1, scalar(z, 2))),
             TowerLimits::Lim1::NonzeroWitness, "INCONCLUSIVE");
      std::vector<FgAbGroup> g;
      std::vector<Homomorphism> maps;
      for (std::size_t k = 0; k < window_; ++k) g.push_back(FgAbGroup::free(k + 1));
      for (std::size_t k = 0; k + 1 < window_; ++k) maps.push_back(projection(k + 1));
      report("surjective free tower", Tower(std::move(g), std::move(maps)), TowerLimits::Lim1::ZeroMl, std::nullopt);
      report("surjective cyclic tower", cyclic_reductions(window_), TowerLimits::Lim1::ZeroMl, std::nullopt);
      return 0;
    });

    nlohmann::json systems = nlohmann::json::object();
    run.stage("directed systems", [&] {
      const ColimResult stable = colim(DirectedSystem(std::vector<FgAbGroup>(window_, z),
                                                      std::vector<Homomorphism>(window_ - 1, Homomorphism::identity(z))));
      systems["identities"] = stable.to_json();
      run.check("colimit of identities", "STABLE(Z)", stable.str(), stable.str() == "STABLE(Z)");
      std::vector<FgAbGroup> g;
      std::vector<Homomorphism> maps;
      for (std::size_t k = 0; k < window_; ++k) g.push_back(FgAbGroup::free(k + 1));
      for (std::size_t k = 0; k + 1 < window_; ++k) maps.push_back(inclusion(k + 1));
      const ColimResult growing = colim(DirectedSystem(std::move(g), std::move(maps)));
      systems["inclusions"] = growing.to_json();
      run.check("colimit of inclusions", "GROWING", growing.str(), growing.status == ColimResult::Status::Growing);
      return 0;
    });

    nlohmann::json milnor = nlohmann::json::object();
    run.stage("milnor", [&] {
      const Tower t = Tower::constant(z, window_);
      const MilnorReport pass = milnor_check(t, Homomorphism::identity(z), 0);
      const MilnorReport fail = milnor_check(t, scalar(z, 3), 0);
      milnor["identity"] = pass.to_json();
      milnor["times_three"] = fail.to_json();
      run.check("Milnor sequence with an isomorphism", "PASS", milnor["identity"], pass.pass);
      run.check("Milnor sequence detects a cokernel", "FAIL with cokernel Z/3", milnor["times_three"],
                !fail.pass && fail.cokernel == FgAbGroup::cyclic(Integer(3)));
      return 0;
    });

    run.results()["towers"] = towers;
    run.results()["directed_systems"] = systems;
    run.results()["milnor"] = milnor;

    check_points(run.common().caps, cycle_, "the cycle");
    const FiniteMetricSpace space = cycle_graph(cycle_).metric();
    NerveTowerOptions o;
    o.levels = levels_;
    o.top_degree = top_degree_;
    o.core_radius = core_;
    o.basepoint = 0;
    o.simplex_cap = run.common().caps.simplices;
    o.coefficients = run.common().coefficients;
    o.check_alternatives = true;
    o.space_key = "cycle:" + std::to_string(cycle_) + "|" + o.coefficients.str();
    o.cache = run.cache();
    const NerveTower tower = run.stage("pipeline", [&] { return nerve_cohomology_tower(space, o); });
    std::size_t hits = 0;
    for (const auto& l : tower.levels) hits += l.from_cache ? 1 : 0;
    run.note_cache_hits(hits);
    run.results()["pipeline"] = tower.to_json();

    bool certified = true;
    nlohmann::json certs = nlohmann::json::array();
    for (std::size_t j = 0; j < tower.levels.size(); ++j) {
      const Cover& cv = tower.levels[j].cover;
      certified = certified && cv.certified;
      certs.push_back({{"level", j + 1}, {"certified", cv.certified}, {"max_diameter", cv.max_diameter.to_json()},
                       {"diameter_bound", cv.diameter_bound.to_json()}});
    }
    run.check("cover certificates", "diameter <= 2(k+1)C and each ball B(x,kC) inside one member", certs, certified);

    std::size_t pairs = 0, agreeing = 0;
    for (const auto& a : tower.alternatives) {
      ++pairs;
      bool same = a.contiguous;
      for (bool b : a.identical) same = same && b;
      agreeing += same ? 1 : 0;
    }
    run.check("coarsening choices agree", "every contiguous pair induces identical maps",
              {{"pairs", pairs}, {"agreeing", agreeing}}, pairs > 0 && pairs == agreeing);
  }

 private:
  std::size_t window_ = 5;
  std::size_t cycle_ = 48;
  std::vector<ScaleLevel> levels_;
  HalfInt core_ = HalfInt(16);
  int top_degree_ = 2;
};

}  // namespace

std::unique_ptr<Scenario> make_tower_limits() { return std::make_unique<TowerLimitsScenario>(); }

}  // namespace coarse::scenarios
