#include <algorithm>

#include "coarse/augmented.hpp"
#include "coarse/errors.hpp"
#include "coarse/group.hpp"
#include "coarse/models.hpp"
#include "scenarios/framework.hpp"

namespace coarse::scenarios {

namespace {

struct Space {
  FiniteMetricSpace metric;
  PointIndex basepoint = 0;
  std::string key;
  nlohmann::json info;
};

/// Shared shape of the tower scenarios: build a space, run the relative cohomology tower,
/// compare stabilized images with the expected groups.
class NerveTowerScenario : public Scenario {
 public:
  void configure(ConfigTable& root) override {
    configure_space(root.table("space"));
    ConfigTable& t = root.table("tower");
    levels_ = read_levels(t, "levels", default_levels());
    top_degree_ = static_cast<int>(t.integer("top_degree", default_top_degree(), 0, 4));
    core_ = t.half("core_radius", default_core(), HalfInt::from_twice(1), HalfInt(1 << 12));
    check_alternatives_ = t.flag("check_coarsening_choices", true);
  }

  std::vector<std::string> complexes() const override {
    std::vector<std::string> out;
    for (std::size_t j = 1; j <= levels_.size(); ++j) {
      out.push_back("nerve:" + std::to_string(j));
      out.push_back("end:" + std::to_string(j));
    }
    return out;
  }

  SimplicialComplex complex(const std::string& which, Run& run) override {
    const auto colon = which.find(':');
    const std::string kind = which.substr(0, colon);
    std::size_t j = 0;
    if (colon != std::string::npos) {
      try {
        j = std::stoul(which.substr(colon + 1));
      } catch (const std::exception&) {
        j = 0;
      }
    }
    if ((kind != "nerve" && kind != "end") || j < 1 || j > levels_.size())
      throw ConfigError("no complex named \"" + which + "\"; try nerve:J or end:J with J in 1.." +
                        std::to_string(levels_.size()));
    const Space space = make_space(run);
    const std::vector<ScaleLevel> prefix(levels_.begin(), levels_.begin() + static_cast<std::ptrdiff_t>(j));
    const AntiCechSystem sys = anti_cech_system(space.metric, prefix);
    SimplicialComplex nerve = nerve_complex(sys.covers.back(), top_degree_ + 1, run.common().caps.simplices);
    if (kind == "nerve") return nerve;
    return end_subcomplex(sys.covers.back(), nerve, space.metric, core_, space.basepoint);
  }

  void run(Run& run) override {
    const Space space = run.stage("space", [&] { return make_space(run); });
    auto info = space.info;
    info["points"] = space.metric.size();
    info["basepoint"] = space.basepoint;
    run.results()["space"] = info;

    NerveTowerOptions o;
    o.levels = levels_;
    o.top_degree = top_degree_;
    o.core_radius = core_;
    o.basepoint = space.basepoint;
    o.simplex_cap = run.common().caps.simplices;
    o.coefficients = run.common().coefficients;
    o.check_alternatives = check_alternatives_;
    o.space_key = space.key + "|" + o.coefficients.str();
    o.cache = run.cache();
    const NerveTower tower = run.stage("tower", [&] { return nerve_cohomology_tower(space.metric, o); });
    std::size_t hits = 0;
    for (const auto& l : tower.levels) hits += l.from_cache ? 1 : 0;
    run.note_cache_hits(hits);
    run.results()["tower"] = tower.to_json();

    std::vector<std::optional<FgAbGroup>> expected;
    for (int q = 0; q <= top_degree_; ++q) expected.push_back(expected_group(run, q));
    tower_verdicts(run, tower, expected);
    extra(run, space, tower);
  }

 protected:
  virtual void configure_space(ConfigTable& t) = 0;
  virtual Space make_space(Run& run) const = 0;
  virtual std::vector<ScaleLevel> default_levels() const = 0;
  virtual int default_top_degree() const = 0;
  /// Half the truncation radius unless the scenario says otherwise.
  virtual HalfInt default_core() const = 0;
  /// Expected stabilized image in degree q, or nullopt when the scenario makes no claim.
  virtual std::optional<FgAbGroup> expected_group(Run& run, int q) const = 0;
  virtual void extra(Run&, const Space&, const NerveTower&) {}


  std::vector<ScaleLevel> levels_;
  int top_degree_ = 2;
  HalfInt core_;
  bool check_alternatives_ = true;
};

std::vector<ScaleLevel> doubling(std::initializer_list<int> cs) {
  std::vector<ScaleLevel> out;
  for (int c : cs) out.push_back({HalfInt(c), 1});
  return out;
}

Space lattice_ball(Run& run, const GroupSpec& spec, int radius, const std::string& key) {
  const CayleyBall ball = cayley_ball(spec, radius, run.common().caps.points);
  check_points(run.common().caps, ball.size(), "the Cayley ball");
  Space s;
  s.metric = ball.graph.metric();
  s.basepoint = 0;
  s.key = key;
  s.info = {{"group", spec.to_json()}, {"radius", radius}};
  return s;
}

class ZnCohomology : public NerveTowerScenario {
 protected:
  void configure_space(ConfigTable& t) override {
    n_ = static_cast<int>(t.integer("n", 2, 1, 3));
    radius_ = static_cast<int>(t.integer("T", 64, 1, 200));
  }
  Space make_space(Run& run) const override {
    return lattice_ball(run, GroupSpec::free_abelian(static_cast<std::size_t>(n_)), radius_,
                        "zn:n=" + std::to_string(n_) + ":T=" + std::to_string(radius_));
  }
  std::vector<ScaleLevel> default_levels() const override { return doubling({1, 2, 4, 8}); }
  int default_top_degree() const override { return n_; }
  HalfInt default_core() const override { return HalfInt::from_twice(radius_); }
  std::optional<FgAbGroup> expected_group(Run& run, int q) const override {
    return coefficient_power(run.common().coefficients, q == n_ ? 1 : 0);
  }

 private:
  int n_ = 2;
  int radius_ = 64;
};

class HeisenbergCohomology : public NerveTowerScenario {
 protected:
  void configure_space(ConfigTable& t) override { radius_ = static_cast<int>(t.integer("T", 6, 1, 40)); }
  Space make_space(Run& run) const override {
    return lattice_ball(run, GroupSpec::heisenberg(), radius_, "heisenberg:T=" + std::to_string(radius_));
  }
  std::vector<ScaleLevel> default_levels() const override { return doubling({1, 2, 8}); }
  int default_top_degree() const override { return 3; }
  HalfInt default_core() const override { return HalfInt::from_twice(radius_); }
  std::optional<FgAbGroup> expected_group(Run& run, int q) const override {
    return coefficient_power(run.common().coefficients, q == 3 ? 1 : 0);
  }

 private:
  int radius_ = 6;
};

class HoroballFlasque : public NerveTowerScenario {
 protected:
  void configure_space(ConfigTable& t) override {
    base_length_ = static_cast<int>(t.integer("base_points", 33, 2, 4097));
    depth_ = static_cast<int>(t.integer("depth", 8, 0, 24));
    base_point_ = static_cast<int>(t.integer("basepoint", base_length_ / 2, 0, base_length_ - 1));
  }
  Space make_space(Run& run) const override {
    check_points(run.common().caps, static_cast<std::size_t>(base_length_) * static_cast<std::size_t>(depth_ + 1),
                 "the horoball");
    const LabeledGraph h = combinatorial_horoball(path_graph(static_cast<std::size_t>(base_length_)).metric(), depth_);
    Space s;
    s.metric = h.graph.metric();
    s.basepoint = static_cast<PointIndex>(base_point_);
    // Radius of the truncated horoball seen from the basepoint.
    std::int32_t ecc = 0;
    const std::int32_t* row = s.metric.row_twice(s.basepoint);
    for (std::size_t x = 0; x < s.metric.size(); ++x) ecc = std::max(ecc, row[x]);
    s.key = "horoball:base=" + std::to_string(base_length_) + ":depth=" + std::to_string(depth_);
    s.info = {{"base", "path"},
              {"base_points", base_length_},
              {"depth", depth_},
              {"eccentricity", HalfInt::from_twice(ecc).to_json()}};
    return s;
  }
  std::vector<ScaleLevel> default_levels() const override {
    return {{HalfInt::from_twice(1), 1}, {HalfInt(1), 1}, {HalfInt(1), 2}, {HalfInt(1), 3}};
  }
  int default_top_degree() const override { return 2; }
  // The truncated horoball has radius only about 2 log2(base) + depth around the basepoint, so
  // half of it leaves no room for four scales; 8 keeps every default level resolved.
  HalfInt default_core() const override { return HalfInt(8); }
  std::optional<FgAbGroup> expected_group(Run& run, int) const override {
    return coefficient_power(run.common().coefficients, 0);
  }

 private:
  int base_length_ = 33;
  int depth_ = 8;
  int base_point_ = 16;
};

class OpenConeTransgression : public NerveTowerScenario {
 protected:
  void configure_space(ConfigTable& t) override {
    y_points_ = static_cast<int>(t.integer("y_points", 8, 3, 64));
    radius_ = static_cast<int>(t.integer("T", 64, 2, 200));
  }
  Space make_space(Run& run) const override {
    const OpenCone cone = open_cone(cycle_graph(static_cast<std::size_t>(y_points_)), radius_);
    check_points(run.common().caps, cone.graph.size(), "the cone");
    Space s;
    s.metric = cone.graph.metric();
    s.basepoint = 0;
    s.key = "cone:cycle=" + std::to_string(y_points_) + ":T=" + std::to_string(radius_);
    s.info = {{"base", "cycle"}, {"y_points", y_points_}, {"T", radius_}};
    return s;
  }
  std::vector<ScaleLevel> default_levels() const override { return doubling({1, 2, 4, 8}); }
  int default_top_degree() const override { return 2; }
  HalfInt default_core() const override { return HalfInt::from_twice(radius_); }
  std::optional<FgAbGroup> expected_group(Run& run, int q) const override {
    // H^q(N, E) ≅ H^{q-1}(E) ≅ H̃^{q-1}(Y) for a circle Y.
    return coefficient_power(run.common().coefficients, q == 2 ? 1 : 0);
  }
  void extra(Run& run, const Space&, const NerveTower& tower) override;

 private:
  int y_points_ = 8;
  int radius_ = 64;
};

void OpenConeTransgression::extra(Run& run, const Space&, const NerveTower& tower) {
  using S = Verdict::Status;
  const int q = top_degree_;
  if (q < 1) return;
  const Coefficients coeff = run.common().coefficients;

  // Reduced cohomology of Y itself.
  const SimplicialComplex y = graph_complex(cycle_graph(static_cast<std::size_t>(y_points_)));
  const auto hy = run.stage("base", [&] { return cohomology(y, coeff, true, q - 1); });
  run.results()["base_reduced_cohomology"] = groups_to_json(hy);

  nlohmann::json per_level = nlohmann::json::array();
  bool exact = true;
  std::vector<Homomorphism> deltas;
  std::vector<FgAbGroup> end_groups;
  run.stage("transgression", [&] {
    for (std::size_t j = 0; j < tower.levels.size(); ++j) {
      const auto& level = tower.levels[j];
      HomologyComputation::Options ao;
      ao.coefficients = coeff;
      ao.max_degree = q;
      const HomologyComputation end_abs(level.end, ao);
      const HomologyComputation nerve_abs(level.nerve, ao);
      const HomologyComputation& pair = tower.pairs[j];
      const Homomorphism delta = connecting_map(end_abs, pair, q - 1);
      const Homomorphism restrict = restriction_map(nerve_abs, end_abs, q - 1);
      const Homomorphism forget = induced_map(SimplicialMap::identity(level.nerve.vertex_count()), nerve_abs, pair, q);
      const bool at_end = restrict.image() == delta.kernel();
      const bool at_pair = delta.image() == forget.kernel();
      exact = exact && at_end && at_pair;
      per_level.push_back({{"level", j + 1},
                           {"end", group_json(end_abs.group(q - 1))},
                           {"nerve", group_json(nerve_abs.group(q - 1))},
                           {"pair", group_json(pair.group(q))},
                           {"delta_kernel", delta.kernel().isomorphism_type().str()},
                           {"delta_image", delta.image().isomorphism_type().str()},
                           {"exact_at_end", at_end},
                           {"exact_at_pair", at_pair}});
      deltas.push_back(delta);
      end_groups.push_back(end_abs.group(q - 1));
    }
  });
  run.results()["transgression"] = per_level;
  run.check("long exact sequence of the pair", "exact at H^" + std::to_string(q - 1) + "(E) and H^" + std::to_string(q) +
                                                   "(N,E) at every level",
            per_level, exact);

  const FgAbGroup yq = hy[static_cast<std::size_t>(q - 1)];
  run.check("reduced cohomology of Y", group_json(coefficient_power(coeff, 1)), group_json(yq),
            yq == coefficient_power(coeff, 1));
  run.check("end cohomology matches Y", group_json(yq), group_json(end_groups.front()), end_groups.front() == yq);

  const auto lims = tower.limits();
  if (lims.empty() || !tower.resolved() || lims[static_cast<std::size_t>(q)].lim != TowerLimits::Lim::Stable) {
    run.verdict("connecting map onto the stabilized image", "isomorphism at level 1", nullptr, S::Inconclusive,
                "the relative tower is not stable and resolved");
    run.verdict("Milnor sequence", "PASS", nullptr, S::Inconclusive, "the relative tower is not stable and resolved");
    return;
  }
  const TowerLimits& lim = lims[static_cast<std::size_t>(q)];
  const Subgroup& s1 = lim.levels.front().eventual();
  const Homomorphism& d1 = deltas.front();
  const bool injective = d1.is_injective();
  const bool onto = d1.image() == s1;
  run.check("connecting map onto the stabilized image", "injective with image equal to the stabilized image",
            {{"source", group_json(d1.source())},
             {"stabilized_image", group_json(s1.isomorphism_type())},
             {"kernel", d1.kernel().isomorphism_type().str()},
             {"injective", injective},
             {"image_equals_stabilized", onto}},
            injective && onto);

  const std::size_t at = *lim.lim_level;
  const MilnorReport m = milnor_check(tower.tower(q), deltas[at], at);
  run.check("Milnor sequence", "PASS", m.to_json(), m.pass);
}

}  // namespace

std::unique_ptr<Scenario> make_zn_cohomology() { return std::make_unique<ZnCohomology>(); }
std::unique_ptr<Scenario> make_heisenberg_cohomology() { return std::make_unique<HeisenbergCohomology>(); }
std::unique_ptr<Scenario> make_horoball_flasque() { return std::make_unique<HoroballFlasque>(); }
std::unique_ptr<Scenario> make_open_cone() { return std::make_unique<OpenConeTransgression>(); }

}  // namespace coarse::scenarios
