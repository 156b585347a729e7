#include "scenarios/framework.hpp"

#include <exception>
#include <ostream>

#include "coarse/errors.hpp"

namespace coarse {

std::string to_string(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Pass:
      return "PASS";
    case Verdict::Status::Fail:
      return "FAIL";
    case Verdict::Status::Inconclusive:
      break;
  }
  return "INCONCLUSIVE";
}

nlohmann::json Verdict::to_json() const {
  nlohmann::json j{{"name", name}, {"expected", expected}, {"observed", observed}, {"status", to_string(status)}};
  j["pass"] = status == Status::Inconclusive ? nlohmann::json(nullptr) : nlohmann::json(status == Status::Pass);
  if (!note.empty()) j["note"] = note;
  return j;
}

Verdict::Status ScenarioReport::status() const {
  bool inconclusive = false;
  for (const auto& v : verdicts) {
    if (v.status == Verdict::Status::Fail) return Verdict::Status::Fail;
    inconclusive = inconclusive || v.status == Verdict::Status::Inconclusive;
  }
  return inconclusive ? Verdict::Status::Inconclusive : Verdict::Status::Pass;
}

const Verdict* ScenarioReport::find(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

nlohmann::json ScenarioReport::to_json(bool include_timing) const {
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : verdicts) vs.push_back(v.to_json());
  nlohmann::json j{{"schema_version", kReportSchemaVersion},
                   {"scenario", scenario},
                   {"inputs", inputs},
                   {"results", results},
                   {"verdicts", std::move(vs)},
                   {"status", to_string(status())}};
  if (include_timing) j["timing"] = timing;
  return j;
}

namespace scenarios {

Run::Run(ScenarioReport& report, const RunOptions& options, const CommonConfig& common)
    : report_(report), common_(common), start_(std::chrono::steady_clock::now()) {
  if (options.use_cache) cache_.emplace(options.cache_dir);
  report_.timing = {{"stages", nlohmann::json::object()},
                    {"threads", options.threads},
                    {"cache", {{"enabled", options.use_cache}, {"dir", options.cache_dir.string()}}}};
}

void Run::record_stage(const std::string& name, std::chrono::steady_clock::time_point t0) {
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto& stages = report_.timing["stages"];
  stages[name] = stages.value(name, 0.0) + s;
}

void Run::verdict(std::string name, nlohmann::json expected, nlohmann::json observed, Verdict::Status status,
                  std::string note) {
  report_.verdicts.push_back({std::move(name), std::move(expected), std::move(observed), status, std::move(note)});
}

void Run::check(std::string name, nlohmann::json expected, nlohmann::json observed, bool pass, std::string note) {
  verdict(std::move(name), std::move(expected), std::move(observed), pass ? Verdict::Status::Pass : Verdict::Status::Fail,
          std::move(note));
}

void Run::finish() {
  report_.timing["cache"]["hits"] = cache_hits_;
  report_.timing["total_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

SimplicialComplex Scenario::complex(const std::string& which, Run&) {
  throw ConfigError("no complex named \"" + which + "\"");
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"zn-cohomology", "Z^n lattice ball: relative nerve cohomology tower, top degree Z", make_zn_cohomology},
      {"heisenberg-cohomology", "Heisenberg lattice ball: relative H^3 tower at the feasible truncation",
       make_heisenberg_cohomology},
      {"open-cone-transgression", "truncated cone over a finite graph: connecting map onto the stabilized image",
       make_open_cone},
      {"horoball-flasque", "combinatorial horoball over an interval: vanishing stabilized images",
       make_horoball_flasque},
      {"relhyp-delta", "augmented space of (F2, <a>) and horoballs: four-point and thin-triangle delta",
       make_relhyp_delta},
      {"z2-delta", "Z^2 word-metric balls: four-point delta growing with the radius", make_z2_delta},
      {"boundary-projection", "projection inequalities on the (F2, <a>) augmented space with measured delta0",
       make_boundary_projection},
      {"mayer-vietoris", "nerve-level Mayer-Vietoris exactness for excisive decompositions", make_mayer_vietoris},
      {"sphere-blowup", "octahedral sphere minus n stars, the colimit over n and cone surgery", make_sphere_blowup},
      {"tower-limits", "synthetic towers: lim, lim^1, colimits, Milnor checks and coarsening choices",
       make_tower_limits},
  };
  return entries;
}

std::vector<ScaleLevel> read_levels(ConfigTable& table, const std::string& key, const std::vector<ScaleLevel>& fallback) {
  const nlohmann::json raw = table.array(key, levels_json(fallback));
  const std::string where = table.path().empty() ? key : table.path() + "." + key;
  std::vector<ScaleLevel> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    ConfigTable entry(raw[i], at);
    ScaleLevel s;
    s.c = entry.half("C", HalfInt(1), HalfInt::from_twice(1), HalfInt(1 << 12));
    s.k = static_cast<int>(entry.integer("k", 1, 1, 1 << 12));
    entry.finish();
    out.push_back(s);
  }
  if (out.empty()) throw ParseError(where + ": at least one level is required");
  return out;
}

nlohmann::json levels_json(const std::vector<ScaleLevel>& levels) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& s : levels) a.push_back({{"C", s.c.to_json()}, {"k", s.k}});
  return a;
}

FgAbGroup coefficient_power(const Coefficients& c, std::size_t r) {
  if (c.kind == Coefficients::Kind::ModP) return FgAbGroup(0, std::vector<Integer>(r, Integer(static_cast<std::int64_t>(c.p))));
  return FgAbGroup::free(r);
}

nlohmann::json group_json(const FgAbGroup& g) { return {{"group", g.str()}, {"value", g.to_json()}}; }

void check_points(const Caps& caps, std::size_t points, const std::string& what) {
  if (points > caps.points) {
    throw CapExceeded(what + " has " + std::to_string(points) + " points, above caps.points = " +
                      std::to_string(caps.points));
  }
}

void tower_verdicts(Run& run, const NerveTower& tower, const std::vector<std::optional<FgAbGroup>>& expected) {
  using S = Verdict::Status;
  nlohmann::json certs = nlohmann::json::array();
  bool certified = true;
  for (std::size_t j = 0; j < tower.levels.size(); ++j) {
    const Cover& c = tower.levels[j].cover;
    certified = certified && c.certified;
    certs.push_back({{"level", j + 1},
                     {"certified", c.certified},
                     {"max_diameter", c.max_diameter.to_json()},
                     {"diameter_bound", c.diameter_bound.to_json()},
                     {"lebesgue_bound", c.lebesgue_bound.to_json()}});
  }
  run.check("cover certificates", "diameter <= 2(k+1)C and each ball B(x,kC) inside one member", certs, certified);

  nlohmann::json res = nlohmann::json::array();
  for (std::size_t j = 0; j < tower.levels.size(); ++j)
    res.push_back({{"level", j + 1},
                   {"diameter_bound", tower.levels[j].cover.diameter_bound.to_json()},
                   {"resolved", tower.levels[j].resolved}});
  const bool resolved = tower.resolved();
  run.verdict("levels resolved", {{"core_radius", tower.options.core_radius.to_json()}, {"all", true}}, res,
              resolved ? S::Pass : S::Inconclusive,
              resolved ? "" : "some members are wider than the core radius, so the end swallows the core at that scale");

  const auto lims = tower.limits();
  for (std::size_t q = 0; q < expected.size(); ++q) {
    if (!expected[q]) continue;
    const std::string deg = "H^" + std::to_string(q);
    if (lims.empty()) {
      run.verdict(deg + " stabilized image", group_json(*expected[q]), {{"window", tower.levels.size()}},
                  S::Inconclusive, "window shorter than 3");
      continue;
    }
    const TowerLimits& l = lims[q];
    nlohmann::json images = nlohmann::json::array();
    for (const auto& li : l.levels) images.push_back(li.eventual().isomorphism_type().str());
    nlohmann::json observed{{"lim", l.lim_str()}, {"stabilized_images", images}, {"window", l.window}};
    if (l.lim_group) observed["group"] = group_json(*l.lim_group);
    if (!resolved) {
      run.verdict(deg + " stabilized image", group_json(*expected[q]), observed, S::Inconclusive,
                  "unresolved levels: the tower does not measure the truncated space at every scale");
    } else if (l.lim == TowerLimits::Lim::Stable) {
      run.check(deg + " stabilized image", group_json(*expected[q]), observed, *l.lim_group == *expected[q]);
    } else {
      run.verdict(deg + " stabilized image", group_json(*expected[q]), observed, S::Inconclusive,
                  "images have not stabilized within the window");
    }
    nlohmann::json lim1{{"lim1", l.lim1_str()}, {"window", l.window}};
    if (!resolved) {
      run.verdict("lim1 " + deg, "ZERO_ML", lim1, S::Inconclusive, "unresolved levels");
    } else {
      run.verdict("lim1 " + deg, "ZERO_ML", lim1,
                  l.lim1 == TowerLimits::Lim1::ZeroMl         ? S::Pass
                  : l.lim1 == TowerLimits::Lim1::NonzeroWitness ? S::Fail
                                                                : S::Inconclusive);
    }
  }

  nlohmann::json alt = nlohmann::json::array();
  bool agree = true;
  for (const auto& a : tower.alternatives) {
    bool same = a.contiguous;
    for (bool b : a.identical) same = same && b;
    agree = agree && same;
    alt.push_back({{"level", a.level + 1}, {"differ", a.differ}, {"contiguous", a.contiguous}, {"identical", a.identical}});
  }
  if (!tower.alternatives.empty())
    run.check("coarsening choices agree", "contiguous, with identical induced maps in every degree", alt, agree);
}

namespace {

CommonConfig read_common(ConfigTable& root, const std::string& name) {
  root.text("scenario", name, {name});
  CommonConfig c;
  c.seed = static_cast<std::uint64_t>(root.integer("seed", 1, 0, std::int64_t{1} << 53));
  const std::string coeff = root.text("coefficients", "Z");
  try {
    c.coefficients = Coefficients::parse(coeff);
  } catch (const std::exception& e) {
    throw ParseError(std::string("coefficients: ") + e.what());
  }
  ConfigTable& caps = root.table("caps");
  c.caps.points = static_cast<std::size_t>(caps.integer("points", 20000, 1, 40000));
  c.caps.simplices = static_cast<std::size_t>(caps.integer("simplices", 5'000'000, 1, 50'000'000));
  c.caps.four_point = static_cast<std::size_t>(caps.integer("four_point", 600, 4, 1000));
  c.caps.thin_triangle = static_cast<std::size_t>(caps.integer("thin_triangle", 300, 3, 2000));
  c.output = root.text("output", "");
  return c;
}

const Entry& lookup(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e;
  std::string known;
  for (const auto& e : registry()) known += (known.empty() ? "" : ", ") + e.name;
  throw ConfigError("unknown scenario \"" + name + "\" (known: " + known + ")");
}

struct Prepared {
  std::unique_ptr<Scenario> scenario;
  CommonConfig common;
  nlohmann::json normalized;
};

Prepared prepare(const std::string& name, const nlohmann::json& config) {
  const Entry& entry = lookup(name);
  const nlohmann::json& source = config.is_null() ? nlohmann::json::object() : config;
  ConfigTable root(source, "");
  Prepared p;
  p.common = read_common(root, name);
  p.scenario = entry.make();
  p.scenario->configure(root);
  p.normalized = root.finish();
  return p;
}

/// Re-raises module errors as the same type with the scenario name in front.
[[noreturn]] void rethrow_in(const std::string& scenario) {
  const std::string ctx = "scenario " + scenario + ": ";
  try {
    throw;
  }
#define COARSE_RETHROW(T) \
  catch (const T& e) {    \
    throw T(ctx + e.what()); \
  }
  COARSE_RETHROW(DisconnectedGraph)
  COARSE_RETHROW(EmptySubset)
  COARSE_RETHROW(NotADecomposition)
  COARSE_RETHROW(DomainMismatch)
  COARSE_RETHROW(InvalidMetric)
  COARSE_RETHROW(ParseError)
  COARSE_RETHROW(BallTooLarge)
  COARSE_RETHROW(NonInvertibleGenerator)
  COARSE_RETHROW(ArithmeticOverflow)
  COARSE_RETHROW(UndecidableMembership)
  COARSE_RETHROW(UnsupportedGroup)
  COARSE_RETHROW(CosetMissesBall)
  COARSE_RETHROW(GIsPeripheral)
  COARSE_RETHROW(Disconnected)
  COARSE_RETHROW(NoWitnessGeodesic)
  COARSE_RETHROW(CapExceeded)
  COARSE_RETHROW(BoundViolation)
  COARSE_RETHROW(SimplexExplosion)
  COARSE_RETHROW(NoContainingMember)
  COARSE_RETHROW(ShapeMismatch)
  COARSE_RETHROW(AdjacentCenters)
  COARSE_RETHROW(NotASubcomplex)
  COARSE_RETHROW(DegreeAboveCap)
  COARSE_RETHROW(InconsistentUnion)
  COARSE_RETHROW(UnstableTower)
  COARSE_RETHROW(ConfigError)
#undef COARSE_RETHROW
  catch (...) {
    throw;
  }
}

}  // namespace

}  // namespace scenarios

std::vector<ScenarioInfo> list_scenarios() {
  std::vector<ScenarioInfo> out;
  for (const auto& e : scenarios::registry()) out.push_back({e.name, e.summary});
  return out;
}

nlohmann::json check_config(const std::string& scenario, const nlohmann::json& config) {
  return scenarios::prepare(scenario, config).normalized;
}

ScenarioReport run_scenario(const std::string& scenario, const nlohmann::json& config, const RunOptions& options) {
  auto p = scenarios::prepare(scenario, config);
  ScenarioReport report;
  report.scenario = scenario;
  report.inputs = p.normalized;
  scenarios::Run run(report, options, p.common);
  try {
    p.scenario->run(run);
  } catch (const Error&) {
    scenarios::rethrow_in(scenario);
  }
  run.finish();
  return report;
}

std::vector<std::string> complex_names(const std::string& scenario, const nlohmann::json& config) {
  return scenarios::prepare(scenario, config).scenario->complexes();
}

void dump_complex(const std::string& scenario, const nlohmann::json& config, const std::string& which,
                  std::ostream& out, const RunOptions& options) {
  auto p = scenarios::prepare(scenario, config);
  ScenarioReport scratch;
  scenarios::Run run(scratch, options, p.common);
  SimplicialComplex k;
  try {
    k = p.scenario->complex(which, run);
  } catch (const Error&) {
    scenarios::rethrow_in(scenario);
  }
  k.write_text(out);
}

}  // namespace coarse
