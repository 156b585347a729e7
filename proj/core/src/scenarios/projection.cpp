#include <algorithm>
#include <sstream>

#include "coarse/augmented.hpp"
#include "coarse/errors.hpp"
#include "coarse/group.hpp"
#include "coarse/hyperbolicity.hpp"
#include "scenarios/framework.hpp"

namespace coarse::scenarios {

namespace {

class BoundaryProjection : public Scenario {
 public:
  void configure(ConfigTable& root) override {
    ConfigTable& s = root.table("space");
    peripheral_ = s.text("peripheral", "a");
    radius_ = static_cast<int>(s.integer("R", 6, 1, 10));
    min_depth_ = static_cast<int>(s.integer("L", 4, 1, 16));
    margin_ = static_cast<int>(s.integer("depth_margin", 2, 0, 8));
    horoballs_ = static_cast<std::size_t>(s.integer("horoballs", 1000, 1, 100000));
    coset_ = static_cast<std::size_t>(s.integer("coset", 1, 1, 100000));
    ConfigTable& smp = root.table("sampling");
    pairs_ = static_cast<std::size_t>(smp.integer("pairs", 600, 1, 1'000'000));
    min_trusted_ = static_cast<std::size_t>(smp.integer("min_trusted_pairs", 500, 0, 1'000'000));
    thin_samples_ = static_cast<std::uint64_t>(smp.integer("thin_triangle_samples", 200'000, 1, 1'000'000'000));
    horizon_ = static_cast<int>(smp.integer("horizon", -1, -1, 1000));
    targets_below_top_ = smp.flag("targets_below_top", true);
  }

  void run(Run& run) override {
    const auto& c = run.common();
    const GroupSpec f2 = GroupSpec::free(2);
    const CayleyBall ball = run.stage("ball", [&] { return cayley_ball(f2, radius_, c.caps.points); });
    const CosetOrder order = coset_order(ball, {parse_peripheral(f2, peripheral_)}, horoballs_);
    if (coset_ > order.entries.size()) {
      throw ConfigError("space.coset = " + std::to_string(coset_) + " but only " + std::to_string(order.entries.size()) +
                        " cosets are enumerated");
    }
    const int trust = ball.trust_radius();

    // δ₀ is measured on the truncation it is used on, and the basepoint level N it implies
    // must fit below the top with a margin; deepen until N stops changing.
    int depth = std::max(min_depth_, 1) + margin_;
    LabeledGraph x;
    FiniteMetricSpace m;
    DeltaReport trusted_thin, global_thin;
    HalfInt delta0;
    int level = 0;
    nlohmann::json rounds = nlohmann::json::array();
    for (int round = 0; round < 8; ++round) {
      run.stage("delta0", [&] {
        x = augmented_space(ball, order, order.entries.size(), depth);
        check_points(c.caps, x.size(), "the augmented space");
        m = x.graph.metric();
        const auto corners = trusted_vertices(x, ball, 0, trust, min_depth_);
        trusted_thin = corners.size() <= c.caps.thin_triangle
                           ? thin_triangle_delta(x.graph, m, corners, SamplingMode::exhaustive(), c.caps.thin_triangle)
                           : thin_triangle_delta(x.graph, m, corners, SamplingMode::sampled(c.seed, thin_samples_),
                                                 c.caps.thin_triangle);
        std::vector<PointIndex> all(x.size());
        for (PointIndex v = 0; v < x.size(); ++v) all[v] = v;
        global_thin = thin_triangle_delta(x.graph, m, all, SamplingMode::sampled(c.seed, thin_samples_), c.caps.thin_triangle);
      });
      delta0 = std::max(trusted_thin.delta, global_thin.delta);
      level = basepoint_level(delta0);
      rounds.push_back({{"depth", depth},
                        {"points", x.size()},
                        {"trusted_thin", trusted_thin.to_json()},
                        {"sampled_thin", global_thin.to_json()},
                        {"delta0", delta0.to_json()},
                        {"N", level}});
      const int needed = std::max(min_depth_, level) + margin_;
      if (needed <= depth) break;
      depth = needed;
    }
    run.results()["delta0_rounds"] = rounds;
    run.results()["space"] = {{"R", radius_},
                              {"trust_radius", trust},
                              {"depth", depth},
                              {"horoballs", order.entries.size()},
                              {"points", x.size()},
                              {"coset", coset_}};

    const PointIndex e = basepoint(x, coset_, level);
    const auto far = horizon_targets(x, coset_, e, horizon_, targets_below_top_);
    const auto pool = trusted_vertices(x, ball, coset_, trust, min_depth_);
    const auto pairs = sample_pairs(pool, c.seed, pairs_);
    std::vector<PointIndex> coset_points;
    for (PointIndex v : x.coset_members[coset_ - 1])
      if (ball.length[x.labels[v].point] <= trust) coset_points.push_back(v);

    const ProjectionReport rep = run.stage("projection", [&] {
      return verify_projection_bounds(x, coset_, e, pairs, coset_points, far, delta0);
    });
    auto rj = rep.to_json(false);
    rj["pool"] = pool.size();
    rj["pairs"] = pairs.size();
    rj["coset_points"] = coset_points.size();
    run.results()["projection"] = rj;
    run.report().tables.emplace_back("projection", rep.to_csv());

    using K = InequalityRecord::Kind;
    std::size_t trusted_pairs = 0;
    for (const auto& r : rep.records)
      if (r.kind == K::Lipschitz && r.trusted) ++trusted_pairs;
    for (K k : {K::Contraction, K::Retraction, K::Lipschitz}) {
      std::size_t checked = 0, bad = 0;
      for (const auto& r : rep.records) {
        if (r.kind != k) continue;
        ++checked;
        bad += r.violated() ? 1 : 0;
      }
      const std::string bound = k == K::Contraction ? "d + 2 delta0" : k == K::Retraction ? "6 delta0" : "d + 10 delta0";
      run.check(to_string(k) + " bound", "0 violations of lhs <= " + bound,
                {{"checked", checked}, {"violations", bad}, {"max_excess", rep.max_excess(k).to_json()},
                 {"delta0", delta0.to_json()}},
                checked > 0 && bad == 0);
    }
    run.check("trusted samples", ">= " + std::to_string(min_trusted_) + " trusted pairs with no skips",
              {{"trusted_pairs", trusted_pairs}, {"untrusted_records", rep.untrusted()}, {"skipped", rep.skipped.size()}},
              trusted_pairs >= min_trusted_ && rep.skipped.empty());
  }

 private:
  std::string peripheral_ = "a";
  int radius_ = 6;
  int min_depth_ = 4;
  int margin_ = 2;
  std::size_t horoballs_ = 1000;
  std::size_t coset_ = 1;
  std::size_t pairs_ = 600;
  std::size_t min_trusted_ = 500;
  bool targets_below_top_ = true;
  std::uint64_t thin_samples_ = 0;
  int horizon_ = -1;
};

}  // namespace

std::unique_ptr<Scenario> make_boundary_projection() { return std::make_unique<BoundaryProjection>(); }

}  // namespace coarse::scenarios
