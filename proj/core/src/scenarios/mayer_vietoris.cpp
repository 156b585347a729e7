#include <algorithm>

#include "coarse/augmented.hpp"
#include "coarse/errors.hpp"
#include "coarse/group.hpp"
#include "coarse/models.hpp"
#include "scenarios/framework.hpp"

namespace coarse::scenarios {

namespace {

struct Decomposition {
  FiniteMetricSpace space;
  PointSet a, b;
  nlohmann::json info;
};

PointSet interval(int lo, int hi) {
  PointSet s;
  for (int v = lo; v <= hi; ++v) s.push_back(static_cast<PointIndex>(v));
  return s;
}

class MayerVietoris : public Scenario {
 public:
  void configure(ConfigTable& root) override {
    ConfigTable& line = root.table("line");
    line_points_ = static_cast<int>(line.integer("points", 40, 2, 4000));
    a_ = read_pair(line, "A", {0, 24});
    b_ = read_pair(line, "B", {15, line_points_ - 1});
    ConfigTable& aug = root.table("augmented");
    peripheral_ = aug.text("peripheral", "a");
    radius_ = static_cast<int>(aug.integer("R", 3, 1, 6));
    depth_ = static_cast<int>(aug.integer("L", 3, 0, 10));
    horoballs_ = static_cast<std::size_t>(aug.integer("horoballs", 1000, 1, 100000));
    n_ = static_cast<std::size_t>(aug.integer("n", 0, 0, 100000));
    ConfigTable& cover = root.table("cover");
    level_ = read_levels(cover, "levels", {{HalfInt(1), 1}});
    if (level_.size() != 1) throw ParseError("cover.levels: exactly one level is used");
    lo_ = static_cast<int>(cover.integer("lowest_degree", 0, 0, 4));
    hi_ = static_cast<int>(cover.integer("highest_degree", 2, lo_, 4));
    radii_ = static_cast<int>(cover.integer("excision_radii", 4, 0, 64));
  }

  std::vector<std::string> complexes() const override {
    std::vector<std::string> out;
    for (const char* part : {"line", "augmented"})
      for (const char* piece : {"nerve", "A", "B", "overlap"}) out.push_back(std::string(part) + ":" + piece);
    return out;
  }

  SimplicialComplex complex(const std::string& which, Run& run) override {
    const auto colon = which.find(':');
    const std::string part = which.substr(0, colon);
    const std::string piece = colon == std::string::npos ? "" : which.substr(colon + 1);
    if ((part != "line" && part != "augmented") ||
        (piece != "nerve" && piece != "A" && piece != "B" && piece != "overlap"))
      throw ConfigError("no complex named \"" + which + "\"; try line:nerve, line:A, augmented:overlap, ...");
    const Decomposition d = part == "line" ? line(run) : augmented(run);
    const Cover cover = anti_cech_cover(d.space, greedy_net(d.space, level_[0].c), level_[0].c, level_[0].k);
    const SimplicialComplex nerve = nerve_complex(cover, hi_ + 2, run.common().caps.simplices);
    if (piece == "nerve") return nerve;
    const SimplicialComplex na = subcomplex_meeting(cover, nerve, d.a);
    const SimplicialComplex nb = subcomplex_meeting(cover, nerve, d.b);
    if (piece == "A") return na;
    if (piece == "B") return nb;
    return SimplicialComplex::intersection_of(na, nb);
  }

  void run(Run& run) override {
    bool certified = true;
    nlohmann::json certs = nlohmann::json::array();
    for (const char* part : {"line", "augmented"}) {
      const Decomposition d = run.stage(std::string(part) + " space", [&] {
        return std::string(part) == "line" ? line(run) : augmented(run);
      });
      nlohmann::json out = d.info;
      out["points"] = d.space.size();

      std::vector<HalfInt> radii;
      for (int r = 0; r <= radii_; ++r) radii.push_back(HalfInt(r));
      const ExcisiveProfile profile =
          run.stage(std::string(part) + " excision", [&] { return omega_excisive_profile(d.space, d.a, d.b, radii); });
      out["excision_profile"] = profile.to_json();

      const auto [report, union_ok, cover_json, cert] = run.stage(std::string(part) + " sequence", [&] {
        const Cover cover = anti_cech_cover(d.space, greedy_net(d.space, level_[0].c), level_[0].c, level_[0].k);
        const SimplicialComplex nerve = nerve_complex(cover, hi_ + 2, run.common().caps.simplices);
        const SimplicialComplex na = subcomplex_meeting(cover, nerve, d.a);
        const SimplicialComplex nb = subcomplex_meeting(cover, nerve, d.b);
        const SimplicialComplex whole = SimplicialComplex::union_of(na, nb);
        const SimplicialComplex overlap = SimplicialComplex::intersection_of(na, nb);
        auto rep = mayer_vietoris_check(whole, na, nb, overlap, run.common().coefficients, lo_, hi_);
        auto cj = cover.to_json();
        cj["nerve_simplices"] = nerve.total_count();
        cj["A_simplices"] = na.total_count();
        cj["B_simplices"] = nb.total_count();
        cj["overlap_simplices"] = overlap.total_count();
        return std::make_tuple(std::move(rep), whole == nerve, std::move(cj), cover.certified);
      });
      certified = certified && cert;
      certs.push_back({{"part", part}, {"certified", cert}});
      out["cover"] = cover_json;
      out["nerve_is_union"] = union_ok;
      out["mayer_vietoris"] = report.to_json();
      run.results()[part] = out;

      const bool excisive = std::all_of(profile.min_s.begin(), profile.min_s.end(), [](const auto& s) { return s.has_value(); });
      run.check(std::string(part) + " decomposition is excisive", "finite S(R) for every sampled R", out["excision_profile"],
                excisive);
      run.check(std::string(part) + " nerve is the union", "N = N(A) ∪ N(B)", union_ok, union_ok);
      run.check(std::string(part) + " Mayer-Vietoris exact",
                "exact in degrees " + std::to_string(lo_) + ".." + std::to_string(hi_), out["mayer_vietoris"]["positions"],
                report.pass);
    }
    run.check("cover certificates", "diameter <= 2(k+1)C and each ball B(x,kC) inside one member", certs, certified);
  }

 private:
  static std::pair<int, int> read_pair(ConfigTable& t, const std::string& key, std::pair<int, int> fallback) {
    const nlohmann::json raw = t.array(key, {fallback.first, fallback.second});
    if (raw.size() != 2 || !raw[0].is_number_integer() || !raw[1].is_number_integer() || raw[0] > raw[1])
      throw ParseError(t.path() + "." + key + ": expected [first, last] with first <= last");
    return {raw[0].get<int>(), raw[1].get<int>()};
  }

  Decomposition line(Run& run) const {
    check_points(run.common().caps, static_cast<std::size_t>(line_points_), "the line");
    if (a_.second >= line_points_ || b_.second >= line_points_ || a_.first < 0 || b_.first < 0)
      throw ConfigError("line.A and line.B must lie inside the line");
    Decomposition d;
    d.space = path_graph(static_cast<std::size_t>(line_points_)).metric();
    d.a = interval(a_.first, a_.second);
    d.b = interval(b_.first, b_.second);
    d.info = {{"A", {a_.first, a_.second}}, {"B", {b_.first, b_.second}}};
    return d;
  }

  /// X_n = Γ ∪ horoballs n+1, n+2, ...; A = X_{n+1} (horoball n+1 removed down to its coset),
  /// B = the horoball H(g_{n+1}P) including the coset itself.
  Decomposition augmented(Run& run) const {
    const GroupSpec f2 = GroupSpec::free(2);
    const CayleyBall ball = cayley_ball(f2, radius_, run.common().caps.points);
    const CosetOrder order = coset_order(ball, {parse_peripheral(f2, peripheral_)}, horoballs_);
    if (n_ + 1 > order.entries.size())
      throw ConfigError("augmented.n = " + std::to_string(n_) + " leaves no horoball to split off");
    const LabeledGraph x = augmented_space(ball, order, order.entries.size(), depth_);
    std::vector<std::int64_t> keep(x.size(), -1);
    PointIndex next = 0;
    for (PointIndex v = 0; v < x.size(); ++v) {
      bool removed = false;
      for (std::size_t i = 1; i <= n_ && !removed; ++i) removed = x.in_horoball_interior(i, v);
      if (!removed) keep[v] = next++;
    }
    check_points(run.common().caps, next, "X_n");
    std::vector<Edge> edges;
    for (const auto& e : x.graph.edges())
      if (keep[e.u] >= 0 && keep[e.v] >= 0)
        edges.push_back({static_cast<PointIndex>(keep[e.u]), static_cast<PointIndex>(keep[e.v])});
    Decomposition d;
    d.space = graph_metric(next, edges);
    const std::size_t h = n_ + 1;
    for (PointIndex v = 0; v < x.size(); ++v) {
      if (keep[v] < 0) continue;
      const auto w = static_cast<PointIndex>(keep[v]);
      const bool interior = x.in_horoball_interior(h, v);
      const bool on_coset = x.labels[v].kind == VertexLabel::Kind::Group && x.in_coset(h, v);
      if (!interior) d.a.push_back(w);
      if (interior || on_coset) d.b.push_back(w);
    }
    d.info = {{"R", radius_},
              {"L", depth_},
              {"horoballs", order.entries.size()},
              {"n", n_},
              {"split_horoball", h},
              {"A_points", d.a.size()},
              {"B_points", d.b.size()}};
    return d;
  }

  int line_points_ = 40;
  std::pair<int, int> a_{0, 24}, b_{15, 39};
  std::string peripheral_ = "a";
  int radius_ = 3;
  int depth_ = 3;
  std::size_t horoballs_ = 1000;
  std::size_t n_ = 0;
  std::vector<ScaleLevel> level_;
  int lo_ = 0, hi_ = 2;
  int radii_ = 4;
};

}  // namespace

std::unique_ptr<Scenario> make_mayer_vietoris() { return std::make_unique<MayerVietoris>(); }

}  // namespace coarse::scenarios
