#include <algorithm>

#include "coarse/errors.hpp"
#include "coarse/models.hpp"
#include "coarse/towers.hpp"
#include "scenarios/framework.hpp"

namespace coarse::scenarios {

namespace {

/// Renames vertex `from` to `to` and shrinks the id space to `vertex_count`; used to
/// identify a cone apex with the star centre it replaces.
SimplicialComplex rename_vertex(const SimplicialComplex& k, VertexId from, VertexId to, std::size_t vertex_count) {
  std::vector<std::vector<VertexId>> tables(static_cast<std::size_t>(k.dimension() + 1));
  for (int d = 0; d <= k.dimension(); ++d) {
    auto& t = tables[static_cast<std::size_t>(d)];
    for (std::size_t i = 0; i < k.count(d); ++i) {
      Simplex s(k.simplex(d, i).begin(), k.simplex(d, i).end());
      for (auto& v : s)
        if (v == from) v = to;
      std::sort(s.begin(), s.end());
      t.insert(t.end(), s.begin(), s.end());
    }
  }
  return SimplicialComplex::from_tables(vertex_count, std::move(tables), k.dimension_cap());
}

class SphereBlowup : public Scenario {
 public:
  void configure(ConfigTable& root) override {
    ConfigTable& s = root.table("sphere");
    subdivisions_ = static_cast<int>(s.integer("subdivisions", 2, 2, 4));
    stages_ = static_cast<std::size_t>(s.integer("stages", 5, 3, 6));
  }

  std::vector<std::string> complexes() const override {
    std::vector<std::string> out;
    for (std::size_t n = 0; n <= stages_; ++n) out.push_back("stage:" + std::to_string(n));
    return out;
  }

  SimplicialComplex complex(const std::string& which, Run&) override {
    for (std::size_t n = 0; n <= stages_; ++n)
      if (which == "stage:" + std::to_string(n)) return stage(subdivided_octahedron(subdivisions_), n);
    throw ConfigError("no complex named \"" + which + "\"; try stage:N with N in 0.." + std::to_string(stages_));
  }

  void run(Run& run) override {
    const SimplicialComplex sphere = run.stage("sphere", [&] { return subdivided_octahedron(subdivisions_); });
    run.results()["sphere"] = {{"subdivisions", subdivisions_},
                               {"vertices", sphere.count(0)},
                               {"edges", sphere.count(1)},
                               {"triangles", sphere.count(2)},
                               {"centers", centers(stages_)}};

    std::vector<SimplicialComplex> x;
    for (std::size_t n = 0; n <= stages_; ++n) x.push_back(stage(sphere, n));

    HomologyComputation::Options o;
    o.coefficients = run.common().coefficients;
    o.reduced = true;
    o.max_degree = 2;
    std::vector<HomologyComputation> h;
    run.stage("cohomology", [&] {
      for (const auto& k : x) h.emplace_back(k, o);
      return 0;
    });

    nlohmann::json stages = nlohmann::json::array();
    bool groups_ok = true;
    for (std::size_t n = 1; n <= stages_; ++n) {
      std::vector<FgAbGroup> g{h[n].group(0), h[n].group(1), h[n].group(2)};
      const FgAbGroup expected_h1 = coefficient_power(o.coefficients, n - 1);
      const bool ok = g[0].is_trivial() && g[2].is_trivial() && g[1] == expected_h1;
      groups_ok = groups_ok && ok;
      stages.push_back({{"n", n},
                        {"simplices", x[n].total_count()},
                        {"euler_characteristic", x[n].euler_characteristic()},
                        {"reduced_cohomology", groups_to_json(g)},
                        {"H1_rank", g[1].rank()}});
    }
    run.results()["stages"] = stages;
    run.check("reduced cohomology of each stage", "H~^0 = H~^2 = 0 and H~^1 = R^(n-1) for the sphere minus n stars",
              stages, groups_ok);

    // Restrictions H~^1(X_n) -> H~^1(X_{n+1}) along X_{n+1} ⊂ X_n.
    const DirectedSystem system = run.stage("directed system", [&] {
      std::vector<FgAbGroup> groups;
      std::vector<Homomorphism> maps;
      for (std::size_t n = 1; n <= stages_; ++n) groups.push_back(h[n].group(1));
      for (std::size_t n = 1; n < stages_; ++n) maps.push_back(restriction_map(h[n], h[n + 1], 1));
      return DirectedSystem(std::move(groups), std::move(maps));
    });
    const ColimResult c = colim(system);
    run.results()["colimit"] = c.to_json();
    run.check("directed system grows", "GROWING", c.to_json(), c.status == ColimResult::Status::Growing);

    // Coning off the link of the n-th centre restores X_{n-1}.
    nlohmann::json surgery = nlohmann::json::array();
    bool surgery_ok = true;
    run.stage("cone surgery", [&] {
      const auto cs = centers(stages_);
      for (std::size_t n = 1; n <= stages_; ++n) {
        const VertexId centre = cs[n - 1];
        const SimplicialComplex coned = attach_cone(x[n], link(sphere, centre));
        const SimplicialComplex renamed = rename_vertex(coned, static_cast<VertexId>(sphere.vertex_count()), centre,
                                                        sphere.vertex_count());
        const bool same = renamed == x[n - 1];
        const auto groups = cohomology(coned, o.coefficients, true, 2);
        bool groups_same = true;
        for (int q = 0; q <= 2; ++q) groups_same = groups_same && groups[q] == h[n - 1].group(q);
        surgery_ok = surgery_ok && same && groups_same;
        surgery.push_back({{"n", n}, {"center", centre}, {"equals_previous_stage", same},
                           {"cohomology", groups_to_json(groups)}, {"cohomology_matches", groups_same}});
      }
      return 0;
    });
    run.results()["cone_surgery"] = surgery;
    run.check("cone surgery restores the previous stage", "X_n ∪ cone(link c_n) = X_(n-1)", surgery, surgery_ok);
  }

 private:
  static std::vector<VertexId> centers(std::size_t n) {
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<VertexId>(i));
    return out;
  }

  SimplicialComplex stage(const SimplicialComplex& sphere, std::size_t n) const {
    return n == 0 ? sphere : remove_open_stars(sphere, centers(n));
  }

  int subdivisions_ = 2;
  std::size_t stages_ = 5;
};

}  // namespace

std::unique_ptr<Scenario> make_sphere_blowup() { return std::make_unique<SphereBlowup>(); }

}  // namespace coarse::scenarios
