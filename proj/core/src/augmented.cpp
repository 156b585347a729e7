#include "coarse/augmented.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "coarse/errors.hpp"
#include "coarse/hyperbolicity.hpp"

namespace coarse {

bool LabeledGraph::in_coset(std::size_t i, PointIndex v) const {
  const auto& m = coset_members.at(i - 1);
  return std::binary_search(m.begin(), m.end(), v);
}

PointIndex LabeledGraph::vertex(std::size_t i, PointIndex p, int l) const {
  const auto& m = coset_members.at(i - 1);
  auto it = std::lower_bound(m.begin(), m.end(), p);
  if (it == m.end() || *it != p) throw std::out_of_range("point is not in the coset");
  if (l < 0 || l > depth) throw std::out_of_range("level outside the horoball");
  if (l == 0) return p;
  return horo_offset[i - 1] + static_cast<PointIndex>((l - 1) * m.size() + (it - m.begin()));
}

bool LabeledGraph::in_horoball_interior(std::size_t i, PointIndex v) const {
  const auto& lab = labels[v];
  return lab.kind == VertexLabel::Kind::Horo && lab.coset == i;
}

nlohmann::json LabeledGraph::to_json() const {
  nlohmann::json vertices = nlohmann::json::array();
  for (const auto& lab : labels) {
    if (lab.kind == VertexLabel::Kind::Group) {
      vertices.push_back({{"kind", "grp"}, {"element", lab.point}});
    } else {
      vertices.push_back({{"kind", "horo"}, {"i", lab.coset}, {"p", lab.point}, {"l", lab.level}});
    }
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : graph.edges()) edges.push_back({e.u, e.v});
  nlohmann::json cosets = nlohmann::json::array();
  for (std::size_t i = 0; i < coset_members.size(); ++i) {
    cosets.push_back({{"i", i + 1}, {"representative", representatives[i]}, {"members", coset_members[i]}});
  }
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}, {"depth", depth},
          {"coset_index_map", std::move(cosets)}};
}

namespace {

/// Appends horoball i over `members` (group vertices) with pairwise base distances `dist`.
void attach_horoball(LabeledGraph& g, std::vector<Edge>& edges, std::size_t i, const std::vector<PointIndex>& members,
                     const std::vector<std::int64_t>& twice_dist, int depth) {
  const std::size_t m = members.size();
  const auto offset = static_cast<PointIndex>(g.labels.size());
  g.horo_offset.push_back(offset);
  for (int l = 1; l <= depth; ++l) {
    for (PointIndex p : members) {
      g.labels.push_back({VertexLabel::Kind::Horo, static_cast<std::uint32_t>(i), p, static_cast<std::uint32_t>(l)});
    }
  }
  auto at = [&](std::size_t k, int l) -> PointIndex {
    return l == 0 ? members[k] : offset + static_cast<PointIndex>((l - 1) * m + k);
  };
  for (int l = 0; l <= depth; ++l) {
    const std::int64_t reach_twice = std::int64_t{2} << l;  // 2 * 2^l
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        const std::int64_t d = twice_dist[a * m + b];
        if (d > 0 && d <= reach_twice) edges.push_back({at(a, l), at(b, l)});
      }
      if (l < depth) edges.push_back({at(a, l), at(a, l + 1)});
    }
  }
}

/// |e| in the word metric. Matrix groups fall back to the ball's graph distance between the two
/// coset members when e lies outside the ball (an upper bound, and beyond every horizontal reach
/// that matters once it exceeds the radius).
std::int64_t word_length(const CayleyBall& ball, const Element& e, PointIndex to, const std::vector<std::int32_t>& bfs_from) {
  switch (ball.spec.kind()) {
    case GroupKind::Free:
      return static_cast<std::int64_t>(e.size());
    case GroupKind::FreeAbelian: {
      std::int64_t s = 0;
      for (auto c : e) s += c < 0 ? -c : c;
      return s;
    }
    case GroupKind::IntegerMatrix: {
      const auto idx = ball.find(e);
      if (idx >= 0) return ball.length[static_cast<std::size_t>(idx)];
      return bfs_from[to];
    }
  }
  return 0;
}

}  // namespace

LabeledGraph combinatorial_horoball(const FiniteMetricSpace& base, int depth) {
  if (depth < 1) throw std::invalid_argument("horoball depth must be at least 1");
  const std::size_t n = base.size();
  LabeledGraph g;
  g.depth = depth;
  for (std::size_t p = 0; p < n; ++p) g.labels.push_back({VertexLabel::Kind::Group, 0, static_cast<std::uint32_t>(p), 0});
  std::vector<PointIndex> members(n);
  for (std::size_t p = 0; p < n; ++p) members[p] = static_cast<PointIndex>(p);
  std::vector<std::int64_t> dist(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) dist[a * n + b] = base.dist_twice(static_cast<PointIndex>(a), static_cast<PointIndex>(b));
  std::vector<Edge> edges;
  attach_horoball(g, edges, 1, members, dist, depth);
  g.coset_members.push_back(members);
  g.representatives.push_back(0);
  g.graph = Graph(g.labels.size(), edges);
  return g;
}

LabeledGraph augmented_space(const CayleyBall& ball, const CosetOrder& order, std::size_t n_horoballs, int depth) {
  if (n_horoballs > order.entries.size()) {
    throw CosetMissesBall("coset " + std::to_string(order.entries.size() + 1) +
                          " was not enumerated inside the ball of radius " + std::to_string(ball.radius));
  }
  if (n_horoballs > 0 && depth < 1) throw std::invalid_argument("horoball depth must be at least 1");
  LabeledGraph g;
  g.depth = n_horoballs > 0 ? depth : 0;
  for (std::size_t p = 0; p < ball.size(); ++p) {
    g.labels.push_back({VertexLabel::Kind::Group, 0, static_cast<std::uint32_t>(p), 0});
  }
  std::vector<Edge> edges = ball.graph.edges();
  const auto& spec = ball.spec;
  for (std::size_t e = 0; e < n_horoballs; ++e) {
    std::vector<std::uint32_t> raw = order.members(ball, e);
    if (raw.empty()) throw CosetMissesBall("coset " + std::to_string(e + 1) + " does not meet the ball");
    std::vector<PointIndex> members(raw.begin(), raw.end());
    const std::size_t m = members.size();
    std::vector<std::int64_t> dist(m * m, 0);
    for (std::size_t a = 0; a < m; ++a) {
      std::vector<std::int32_t> from_a;
      if (spec.kind() == GroupKind::IntegerMatrix) from_a = ball.graph.bfs(members[a]);
      const Element inv = spec.inverse(ball.elements[members[a]]);
      for (std::size_t b = a + 1; b < m; ++b) {
        const Element q = spec.multiply(inv, ball.elements[members[b]]);
        const std::int64_t d = word_length(ball, q, members[b], from_a);
        dist[a * m + b] = dist[b * m + a] = 2 * d;
      }
    }
    attach_horoball(g, edges, e + 1, members, dist, depth);
    g.coset_members.push_back(std::move(members));
    g.representatives.push_back(order.entries[e].representative);
  }
  g.graph = Graph(g.labels.size(), edges);
  return g;
}

GeodesicPath geodesic(const LabeledGraph& graph, PointIndex x, PointIndex y) { return graph.graph.geodesic(x, y); }

std::optional<PointIndex> last_exit(const LabeledGraph& graph, std::size_t i, const GeodesicPath& path) {
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    if (graph.labels[*it].kind == VertexLabel::Kind::Group && graph.in_coset(i, *it)) return *it;
  }
  return std::nullopt;
}

int basepoint_level(HalfInt delta0) { return static_cast<int>(delta0.floor()) + 2; }

PointIndex basepoint(const LabeledGraph& graph, std::size_t i, int level) {
  return graph.vertex(i, graph.representatives.at(i - 1), level);
}

std::vector<PointIndex> horizon_targets(const LabeledGraph& graph, std::size_t i, PointIndex e_i, int horizon,
                                        bool below_top) {
  const auto dist = graph.graph.bfs(e_i);
  auto candidate = [&](PointIndex v) {
    return !graph.in_horoball_interior(i, v) && !(below_top && graph.level(v) >= graph.depth);
  };
  std::int32_t threshold = horizon;
  if (horizon < 0) {
    threshold = 0;
    for (PointIndex v = 0; v < graph.size(); ++v)
      if (candidate(v)) threshold = std::max(threshold, dist[v]);
  }
  std::vector<PointIndex> out;
  for (PointIndex v = 0; v < graph.size(); ++v)
    if (candidate(v) && dist[v] >= threshold) out.push_back(v);
  return out;
}

namespace {

class DistanceCache {
 public:
  explicit DistanceCache(const Graph& g) : graph_(g) {}
  const std::vector<std::int32_t>& from(PointIndex v) {
    auto it = rows_.find(v);
    if (it == rows_.end()) it = rows_.emplace(v, graph_.bfs(v)).first;
    return it->second;
  }
  HalfInt dist(PointIndex a, PointIndex b) {
    const std::int32_t d = from(a)[b];
    if (d < 0) throw Disconnected("vertices lie in different components");
    return HalfInt(d);
  }

 private:
  const Graph& graph_;
  std::map<PointIndex, std::vector<std::int32_t>> rows_;
};

Projection project(const LabeledGraph& graph, std::size_t i, PointIndex x, const std::vector<PointIndex>& targets,
                   HalfInt delta0, const std::vector<std::int32_t>& dist_e, const std::vector<std::int32_t>& dist_x) {
  if (graph.in_horoball_interior(i, x)) throw std::invalid_argument("x lies inside horoball i");
  std::int64_t best_twice = -1;
  for (PointIndex t : targets) {
    if (dist_e[t] < 0) continue;
    GeodesicPath path = graph.graph.geodesic_from(dist_e, t);
    std::int32_t near = -1;
    for (PointIndex v : path)
      if (dist_x[v] >= 0 && (near < 0 || dist_x[v] < near)) near = dist_x[v];
    if (near < 0) continue;
    const std::int64_t near_twice = 2 * static_cast<std::int64_t>(near);
    if (best_twice < 0 || near_twice < best_twice) best_twice = near_twice;
    if (near_twice <= 2 * delta0.twice()) {
      auto exit = last_exit(graph, i, path);
      if (!exit) continue;
      return {*exit, t, HalfInt(near), std::move(path)};
    }
  }
  throw NoWitnessGeodesic("no far target's geodesic passes within 2*delta0 = " + (2 * delta0).str() + " of vertex " +
                          std::to_string(x) + "; best proximity " +
                          (best_twice < 0 ? std::string("none") : HalfInt::from_twice(best_twice).str()));
}

bool touches_top(const LabeledGraph& graph, const GeodesicPath& path) {
  return std::any_of(path.begin(), path.end(), [&](PointIndex v) { return graph.level(v) >= graph.depth; });
}

}  // namespace

Projection boundary_projection(const LabeledGraph& graph, std::size_t i, PointIndex e_i, PointIndex x,
                               const std::vector<PointIndex>& far_targets, HalfInt delta0) {
  if (far_targets.empty()) throw std::invalid_argument("far target set is empty");
  std::vector<PointIndex> sorted = far_targets;
  std::sort(sorted.begin(), sorted.end());
  return project(graph, i, x, sorted, delta0, graph.graph.bfs(e_i), graph.graph.bfs(x));
}

std::string to_string(InequalityRecord::Kind kind) {
  switch (kind) {
    case InequalityRecord::Kind::Contraction: return "contraction";
    case InequalityRecord::Kind::Retraction: return "retraction";
    case InequalityRecord::Kind::Lipschitz: return "lipschitz";
  }
  return "?";
}

std::size_t ProjectionReport::count(InequalityRecord::Kind kind) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [&](const auto& r) { return r.kind == kind; }));
}

std::size_t ProjectionReport::violations() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.violated(); }));
}

std::size_t ProjectionReport::untrusted() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.trusted; }));
}

HalfInt ProjectionReport::max_excess(InequalityRecord::Kind kind) const {
  std::optional<HalfInt> best;
  for (const auto& r : records) {
    if (r.kind != kind) continue;
    const HalfInt excess = r.lhs - r.distance;
    if (!best || excess > *best) best = excess;
  }
  return best.value_or(HalfInt(0));
}

nlohmann::json ProjectionReport::to_json(bool include_records) const {
  using K = InequalityRecord::Kind;
  nlohmann::json per_kind = nlohmann::json::object();
  for (K k : {K::Contraction, K::Retraction, K::Lipschitz}) {
    std::size_t bad = 0;
    for (const auto& r : records)
      if (r.kind == k && r.violated()) ++bad;
    per_kind[to_string(k)] = {{"checked", count(k)}, {"violations", bad}, {"max_excess", max_excess(k).to_json()}};
  }
  nlohmann::json j{{"coset", coset},
                   {"basepoint", basepoint},
                   {"basepoint_level", basepoint_level},
                   {"delta0", delta0.to_json()},
                   {"delta0_is_lower_estimate", true},
                   {"far_targets", far_target_count},
                   {"inequalities", per_kind},
                   {"violations", violations()},
                   {"untrusted", untrusted()},
                   {"skipped", skipped.size()}};
  if (include_records) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : records) {
      rows.push_back({{"kind", to_string(r.kind)}, {"sample", r.sample}, {"x", r.x}, {"y", r.y},
                      {"d", r.distance.to_json()}, {"lhs", r.lhs.to_json()}, {"rhs", r.rhs.to_json()},
                      {"slack", r.slack().to_json()}, {"trusted", r.trusted}});
    }
    j["records"] = std::move(rows);
    nlohmann::json skip = nlohmann::json::array();
    for (const auto& [s, why] : skipped) skip.push_back({{"sample", s}, {"reason", why}});
    j["skipped_samples"] = std::move(skip);
  }
  return j;
}

std::string ProjectionReport::to_csv() const {
  std::ostringstream os;
  os << "kind,sample,x,y,d,lhs,rhs,slack,trusted\n";
  for (const auto& r : records) {
    os << to_string(r.kind) << ',' << r.sample << ',' << r.x << ',' << r.y << ',' << r.distance << ',' << r.lhs
       << ',' << r.rhs << ',' << r.slack() << ',' << (r.trusted ? 1 : 0) << '\n';
  }
  return os.str();
}

ProjectionReport verify_projection_bounds(const LabeledGraph& graph, std::size_t i, PointIndex e_i,
                                          const std::vector<std::pair<PointIndex, PointIndex>>& pairs,
                                          const std::vector<PointIndex>& coset_points,
                                          const std::vector<PointIndex>& far_targets, HalfInt delta0) {
  using K = InequalityRecord::Kind;
  ProjectionReport rep;
  rep.coset = i;
  rep.basepoint = e_i;
  rep.basepoint_level = graph.level(e_i);
  rep.delta0 = delta0;
  rep.far_target_count = far_targets.size();
  std::vector<PointIndex> targets = far_targets;
  std::sort(targets.begin(), targets.end());

  DistanceCache cache(graph.graph);
  const auto& dist_e = cache.from(e_i);
  std::map<PointIndex, std::optional<Projection>> projections;
  std::map<PointIndex, std::string> failures;
  auto projection_of = [&](PointIndex x) -> const std::optional<Projection>& {
    auto it = projections.find(x);
    if (it != projections.end()) return it->second;
    std::optional<Projection> p;
    try {
      p = project(graph, i, x, targets, delta0, dist_e, cache.from(x));
    } catch (const NoWitnessGeodesic& err) {
      failures[x] = err.what();
    }
    return projections.emplace(x, std::move(p)).first->second;
  };

  const HalfInt two = 2 * delta0, six = 6 * delta0, ten = 10 * delta0;
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    const auto [x, y] = pairs[s];
    const HalfInt d = cache.dist(x, y);
    // contraction along the geodesics from e_i to x and to y
    const GeodesicPath lx = graph.graph.geodesic_from(dist_e, x);
    const GeodesicPath ly = graph.graph.geodesic_from(dist_e, y);
    const auto ex = last_exit(graph, i, lx);
    const auto ey = last_exit(graph, i, ly);
    if (ex && ey) {
      rep.records.push_back({K::Contraction, s, x, y, d, cache.dist(*ex, *ey), d + two,
                             !touches_top(graph, lx) && !touches_top(graph, ly)});
    } else {
      rep.skipped.emplace_back(s, "geodesic from the basepoint never meets the coset");
    }
    const auto& px = projection_of(x);
    const auto& py = projection_of(y);
    if (px && py) {
      const bool trusted = !touches_top(graph, px->path) && !touches_top(graph, py->path);
      rep.records.push_back({K::Lipschitz, s, x, y, d, cache.dist(px->vertex, py->vertex), d + ten, trusted});
    } else {
      rep.skipped.emplace_back(s, failures.count(px ? y : x) ? failures[px ? y : x] : "no projection");
    }
  }
  for (std::size_t s = 0; s < coset_points.size(); ++s) {
    const PointIndex x = coset_points[s];
    const auto& px = projection_of(x);
    if (!px) {
      rep.skipped.emplace_back(pairs.size() + s, failures[x]);
      continue;
    }
    rep.records.push_back({K::Retraction, pairs.size() + s, x, px->vertex, HalfInt(0), cache.dist(x, px->vertex), six,
                           !touches_top(graph, px->path)});
  }
  return rep;
}

std::vector<PointIndex> trusted_vertices(const LabeledGraph& graph, const CayleyBall& ball, std::size_t i, int radius,
                                         int max_level) {
  std::vector<PointIndex> out;
  for (PointIndex v = 0; v < graph.size(); ++v) {
    const auto& lab = graph.labels[v];
    if (ball.length[lab.point] > radius) continue;
    if (lab.kind == VertexLabel::Kind::Horo && (lab.coset == i || static_cast<int>(lab.level) > max_level)) continue;
    out.push_back(v);
  }
  return out;
}

std::vector<std::pair<PointIndex, PointIndex>> sample_pairs(const std::vector<PointIndex>& pool, std::uint64_t seed,
                                                            std::size_t count) {
  std::vector<std::pair<PointIndex, PointIndex>> out;
  if (pool.empty()) return out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    out.emplace_back(pool[counter_hash(seed, 2 * s) % pool.size()], pool[counter_hash(seed, 2 * s + 1) % pool.size()]);
  }
  return out;
}

}  // namespace coarse
