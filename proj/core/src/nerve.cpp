#include "coarse/nerve.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <stdexcept>
#include <string>

#include "coarse/errors.hpp"

namespace coarse {

std::vector<std::vector<VertexId>> Cover::incidence() const {
  std::vector<std::vector<VertexId>> inc(point_count);
  for (std::size_t m = 0; m < members.size(); ++m)
    for (PointIndex p : members[m]) inc[p].push_back(static_cast<VertexId>(m));
  return inc;
}

nlohmann::json Cover::to_json() const {
  std::size_t largest = 0;
  for (const auto& m : members) largest = std::max(largest, m.size());
  nlohmann::json j{{"members", members.size()},
                   {"largest_member", largest},
                   {"max_diameter", max_diameter.to_json()},
                   {"certified", certified}};
  if (!centers.empty()) {
    j["C"] = c.to_json();
    j["k"] = k;
    j["radius"] = radius.to_json();
    j["diameter_bound"] = diameter_bound.to_json();
    j["lebesgue_bound"] = lebesgue_bound.to_json();
  }
  return j;
}

namespace {

HalfInt member_diameter(const FiniteMetricSpace& space, const PointSet& m) {
  std::int32_t best = 0;
  for (std::size_t a = 0; a < m.size(); ++a) {
    const std::int32_t* row = space.row_twice(m[a]);
    for (std::size_t b = a + 1; b < m.size(); ++b) best = std::max(best, row[m[b]]);
  }
  return HalfInt::from_twice(best);
}

}  // namespace

Cover anti_cech_cover(const FiniteMetricSpace& space, const PointSet& net, HalfInt c, int k) {
  if (k < 1) throw std::invalid_argument("anti-Čech scale k must be at least 1");
  if (net.empty()) throw EmptySubset("cover centre set is empty");
  const std::size_t n = space.size();
  Cover cover;
  cover.point_count = n;
  cover.c = c;
  cover.k = k;
  cover.radius = (k + 1) * c;
  cover.diameter_bound = 2 * cover.radius;
  cover.lebesgue_bound = k * c;
  cover.centers = net;
  std::sort(cover.centers.begin(), cover.centers.end());
  const std::int64_t r2 = cover.radius.twice();
  const std::int64_t c2 = c.twice();
  const std::int64_t leb2 = cover.lebesgue_bound.twice();

  for (PointIndex z : cover.centers) {
    PointSet m;
    const std::int32_t* row = space.row_twice(z);
    for (PointIndex y = 0; y < n; ++y)
      if (row[y] <= r2) m.push_back(y);
    cover.members.push_back(std::move(m));
  }

  for (std::size_t i = 0; i < cover.members.size(); ++i) {
    const HalfInt d = member_diameter(space, cover.members[i]);
    if (d > cover.diameter_bound) {
      throw BoundViolation("member " + std::to_string(i) + " has diameter " + d.str() + " > " +
                           cover.diameter_bound.str());
    }
    cover.max_diameter = std::max(cover.max_diameter, d);
  }

  // Every ball B(x, kC) must sit inside one member; members near x are tried first.
  std::vector<std::pair<std::int32_t, std::size_t>> near;
  std::vector<PointIndex> ball;
  for (PointIndex x = 0; x < n; ++x) {
    const std::int32_t* row = space.row_twice(x);
    near.clear();
    ball.clear();
    for (std::size_t i = 0; i < cover.centers.size(); ++i) {
      const std::int32_t d = row[cover.centers[i]];
      if (d <= r2) near.emplace_back(d, i);
    }
    if (near.empty() || std::min_element(near.begin(), near.end())->first > c2) {
      throw BoundViolation("point " + std::to_string(x) + " is farther than C from every centre");
    }
    for (PointIndex y = 0; y < n; ++y)
      if (row[y] <= leb2) ball.push_back(y);
    std::sort(near.begin(), near.end());
    bool inside = false;
    for (const auto& [d, i] : near) {
      const std::int32_t* zrow = space.row_twice(cover.centers[i]);
      inside = std::all_of(ball.begin(), ball.end(), [&](PointIndex y) { return zrow[y] <= r2; });
      if (inside) break;
    }
    if (!inside) {
      throw BoundViolation("ball of radius " + cover.lebesgue_bound.str() + " around point " + std::to_string(x) +
                           " lies in no member");
    }
  }
  cover.certified = true;
  return cover;
}

Cover cover_from_members(std::size_t point_count, std::vector<PointSet> members) {
  Cover cover;
  cover.point_count = point_count;
  std::vector<char> seen(point_count, 0);
  for (auto& m : members) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    if (m.empty()) throw std::invalid_argument("cover member is empty");
    if (m.back() >= point_count) throw std::invalid_argument("cover member leaves the space");
    for (auto p : m) seen[p] = 1;
  }
  for (std::size_t p = 0; p < point_count; ++p)
    if (!seen[p]) throw std::invalid_argument("point " + std::to_string(p) + " is not covered");
  cover.members = std::move(members);
  return cover;
}

HalfInt ball_lebesgue_number(const FiniteMetricSpace& space, const Cover& cover) {
  const std::size_t n = space.size();
  const auto inc = cover.incidence();
  std::vector<char> in(n);
  std::int64_t result = -1;
  for (PointIndex x = 0; x < n; ++x) {
    const std::int32_t* row = space.row_twice(x);
    std::int64_t best = -1;
    for (VertexId m : inc[x]) {
      std::fill(in.begin(), in.end(), 0);
      for (auto p : cover.members[m]) in[p] = 1;
      std::int64_t escape = -1;  // distance to the nearest point outside the member
      for (PointIndex y = 0; y < n; ++y)
        if (!in[y] && (escape < 0 || row[y] < escape)) escape = row[y];
      std::int64_t reach = 0;  // largest realised distance strictly below the escape
      for (PointIndex y = 0; y < n; ++y)
        if ((escape < 0 || row[y] < escape) && row[y] > reach) reach = row[y];
      best = std::max(best, reach);
    }
    result = result < 0 ? best : std::min(result, best);
  }
  return HalfInt::from_twice(std::max<std::int64_t>(result, 0));
}

namespace {

bool binomial_exceeds(std::size_t m, std::size_t r, std::size_t limit) {
  long double b = 1;
  for (std::size_t i = 0; i < r; ++i) {
    b = b * static_cast<long double>(m - i) / static_cast<long double>(i + 1);
    if (b > static_cast<long double>(limit)) return true;
  }
  return false;
}

}  // namespace

SimplicialComplex nerve_complex(const Cover& cover, int cap, std::size_t simplex_cap) {
  if (cap < 0) throw std::invalid_argument("nerve dimension cap must be non-negative");
  auto families = cover.incidence();
  std::sort(families.begin(), families.end());
  families.erase(std::unique(families.begin(), families.end()), families.end());

  const auto width = static_cast<std::size_t>(cap) + 1;
  std::vector<std::vector<VertexId>> tables(width);
  std::vector<std::size_t> sorted_upto(width, 0);
  auto compact = [&](std::size_t d) {
    auto& t = tables[d];
    const std::size_t w = d + 1;
    std::vector<std::size_t> order(t.size() / w);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto less = [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(t.begin() + a * w, t.begin() + (a + 1) * w, t.begin() + b * w,
                                          t.begin() + (b + 1) * w);
    };
    auto same = [&](std::size_t a, std::size_t b) { return std::equal(t.begin() + a * w, t.begin() + (a + 1) * w, t.begin() + b * w); };
    std::sort(order.begin(), order.end(), less);
    std::vector<VertexId> out;
    out.reserve(t.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i > 0 && same(order[i], order[i - 1])) continue;
      out.insert(out.end(), t.begin() + order[i] * w, t.begin() + (order[i] + 1) * w);
    }
    t = std::move(out);
    sorted_upto[d] = t.size();
  };
  auto total = [&] {
    std::size_t s = 0;
    for (std::size_t d = 0; d < width; ++d) s += tables[d].size() / (d + 1);
    return s;
  };

  std::vector<std::size_t> idx;
  for (const auto& fam : families) {
    const std::size_t m = fam.size();
    for (std::size_t size = 1; size <= std::min(m, width); ++size) {
      auto& t = tables[size - 1];
      idx.resize(size);
      for (std::size_t i = 0; i < size; ++i) idx[i] = i;
      // The subsets of one family are distinct simplices, so a large binomial alone decides.
      if (binomial_exceeds(m, size, simplex_cap)) {
        throw SimplexExplosion("nerve exceeds the simplex cap of " + std::to_string(simplex_cap));
      }
      while (true) {
        for (std::size_t i = 0; i < size; ++i) t.push_back(fam[idx[i]]);
        if (t.size() / size > 2 * simplex_cap + sorted_upto[size - 1]) {
          compact(size - 1);
          if (total() > simplex_cap) {
            throw SimplexExplosion("nerve exceeds the simplex cap of " + std::to_string(simplex_cap));
          }
        }
        std::size_t pos = size;
        while (pos > 0 && idx[pos - 1] == m - size + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
  }
  for (std::size_t d = 0; d < width; ++d) compact(d);
  const std::size_t count = total();
  if (count > simplex_cap) {
    throw SimplexExplosion("nerve has " + std::to_string(count) + " simplices, cap " + std::to_string(simplex_cap));
  }
  while (!tables.empty() && tables.back().empty()) tables.pop_back();
  return SimplicialComplex::from_tables(cover.size(), std::move(tables), cap);
}

SimplicialMap coarsening_map(const Cover& fine, const Cover& coarse) {
  if (fine.point_count != coarse.point_count) throw ShapeMismatch("covers live on different spaces");
  const auto inc = coarse.incidence();
  SimplicialMap f;
  f.table.resize(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const auto& u = fine.members[i];
    bool found = false;
    if (!fine.centers.empty() && !coarse.centers.empty()) {
      const auto it = std::lower_bound(coarse.centers.begin(), coarse.centers.end(), fine.centers[i]);
      if (it != coarse.centers.end() && *it == fine.centers[i]) {
        const auto same = static_cast<VertexId>(it - coarse.centers.begin());
        const auto& v = coarse.members[same];
        if (std::includes(v.begin(), v.end(), u.begin(), u.end())) {
          f.table[i] = same;
          found = true;
        }
      }
    }
    for (VertexId cand : inc[u.front()]) {
      if (found) break;
      const auto& v = coarse.members[cand];
      if (std::includes(v.begin(), v.end(), u.begin(), u.end())) {
        f.table[i] = cand;
        found = true;
        break;
      }
    }
    if (!found) throw NoContainingMember("fine member " + std::to_string(i) + " lies in no coarse member");
  }
  return f;
}

SimplicialMap coarsening_map_last(const Cover& fine, const Cover& coarse) {
  if (fine.point_count != coarse.point_count) throw ShapeMismatch("covers live on different spaces");
  const auto inc = coarse.incidence();
  SimplicialMap f;
  f.table.resize(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const auto& u = fine.members[i];
    const auto& cands = inc[u.front()];
    auto it = std::find_if(cands.rbegin(), cands.rend(), [&](VertexId cand) {
      const auto& v = coarse.members[cand];
      return std::includes(v.begin(), v.end(), u.begin(), u.end());
    });
    if (it == cands.rend()) throw NoContainingMember("fine member " + std::to_string(i) + " lies in no coarse member");
    f.table[i] = *it;
  }
  return f;
}

bool contiguous_through_cover(const SimplicialMap& f, const SimplicialMap& g, const SimplicialComplex& domain,
                              const Cover& coarse) {
  if (f.table.size() != g.table.size() || f.table.size() < domain.vertex_count())
    throw ShapeMismatch("maps do not share the domain");
  PointSet common, next;
  std::vector<VertexId> targets;
  for (int d = 0; d <= domain.dimension(); ++d) {
    for (std::size_t i = 0; i < domain.count(d); ++i) {
      targets.clear();
      for (VertexId v : domain.simplex(d, i)) {
        targets.push_back(f.table[v]);
        targets.push_back(g.table[v]);
      }
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      common = coarse.members[targets.front()];
      for (std::size_t t = 1; t < targets.size() && !common.empty(); ++t) {
        const auto& m = coarse.members[targets[t]];
        next.clear();
        std::set_intersection(common.begin(), common.end(), m.begin(), m.end(), std::back_inserter(next));
        common.swap(next);
      }
      if (common.empty()) return false;
    }
  }
  return true;
}

SimplicialComplex subcomplex_meeting(const Cover& cover, const SimplicialComplex& nerve, const PointSet& l) {
  std::vector<char> mask(nerve.vertex_count(), 0);
  std::vector<char> in_l(cover.point_count, 0);
  for (auto p : l) in_l[p] = 1;
  for (std::size_t m = 0; m < cover.size(); ++m)
    mask[m] = std::any_of(cover.members[m].begin(), cover.members[m].end(), [&](PointIndex p) { return in_l[p] != 0; });
  return nerve.full_subcomplex(mask);
}

SimplicialComplex end_subcomplex(const Cover& cover, const SimplicialComplex& nerve, const FiniteMetricSpace& space,
                                 HalfInt core_radius, PointIndex basepoint) {
  const std::int32_t* row = space.row_twice(basepoint);
  std::vector<char> mask(nerve.vertex_count(), 0);
  for (std::size_t m = 0; m < cover.size(); ++m) {
    mask[m] = std::any_of(cover.members[m].begin(), cover.members[m].end(),
                          [&](PointIndex p) { return row[p] > core_radius.twice(); });
  }
  return nerve.full_subcomplex(mask);
}

std::vector<ScaleLevel> default_schedule(HalfInt c, int k1, std::size_t levels) {
  std::vector<ScaleLevel> out;
  int k = k1;
  for (std::size_t j = 0; j < levels; ++j) {
    out.push_back({c, k});
    k = 2 * k + 2;
  }
  return out;
}

bool AntiCechSystem::lebesgue_dominates() const {
  for (std::size_t j = 0; j + 1 < levels.size(); ++j)
    if (lebesgue_bounds[j + 1] < diameter_bounds[j]) return false;
  return true;
}

nlohmann::json AntiCechSystem::to_json() const {
  nlohmann::json lv = nlohmann::json::array();
  for (std::size_t j = 0; j < levels.size(); ++j) {
    auto cj = covers[j].to_json();
    cj["level"] = j + 1;
    lv.push_back(std::move(cj));
  }
  return {{"levels", std::move(lv)}, {"lebesgue_dominates_previous_diameter", lebesgue_dominates()},
          {"refinement_verified", maps.size() + 1 == covers.size()}};
}

AntiCechSystem anti_cech_system(const FiniteMetricSpace& space, const std::vector<ScaleLevel>& levels) {
  AntiCechSystem sys;
  sys.levels = levels;
  std::map<std::int64_t, PointSet> nets;
  for (const auto& lv : levels) {
    auto it = nets.find(lv.c.twice());
    if (it == nets.end()) it = nets.emplace(lv.c.twice(), greedy_net(space, lv.c)).first;
    sys.covers.push_back(anti_cech_cover(space, it->second, lv.c, lv.k));
    sys.diameter_bounds.push_back(sys.covers.back().diameter_bound);
    sys.lebesgue_bounds.push_back(sys.covers.back().lebesgue_bound);
  }
  for (std::size_t j = 0; j + 1 < sys.covers.size(); ++j) sys.maps.push_back(coarsening_map(sys.covers[j], sys.covers[j + 1]));
  return sys;
}

}  // namespace coarse
