#include "coarse/metric.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

std::int64_t parse_int(std::string_view s, const char* what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string("cannot parse ") + what + ": '" + std::string(s) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

HalfInt HalfInt::parse(const std::string& text) {
  std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    if (trim(s.substr(slash + 1)) != "2") throw ParseError("half-integer denominator must be 2: " + text);
    return from_twice(parse_int(trim(s.substr(0, slash)), "half-integer"));
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    while (!frac.empty() && frac.back() == '0') frac.remove_suffix(1);
    bool negative = !whole.empty() && whole.front() == '-';
    std::int64_t w = (whole.empty() || whole == "-") ? 0 : parse_int(whole, "half-integer");
    std::int64_t twice = 2 * w;
    if (frac == "5") {
      twice += negative ? -1 : 1;
    } else if (!frac.empty()) {
      throw ParseError("not a half-integer: " + text);
    }
    return from_twice(twice);
  }
  return HalfInt(parse_int(s, "half-integer"));
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  std::string sign = twice_ < 0 ? "-" : "";
  std::int64_t a = twice_ < 0 ? -twice_ : twice_;
  return sign + std::to_string(a / 2) + ".5";
}

nlohmann::json HalfInt::to_json() const {
  if (is_integer()) return twice_ / 2;
  return static_cast<double>(twice_) / 2.0;
}

std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

FiniteMetricSpace::FiniteMetricSpace(std::size_t n, std::vector<std::int32_t> twice)
    : n_(n), twice_(std::move(twice)) {
  if (twice_.size() != n_ * n_) throw InvalidMetric("distance matrix has wrong size");
  for (std::size_t i = 0; i < n_; ++i) {
    if (twice_[i * n_ + i] != 0) throw InvalidMetric("nonzero diagonal at point " + std::to_string(i));
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (twice_[i * n_ + j] != twice_[j * n_ + i]) {
        throw InvalidMetric("asymmetric distances at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (twice_[i * n_ + j] <= 0) {
        throw InvalidMetric("non-positive distance at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

HalfInt FiniteMetricSpace::diameter() const {
  std::int32_t best = 0;
  for (std::int32_t v : twice_) best = std::max(best, v);
  return HalfInt::from_twice(best);
}

HalfInt FiniteMetricSpace::dist_to_set(PointIndex x, const PointSet& a) const {
  if (a.empty()) throw EmptySubset("distance to empty set");
  const std::int32_t* row = row_twice(x);
  std::int32_t best = std::numeric_limits<std::int32_t>::max();
  for (PointIndex p : a) best = std::min(best, row[p]);
  return HalfInt::from_twice(best);
}

std::optional<std::array<PointIndex, 3>> FiniteMetricSpace::find_triangle_violation() const {
  for (std::size_t i = 0; i < n_; ++i) {
    const std::int32_t* ri = row_twice(static_cast<PointIndex>(i));
    for (std::size_t k = 0; k < n_; ++k) {
      const std::int32_t dik = ri[k];
      const std::int32_t* rk = row_twice(static_cast<PointIndex>(k));
      for (std::size_t j = 0; j < n_; ++j) {
        if (ri[j] > dik + rk[j]) {
          return std::array<PointIndex, 3>{static_cast<PointIndex>(i), static_cast<PointIndex>(j),
                                           static_cast<PointIndex>(k)};
        }
      }
    }
  }
  return std::nullopt;
}

void FiniteMetricSpace::check_triangle_inequality() const {
  if (auto v = find_triangle_violation()) {
    throw InvalidMetric("triangle inequality fails for d(" + std::to_string((*v)[0]) + "," +
                        std::to_string((*v)[1]) + ") via " + std::to_string((*v)[2]));
  }
}

FiniteMetricSpace FiniteMetricSpace::restrict_to(const PointSet& points) const {
  const std::size_t m = points.size();
  std::vector<std::int32_t> t(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t[i * m + j] = dist_twice(points[i], points[j]);
  return FiniteMetricSpace(m, std::move(t));
}

FiniteMetricSpace graph_metric(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<PointIndex>> adj(n);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) continue;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<std::int32_t> twice(n * n, -1);
  std::vector<PointIndex> queue(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::int32_t* row = twice.data() + s * n;
    std::size_t head = 0, tail = 0;
    row[s] = 0;
    queue[tail++] = static_cast<PointIndex>(s);
    while (head < tail) {
      PointIndex x = queue[head++];
      for (PointIndex y : adj[x]) {
        if (row[y] < 0) {
          row[y] = row[x] + 2;
          queue[tail++] = y;
        }
      }
    }
    if (tail != n) {
      for (std::size_t y = 0; y < n; ++y) {
        if (row[y] < 0) {
          throw DisconnectedGraph("graph is disconnected: no path from vertex " + std::to_string(s) +
                                  " to vertex " + std::to_string(y));
        }
      }
    }
  }
  return FiniteMetricSpace(n, std::move(twice));
}

PointSet penumbra(const FiniteMetricSpace& space, const PointSet& a, HalfInt radius) {
  if (a.empty()) throw EmptySubset("penumbra of empty set");
  const std::size_t n = space.size();
  const auto r = static_cast<std::int32_t>(radius.twice());
  std::vector<char> in(n, 0);
  for (PointIndex p : a) {
    const std::int32_t* row = space.row_twice(p);
    for (std::size_t x = 0; x < n; ++x)
      if (row[x] <= r) in[x] = 1;
  }
  PointSet out;
  for (std::size_t x = 0; x < n; ++x)
    if (in[x]) out.push_back(static_cast<PointIndex>(x));
  return out;
}

PointSet greedy_net(const FiniteMetricSpace& space, HalfInt c, std::optional<HalfInt> separation) {
  HalfInt sep = separation.value_or(c);
  if (sep > c) throw std::invalid_argument("net separation must not exceed the covering radius");
  if (sep < HalfInt(0)) throw std::invalid_argument("net separation must be non-negative");
  const std::size_t n = space.size();
  const auto s = static_cast<std::int32_t>(sep.twice());
  std::vector<char> blocked(n, 0);
  PointSet net;
  for (std::size_t x = 0; x < n; ++x) {
    if (blocked[x]) continue;
    net.push_back(static_cast<PointIndex>(x));
    const std::int32_t* row = space.row_twice(static_cast<PointIndex>(x));
    for (std::size_t y = x + 1; y < n; ++y)
      if (row[y] <= s) blocked[y] = 1;
  }
  return net;
}

nlohmann::json ExcisiveProfile::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    rows.push_back({{"R", radii[i].to_json()}, {"S", min_s[i] ? min_s[i]->to_json() : nlohmann::json("UNBOUNDED")}});
  }
  return rows;
}

ExcisiveProfile omega_excisive_profile(const FiniteMetricSpace& space, const PointSet& a, const PointSet& b,
                                       const std::vector<HalfInt>& radii) {
  const std::size_t n = space.size();
  std::vector<char> in_a(n, 0), in_b(n, 0);
  for (PointIndex p : a) in_a.at(p) = 1;
  for (PointIndex p : b) in_b.at(p) = 1;
  for (std::size_t x = 0; x < n; ++x) {
    if (!in_a[x] && !in_b[x]) {
      throw NotADecomposition("point " + std::to_string(x) + " lies in neither A nor B");
    }
  }
  PointSet ab;
  for (std::size_t x = 0; x < n; ++x)
    if (in_a[x] && in_b[x]) ab.push_back(static_cast<PointIndex>(x));

  // Distances to A, B and A∩B once; each radius is then a linear scan.
  std::vector<std::int32_t> da(n), db(n), dab(n, -1);
  for (std::size_t x = 0; x < n; ++x) {
    da[x] = static_cast<std::int32_t>(space.dist_to_set(static_cast<PointIndex>(x), a).twice());
    db[x] = static_cast<std::int32_t>(space.dist_to_set(static_cast<PointIndex>(x), b).twice());
    if (!ab.empty()) dab[x] = static_cast<std::int32_t>(space.dist_to_set(static_cast<PointIndex>(x), ab).twice());
  }
  ExcisiveProfile prof;
  prof.radii = radii;
  for (HalfInt r : radii) {
    const auto rt = r.twice();
    bool any = false;
    std::int32_t worst = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (da[x] <= rt && db[x] <= rt) {
        any = true;
        worst = std::max(worst, dab[x]);
      }
    }
    if (any && ab.empty()) {
      prof.min_s.push_back(std::nullopt);
    } else {
      prof.min_s.push_back(HalfInt::from_twice(worst));
    }
  }
  return prof;
}

void MapSample::validate() const {
  if (!domain || !codomain) throw std::invalid_argument("map sample without domain or codomain");
  if (table.size() != domain->size()) throw std::invalid_argument("map sample is not total");
  for (PointIndex y : table)
    if (y >= codomain->size()) throw std::invalid_argument("map sample leaves the codomain");
}

MapSample MapSample::compose_after(const MapSample& inner) const {
  if (inner.codomain != domain && !(inner.codomain && domain && *inner.codomain == *domain)) {
    throw DomainMismatch("composition of maps with mismatched spaces");
  }
  MapSample out{inner.domain, codomain, {}};
  out.table.reserve(inner.table.size());
  for (PointIndex x : inner.table) out.table.push_back(table.at(x));
  return out;
}

std::vector<std::pair<HalfInt, HalfInt>> expansion_profile(const MapSample& f, const std::vector<HalfInt>& radii) {
  f.validate();
  const FiniteMetricSpace& x = *f.domain;
  const FiniteMetricSpace& y = *f.codomain;
  // best[d] = max image distance over pairs at (twice) domain distance exactly d.
  std::vector<std::int32_t> best(static_cast<std::size_t>(x.diameter().twice()) + 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::int32_t* row = x.row_twice(static_cast<PointIndex>(i));
    const std::int32_t* img = y.row_twice(f.table[i]);
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      auto& slot = best[static_cast<std::size_t>(row[j])];
      slot = std::max(slot, img[f.table[j]]);
    }
  }
  for (std::size_t d = 1; d < best.size(); ++d) best[d] = std::max(best[d], best[d - 1]);
  std::vector<std::pair<HalfInt, HalfInt>> out;
  for (HalfInt r : radii) {
    if (r < HalfInt(0)) throw std::invalid_argument("negative radius");
    std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(r.twice()), best.size() - 1);
    out.emplace_back(r, HalfInt::from_twice(best[idx]));
  }
  return out;
}

HalfInt closeness(const MapSample& f, const MapSample& g) {
  f.validate();
  g.validate();
  auto same = [](const std::shared_ptr<const FiniteMetricSpace>& a, const std::shared_ptr<const FiniteMetricSpace>& b) {
    return a == b || *a == *b;
  };
  if (!same(f.domain, g.domain) || !same(f.codomain, g.codomain)) {
    throw DomainMismatch("closeness requires maps with the same domain and codomain");
  }
  std::int32_t worst = 0;
  for (std::size_t s = 0; s < f.table.size(); ++s) worst = std::max(worst, f.codomain->dist_twice(f.table[s], g.table[s]));
  return HalfInt::from_twice(worst);
}

FiniteMetricSpace read_distance_csv(std::istream& in) {
  std::string line;
  int scale = 1;
  std::vector<std::vector<std::int64_t>> rows;
  while (std::getline(in, line)) {
    std::string_view s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '#') {
      std::string_view body = trim(s.substr(1));
      if (body.rfind("scale=", 0) == 0) {
        scale = static_cast<int>(parse_int(trim(body.substr(6)), "scale"));
        if (scale != 1 && scale != 2) throw ParseError("scale must be 1 or 2");
      }
      continue;
    }
    std::vector<std::int64_t> row;
    std::size_t start = 0;
    while (start <= s.size()) {
      std::size_t comma = s.find(',', start);
      if (comma == std::string_view::npos) comma = s.size();
      row.push_back(parse_int(trim(s.substr(start, comma - start)), "distance"));
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  std::vector<std::int32_t> twice(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw ParseError("distance matrix row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t v = rows[i][j] * (scale == 1 ? 2 : 1);
      if (v > std::numeric_limits<std::int32_t>::max()) throw ParseError("distance too large");
      twice[i * n + j] = static_cast<std::int32_t>(v);
    }
  }
  return FiniteMetricSpace(n, std::move(twice));
}

void write_distance_csv(std::ostream& out, const FiniteMetricSpace& space) {
  out << "#scale=2\n";
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = 0; j < space.size(); ++j) {
      if (j) out << ',';
      out << space.dist_twice(static_cast<PointIndex>(i), static_cast<PointIndex>(j));
    }
    out << '\n';
  }
}

std::pair<std::size_t, std::vector<Edge>> read_edge_list(std::istream& in, std::size_t min_vertices) {
  std::string line;
  std::vector<Edge> edges;
  std::size_t n = min_vertices;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::int64_t u = 0, v = 0;
    if (!(ss >> u)) continue;
    if (!(ss >> v) || u < 0 || v < 0) throw ParseError("bad edge on line " + std::to_string(lineno));
    edges.push_back({static_cast<PointIndex>(u), static_cast<PointIndex>(v)});
    n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(u, v)) + 1);
  }
  return {n, std::move(edges)};
}

}  // namespace coarse
