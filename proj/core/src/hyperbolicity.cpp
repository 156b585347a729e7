#include "coarse/hyperbolicity.hpp"

#include <algorithm>
#include <map>

#include "coarse/errors.hpp"

namespace coarse {

HalfInt gromov_product(const FiniteMetricSpace& space, PointIndex x, PointIndex y, PointIndex p) {
  const std::int64_t twice = space.dist_twice(x, p) + space.dist_twice(y, p) - space.dist_twice(x, y);
  return HalfInt::from_twice(twice / 2);
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finaliser over a seed/index mix
  std::uint64_t z = seed * 0x9e3779b97f4a7c15ULL + index + 0x632be59bd9b4e019ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string SamplingMode::str() const {
  if (kind == Kind::Exhaustive) return "EXHAUSTIVE";
  return "SAMPLED(seed=" + std::to_string(seed) + ", count=" + std::to_string(count) + ")";
}

nlohmann::json DeltaReport::to_json() const {
  nlohmann::json j{{"kind", kind},
                   {"delta", delta.to_json()},
                   {"mode", mode.str()},
                   {"exact", mode.kind == SamplingMode::Kind::Exhaustive},
                   {"evaluated", evaluated}};
  if (has_witness) j["witness"] = witness;
  return j;
}

namespace {

/// Largest minus middle of three pair sums. With doubled distances this is 4δ for the quadruple.
inline std::int64_t sum_gap(std::int64_t s1, std::int64_t s2, std::int64_t s3) {
  const std::int64_t hi = std::max({s1, s2, s3});
  const std::int64_t lo = std::min({s1, s2, s3});
  return hi - (s1 + s2 + s3 - hi - lo);
}

}  // namespace

HalfInt four_point_gap(const FiniteMetricSpace& s, const std::array<PointIndex, 4>& q) {
  const std::int64_t s1 = s.dist_twice(q[0], q[1]) + s.dist_twice(q[2], q[3]);
  const std::int64_t s2 = s.dist_twice(q[0], q[2]) + s.dist_twice(q[1], q[3]);
  const std::int64_t s3 = s.dist_twice(q[0], q[3]) + s.dist_twice(q[1], q[2]);
  return HalfInt::from_twice(sum_gap(s1, s2, s3) / 2);
}

DeltaReport four_point_delta(const FiniteMetricSpace& space, const SamplingMode& mode, std::size_t cap) {
  DeltaReport rep;
  rep.kind = "four-point";
  rep.mode = mode;
  const std::size_t n = space.size();
  std::int64_t best = -1;
  if (mode.kind == SamplingMode::Kind::Exhaustive) {
    if (n > cap) {
      throw CapExceeded("exhaustive four-point scan over " + std::to_string(n) + " points exceeds the cap " +
                        std::to_string(cap));
    }
    for (PointIndex i = 0; i < n; ++i) {
      const std::int32_t* di = space.row_twice(i);
      for (PointIndex j = i + 1; j < n; ++j) {
        const std::int32_t* dj = space.row_twice(j);
        const std::int32_t dij = di[j];
        for (PointIndex k = j + 1; k < n; ++k) {
          const std::int32_t* dk = space.row_twice(k);
          const std::int32_t dik = di[k], djk = dj[k];
          std::int32_t local = -1;
          PointIndex arg = 0;
          for (PointIndex l = k + 1; l < n; ++l) {
            const std::int32_t s1 = dij + dk[l];
            const std::int32_t s2 = dik + dj[l];
            const std::int32_t s3 = di[l] + djk;
            const std::int32_t hi = std::max(s1, std::max(s2, s3));
            const std::int32_t lo = std::min(s1, std::min(s2, s3));
            const std::int32_t g = 2 * hi - (s1 + s2 + s3 - lo);
            if (g > local) {
              local = g;
              arg = l;
            }
          }
          if (local > best) {
            best = local;
            rep.witness = {i, j, k, arg};
            rep.has_witness = true;
          }
        }
      }
    }
    rep.evaluated = n < 4 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) * (n - 2) * (n - 3) / 24;
  } else {
    if (n >= 4) {
      for (std::uint64_t s = 0; s < mode.count; ++s) {
        std::array<PointIndex, 4> q{};
        for (int t = 0; t < 4; ++t) q[t] = static_cast<PointIndex>(counter_hash(mode.seed, 4 * s + t) % n);
        std::sort(q.begin(), q.end());
        if (std::adjacent_find(q.begin(), q.end()) != q.end()) continue;
        const std::int64_t g = four_point_gap(space, q).twice() * 2;
        ++rep.evaluated;
        if (g > best || (g == best && q < rep.witness)) {
          best = g;
          rep.witness = q;
          rep.has_witness = true;
        }
      }
    }
  }
  // best is 4δ, i.e. twice the HalfInt representation
  rep.delta = best < 0 ? HalfInt(0) : HalfInt::from_twice(best / 2);
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Thin triangles

namespace {

class GeodesicCache {
 public:
  GeodesicCache(const Graph& g, const FiniteMetricSpace& m) : graph_(g), metric_(m) {}

  /// Deterministic geodesic from a to b.
  std::vector<PointIndex> path(PointIndex a, PointIndex b) {
    const PointIndex lo = std::min(a, b), hi = std::max(a, b);
    auto key = (static_cast<std::uint64_t>(lo) << 32) | hi;
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      std::vector<std::int32_t> dist(metric_.size());
      const std::int32_t* row = metric_.row_twice(lo);
      for (std::size_t v = 0; v < dist.size(); ++v) dist[v] = row[v] / 2;
      it = cache_.emplace(key, graph_.geodesic_from(dist, hi)).first;
    }
    std::vector<PointIndex> p = it->second;
    if (a != lo) std::reverse(p.begin(), p.end());
    return p;
  }

 private:
  const Graph& graph_;
  const FiniteMetricSpace& metric_;
  std::map<std::uint64_t, std::vector<PointIndex>> cache_;
};

std::int32_t corner_gap_twice(GeodesicCache& cache, const FiniteMetricSpace& m, PointIndex x, PointIndex y,
                              PointIndex z) {
  const HalfInt product = gromov_product(m, y, z, x);
  const auto pxy = cache.path(x, y);
  const auto pxz = cache.path(x, z);
  std::int32_t worst = 0;
  const std::int64_t limit = product.floor();
  for (std::int64_t t = 0; t <= limit; ++t) {
    const auto ts = static_cast<std::size_t>(t);
    if (ts >= pxy.size() || ts >= pxz.size()) break;
    worst = std::max(worst, m.dist_twice(pxy[ts], pxz[ts]));
  }
  return worst;
}

}  // namespace

HalfInt thin_triangle_gap(const Graph& graph, const FiniteMetricSpace& metric, PointIndex x, PointIndex y,
                          PointIndex z) {
  GeodesicCache cache(graph, metric);
  return HalfInt::from_twice(corner_gap_twice(cache, metric, x, y, z));
}

DeltaReport thin_triangle_delta(const Graph& graph, const FiniteMetricSpace& metric,
                                const std::vector<PointIndex>& corners, const SamplingMode& mode, std::size_t cap) {
  if (graph.size() != metric.size()) throw ShapeMismatch("metric does not belong to the graph");
  DeltaReport rep;
  rep.kind = "thin-triangle";
  rep.mode = mode;
  GeodesicCache cache(graph, metric);
  std::int32_t best = -1;
  auto consider = [&](PointIndex a, PointIndex b, PointIndex c) {
    const std::array<PointIndex, 3> tri{a, b, c};
    for (int corner = 0; corner < 3; ++corner) {
      const PointIndex x = tri[corner], y = tri[(corner + 1) % 3], z = tri[(corner + 2) % 3];
      const std::int32_t g = corner_gap_twice(cache, metric, x, y, z);
      if (g > best) {
        best = g;
        rep.witness = {a, b, c, static_cast<PointIndex>(corner)};
        rep.has_witness = true;
      }
    }
    ++rep.evaluated;
  };
  const std::size_t n = corners.size();
  if (mode.kind == SamplingMode::Kind::Exhaustive) {
    if (n > cap) {
      throw CapExceeded("exhaustive thin-triangle scan over " + std::to_string(n) + " corners exceeds the cap " +
                        std::to_string(cap));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) consider(corners[i], corners[j], corners[k]);
  } else if (n >= 3) {
    for (std::uint64_t s = 0; s < mode.count; ++s) {
      std::array<PointIndex, 3> t{};
      for (int q = 0; q < 3; ++q) t[q] = corners[counter_hash(mode.seed, 3 * s + q) % n];
      std::sort(t.begin(), t.end());
      if (t[0] == t[1] || t[1] == t[2]) continue;
      consider(t[0], t[1], t[2]);
    }
  }
  rep.delta = HalfInt::from_twice(std::max(best, 0));
  return rep;
}

}  // namespace coarse
