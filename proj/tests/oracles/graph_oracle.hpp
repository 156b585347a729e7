#pragma once

// Independent graph helpers for tests: adjacency sets, plain BFS, and the horoball built
// straight from its definition on (point, level) pairs.

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Adjacency = std::vector<std::set<std::size_t>>;

inline std::vector<int> bfs(const Adjacency& adj, std::size_t s) {
  std::vector<int> d(adj.size(), -1);
  std::queue<std::size_t> q;
  d[s] = 0;
  q.push(s);
  while (!q.empty()) {
    auto u = q.front();
    q.pop();
    for (auto v : adj[u])
      if (d[v] < 0) {
        d[v] = d[u] + 1;
        q.push(v);
      }
  }
  return d;
}

/// Horoball over a base given by integer distances; returns adjacency and the (p, l) index map.
struct Horoball {
  Adjacency adj;
  std::map<std::pair<std::size_t, int>, std::size_t> index;
};

inline Horoball horoball(const std::vector<std::vector<long>>& base, int depth) {
  Horoball h;
  const std::size_t n = base.size();
  for (int l = 0; l <= depth; ++l)
    for (std::size_t p = 0; p < n; ++p) h.index[{p, l}] = h.index.size();
  h.adj.resize(h.index.size());
  auto link = [&](std::size_t a, std::size_t b) {
    h.adj[a].insert(b);
    h.adj[b].insert(a);
  };
  for (int l = 0; l <= depth; ++l) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q)
        if (p != q && base[p][q] > 0 && base[p][q] <= (1L << l)) link(h.index[{p, l}], h.index[{q, l}]);
      if (l < depth) link(h.index[{p, l}], h.index[{p, l + 1}]);
    }
  }
  return h;
}

/// Four-point δ (twice its value) by brute force over ordered quadruples.
inline long four_point_twice(const std::vector<std::vector<long>>& d) {
  const std::size_t n = d.size();
  long best = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t w = 0; w < n; ++w) {
          // (x|y)_w >= min((x|z)_w, (y|z)_w) - δ, all doubled
          const long xy = d[x][w] + d[y][w] - d[x][y];
          const long xz = d[x][w] + d[z][w] - d[x][z];
          const long yz = d[y][w] + d[z][w] - d[y][z];
          best = std::max(best, std::min(xz, yz) - xy);
        }
  return best;
}

}  // namespace oracle
