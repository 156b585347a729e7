#pragma once

// Test-only oracle: invariant factors from determinantal divisors.
// d_k = gcd of all k x k minors; the k-th invariant factor is d_k / d_{k-1}.
// Exponential in the matrix size, so only for small inputs; shares no code with the library.

#include <algorithm>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using big = boost::multiprecision::cpp_int;

inline big bareiss_det(std::vector<std::vector<big>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  big sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline void combos(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  if (k > n) return;
  while (true) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

/// Nonzero invariant factors of an integer matrix given as rows.
inline std::vector<big> invariant_factors(const std::vector<std::vector<long long>>& a) {
  const std::size_t r = a.size();
  const std::size_t c = r ? a[0].size() : 0;
  std::vector<big> factors;
  big prev = 1;
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    combos(r, k, rs);
    combos(c, k, cs);
    big g = 0;
    for (const auto& ri : rs)
      for (const auto& ci : cs) {
        std::vector<std::vector<big>> m(k, std::vector<big>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = a[ri[i]][ci[j]];
        big d = bareiss_det(std::move(m));
        if (d < 0) d = -d;
        g = boost::multiprecision::gcd(g, d);
      }
    if (g == 0) break;
    factors.push_back(g / prev);
    prev = g;
  }
  return factors;
}

}  // namespace oracle
