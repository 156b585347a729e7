#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarse/homology.hpp"
#include "coarse/nerve.hpp"
#include "coarse/towers.hpp"

namespace coarse {

/// Nerve complexes stored as text under a directory, one file per key. A pure
/// optimization: a missing or unreadable entry is recomputed.
class NerveCache {
 public:
  explicit NerveCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
  std::optional<SimplicialComplex> load(const std::string& key) const;
  /// Best effort; write failures are ignored.
  void store(const std::string& key, const SimplicialComplex& k) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

struct NerveTowerOptions {
  std::vector<ScaleLevel> levels;
  /// Relative cohomology H^q(N, E) for q = 0..top_degree; nerves are built to top_degree + 1.
  int top_degree = 2;
  /// E is spanned by the members that leave B(basepoint, core_radius).
  HalfInt core_radius;
  PointIndex basepoint = 0;
  std::size_t simplex_cap = 5'000'000;
  Coefficients coefficients;
  /// Compare the first and last containing choices of coarsening map at every step.
  bool check_alternatives = true;
  /// Names the space in cache keys; no caching when empty or without a cache.
  std::string space_key;
  const NerveCache* cache = nullptr;
};

struct NerveLevel {
  ScaleLevel scale;
  Cover cover;
  SimplicialComplex nerve;
  SimplicialComplex end;
  /// Members have diameter at most the core radius, so the end does not swallow the core.
  bool resolved = false;
  bool from_cache = false;
};

/// Two containing choices U(j) -> U(j+1) compared on cohomology.
struct AlternativeCheck {
  std::size_t level = 0;
  bool differ = false;      // the choices disagree on some member
  bool contiguous = false;  // through the coarse cover
  std::vector<bool> identical;  // induced maps agree, per degree
};

/// The tower H^q(N_1, E_1) <- H^q(N_2, E_2) <- ... of a metric space under anti-Čech covers.
struct NerveTower {
  NerveTowerOptions options;
  std::vector<NerveLevel> levels;
  std::vector<SimplicialMap> maps;  // maps[j] : U(j) -> U(j+1)
  std::vector<HomologyComputation> pairs;
  /// induced[q][j] : H^q(N_{j+1}, E_{j+1}) -> H^q(N_j, E_j)
  std::vector<std::vector<Homomorphism>> induced;
  std::vector<AlternativeCheck> alternatives;

  bool resolved() const;
  /// Throws std::invalid_argument for windows shorter than 3.
  Tower tower(int q) const;
  /// Per-degree limits; empty when the window is shorter than 3.
  std::vector<TowerLimits> limits() const;
  nlohmann::json to_json() const;
};

/// Builds covers, nerves, ends and the relative cohomology tower. Throws SimplexExplosion,
/// NoContainingMember and BoundViolation from the stages underneath.
NerveTower nerve_cohomology_tower(const FiniteMetricSpace& space, const NerveTowerOptions& options);

}  // namespace coarse
