#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarse/abelian.hpp"

namespace coarse {

/// Finite window A_1 <- A_2 <- ... <- A_m of an inverse system. Levels are 1-based in reports
/// and 0-based in code: maps[k] : groups[k+1] -> groups[k].
struct Tower {
  std::vector<FgAbGroup> groups;
  std::vector<Homomorphism> maps;

  /// Throws std::invalid_argument on a window shorter than 3 or maps that do not compose.
  Tower(std::vector<FgAbGroup> groups, std::vector<Homomorphism> maps);
  /// m copies of g joined by identities.
  static Tower constant(const FgAbGroup& g, std::size_t m);

  std::size_t window() const { return groups.size(); }
  /// A_{k+j} -> A_k as a composite, j >= 0.
  Homomorphism composite(std::size_t k, std::size_t j) const;
};

/// Descending chain Im[A_{k+j} -> A_k], j = 1 .. m-1-k, at one level.
struct LevelImages {
  std::size_t level = 0;  // 0-based
  std::vector<Subgroup> chain;
  /// Smallest j (counted in steps, Im[A_{k+j} -> A_k]) from which the chain is constant to the
  /// window end, with at least two equal terms; empty when still moving or too short to tell.
  std::optional<std::size_t> stabilized_at;
  /// Chain indices i with chain[i+1] strictly inside chain[i].
  std::vector<std::size_t> strict_drops;

  bool determinable() const { return chain.size() >= 2; }
  /// The eventual image if stabilized, else the last image in the window.
  const Subgroup& eventual() const { return chain.back(); }
};

std::vector<LevelImages> stabilized_image(const Tower& tower);

struct TowerLimits {
  enum class Lim { Stable, NotFg, Inconclusive };
  enum class Lim1 { ZeroMl, NonzeroWitness, Inconclusive };

  std::size_t window = 0;
  std::vector<LevelImages> levels;

  Lim lim = Lim::Inconclusive;
  /// Set when lim is Stable: the common type of the stabilized images.
  std::optional<FgAbGroup> lim_group;
  /// First level (0-based) from which the stabilized images map isomorphically.
  std::optional<std::size_t> lim_level;

  Lim1 lim1 = Lim1::Inconclusive;
  /// For NonzeroWitness: the level and the finite-index strictly decreasing image chain.
  std::optional<std::size_t> witness_level;
  std::vector<FgAbGroup> witness_chain;
  std::vector<FgAbGroup> witness_quotients;

  std::string lim_str() const;
  std::string lim1_str() const;
  /// {levels:[{group, image, stab_level}], lim, lim1, window}
  nlohmann::json to_json() const;
};

/// lim is Stable when every determinable level stabilizes, the window has m >= 4, and the
/// restricted maps between consecutive stabilized images end in isomorphisms. lim¹ is ZeroMl
/// when every determinable level stabilizes, or when every group is finite. NonzeroWitness
/// needs a level whose chain of infinite images drops strictly at every step to the window end
/// with finite index. lim is never NotFg from a
/// finite window; the value exists for reports that receive it from elsewhere.
TowerLimits limits(const Tower& tower);

/// Finite window B_1 -> B_2 -> ... -> B_m of a directed system; maps[k] : groups[k] -> groups[k+1].
struct DirectedSystem {
  std::vector<FgAbGroup> groups;
  std::vector<Homomorphism> maps;

  DirectedSystem(std::vector<FgAbGroup> groups, std::vector<Homomorphism> maps);
  std::size_t window() const { return groups.size(); }
};

struct ColimResult {
  enum class Status { Stable, Growing, Inconclusive };
  Status status = Status::Inconclusive;
  std::size_t window = 0;
  /// For Stable: the stable group and the first stage (0-based) from which all maps are isomorphisms.
  std::optional<FgAbGroup> group;
  std::optional<std::size_t> stable_from;
  /// Per-stage groups, always recorded.
  std::vector<FgAbGroup> stages;

  std::string str() const;
  nlohmann::json to_json() const;
};

/// Stable when the last two maps (at least) are isomorphisms; Growing when the free rank
/// strictly increases at every stage and every map is injective; otherwise Inconclusive.
ColimResult colim(const DirectedSystem& system);

struct MilnorReport {
  bool pass = false;
  std::size_t level = 0;
  FgAbGroup total;
  FgAbGroup lim;
  /// Kernel of total -> lim and the part of lim the total misses.
  FgAbGroup kernel;
  FgAbGroup cokernel;
  /// False when the total lands outside the stabilized image; the cokernel is then unset.
  bool image_inside = true;
  nlohmann::json to_json() const;
};

/// Checks 0 -> lim¹ -> total -> lim -> 0 in the stable case, where lim¹ = 0 and the sequence
/// reduces to `to_level` mapping the total isomorphically onto the stabilized image at `level`.
/// Throws UnstableTower unless limits(tower) is Stable and ZeroMl.
MilnorReport milnor_check(const Tower& tower, const Homomorphism& to_level, std::size_t level);

}  // namespace coarse
