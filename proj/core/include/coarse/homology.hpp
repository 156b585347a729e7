#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarse/abelian.hpp"
#include "coarse/integer.hpp"
#include "coarse/simplicial.hpp"

namespace coarse {

/// Coefficient ring of a (co)homology computation.
struct Coefficients {
  enum class Kind { Integers, Rationals, ModP };
  Kind kind = Kind::Integers;
  std::uint32_t p = 0;

  static Coefficients integers() { return {}; }
  static Coefficients rationals() { return {Kind::Rationals, 0}; }
  /// Throws std::invalid_argument unless p is prime.
  static Coefficients mod(std::uint32_t p);
  /// "Z", "Q", "Z/5".
  static Coefficients parse(const std::string& text);
  std::string str() const;
  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

enum class Variance { Cohomology, Homology };

/// Sparse integer matrix in column form; entries of each column sorted by row.
struct SparseMatrix {
  struct Entry {
    std::uint32_t row;
    Integer value;
  };
  std::size_t rows = 0;
  std::vector<std::vector<Entry>> columns;

  std::size_t cols() const { return columns.size(); }
  std::size_t nonzeros() const;
  IntMatrix to_dense() const;
  /// this * other, exact.
  SparseMatrix multiply(const SparseMatrix& other) const;
  bool is_zero() const;
};

/// Boundary matrices ∂_q : C_q(K, L) → C_{q-1}(K, L) for q = 1..top, in the relative
/// simplex bases (simplices of K not in L, in K's table order).
struct ChainData {
  std::vector<std::vector<std::size_t>> basis;  // basis[q] = simplex indices of dimension q
  std::vector<SparseMatrix> boundary;           // boundary[q], q >= 1; boundary[0] is empty
};

/// Throws DegreeAboveCap when `up_to` exceeds the complex's dimension cap and
/// NotASubcomplex for an invalid `sub`; verifies ∂∂ = 0 exactly (std::logic_error otherwise).
ChainData boundary_matrices(const SimplicialComplex& k, int up_to, const SimplicialComplex* sub = nullptr);

/// Exact (co)homology of a complex or pair, with the machinery to move between
/// (co)cycles and coordinates in the canonical generators of each group.
///
/// The (co)chain complex is first shrunk by unit-pivot eliminations (free faces first,
/// then a Markowitz order); every elimination is logged so cycles can be transported to
/// the small residual complex and back. The residual is finished with a dense Smith form.
class HomologyComputation {
 public:
  struct Options {
    Coefficients coefficients;
    Variance variance = Variance::Cohomology;
    bool reduced = false;
    int max_degree = 2;
    const SimplicialComplex* sub = nullptr;
    /// Check d∘d = 0 on the input complex.
    bool verify = false;
  };

  HomologyComputation(const SimplicialComplex& k, const Options& options);
  ~HomologyComputation();
  HomologyComputation(HomologyComputation&&) noexcept;
  HomologyComputation& operator=(HomologyComputation&&) noexcept;

  int min_degree() const { return min_degree_; }
  int max_degree() const { return max_degree_; }
  const Options& options() const { return options_; }
  const SimplicialComplex& complex() const { return complex_; }
  const SimplicialComplex* sub() const { return sub_ ? sub_.get() : nullptr; }

  const FgAbGroup& group(int q) const;
  /// Number of (relative) chain basis elements in degree q.
  std::size_t basis_size(int q) const;
  /// Simplex index (dimension q) of basis element b; for the augmentation degree -1 returns 0.
  std::size_t simplex_of_basis(int q, std::size_t b) const;
  /// Basis index of a simplex of dimension q, or nullopt when it lies in the subcomplex.
  std::optional<std::size_t> basis_of_simplex(int q, std::size_t simplex_index) const;

  /// Coordinates of a (co)cycle in the canonical generators of group(q).
  std::vector<Integer> coordinates(int q, const std::vector<Integer>& cycle) const;
  /// A (co)cycle representing the given canonical generator.
  std::vector<Integer> representative(int q, std::size_t generator) const;
  /// Applies the (co)boundary leaving degree q to a chain in the relative basis.
  std::vector<Integer> differential(int q, const std::vector<Integer>& chain) const;

  /// Size of the residual complex after elimination, per degree (diagnostics).
  std::vector<std::size_t> residual_sizes() const;

 private:
  struct Impl;
  Options options_;
  SimplicialComplex complex_;
  std::unique_ptr<SimplicialComplex> sub_;
  int min_degree_ = 0;
  int max_degree_ = 0;
  std::unique_ptr<Impl> impl_;
};

/// Per-degree groups for degrees 0..max_degree.
std::vector<FgAbGroup> homology(const SimplicialComplex& k, Coefficients c, bool reduced, int max_degree);
std::vector<FgAbGroup> cohomology(const SimplicialComplex& k, Coefficients c, bool reduced, int max_degree);
/// Throws NotASubcomplex.
std::vector<FgAbGroup> relative_cohomology(const SimplicialComplex& k, const SimplicialComplex& sub, Coefficients c,
                                           int max_degree);

/// Map induced by a simplicial map f : K → K' in degree q. `domain_side` is always the
/// computation for K and `codomain_side` the one for K'; the result is f^* : H^q(K') → H^q(K)
/// for cohomology and f_* : H_q(K) → H_q(K') for homology. Pairs are supported: f must
/// carry the domain subcomplex into the codomain subcomplex.
Homomorphism induced_map(const SimplicialMap& f, const HomologyComputation& domain_side,
                         const HomologyComputation& codomain_side, int q);

/// Connecting map H^q(L) → H^{q+1}(K, L), given the cohomology of L (absolute) and of the pair.
Homomorphism connecting_map(const HomologyComputation& sub_absolute, const HomologyComputation& pair, int q);

/// Restriction H^q(K) → H^q(L) along an inclusion of complexes on a shared vertex id space.
Homomorphism restriction_map(const HomologyComputation& big, const HomologyComputation& small, int q);

struct MayerVietorisReport {
  struct Position {
    std::string label;  // e.g. "H^1(A)+H^1(B)"
    bool exact = false;
    FgAbGroup kernel;
    FgAbGroup image;
  };
  std::vector<Position> positions;
  std::vector<std::pair<std::string, FgAbGroup>> groups;
  bool union_is_consistent = true;
  bool pass = false;
  nlohmann::json to_json() const;
};

/// Cohomological Mayer–Vietoris sequence of K = A ∪ B in degrees lo..hi:
///   H^q(K) → H^q(A) ⊕ H^q(B) → H^q(A∩B) → H^{q+1}(K) → …
/// Exactness is checked at every interior position as equality of subgroups.
/// Throws InconsistentUnion when `whole` is not A ∪ B or `overlap` is not A ∩ B.
MayerVietorisReport mayer_vietoris_check(const SimplicialComplex& whole, const SimplicialComplex& a,
                                         const SimplicialComplex& b, const SimplicialComplex& overlap,
                                         Coefficients c, int lo, int hi);

/// JSON `{rank, torsion}` per degree plus the notation string.
nlohmann::json groups_to_json(const std::vector<FgAbGroup>& groups, int first_degree = 0);

}  // namespace coarse
