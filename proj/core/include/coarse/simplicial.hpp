#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace coarse {

using VertexId = std::uint32_t;
using Simplex = std::vector<VertexId>;

/// Finite abstract simplicial complex on the vertex ids 0..vertex_count-1.
///
/// Simplices are stored per dimension as flat, lexicographically sorted tables of
/// sorted vertex tuples; lookups are binary searches. Not every vertex id needs to be
/// present (full subcomplexes keep the ambient id space). The complex is face-closed
/// up to its dimension cap; nothing above the cap is ever stored.
class SimplicialComplex {
 public:
  static constexpr int kNoCap = std::numeric_limits<int>::max();

  SimplicialComplex() = default;
  /// Empty complex on the given id space.
  explicit SimplicialComplex(std::size_t vertex_count, int dimension_cap = kNoCap);

  /// Face closure of the given simplices, truncated at `dimension_cap`.
  static SimplicialComplex from_facets(std::size_t vertex_count, const std::vector<Simplex>& facets,
                                       int dimension_cap = kNoCap);
  /// Adopts per-dimension flat tables (sorted tuples, any order). Sorts, deduplicates and
  /// checks face closure; throws NotASubcomplex when a face is missing.
  static SimplicialComplex from_tables(std::size_t vertex_count, std::vector<std::vector<VertexId>> tables,
                                       int dimension_cap = kNoCap);

  std::size_t vertex_count() const { return n_; }
  int dimension_cap() const { return cap_; }
  /// Highest dimension with at least one simplex, -1 for the empty complex.
  int dimension() const { return static_cast<int>(tables_.size()) - 1; }
  std::size_t count(int d) const;
  std::size_t total_count() const;
  bool empty() const { return tables_.empty(); }

  std::span<const VertexId> simplex(int d, std::size_t i) const {
    return {tables_[static_cast<std::size_t>(d)].data() + i * static_cast<std::size_t>(d + 1),
            static_cast<std::size_t>(d + 1)};
  }
  /// Index of a sorted tuple within its dimension table.
  std::optional<std::size_t> find(std::span<const VertexId> s) const;
  bool contains(std::span<const VertexId> s) const { return find(s).has_value(); }
  const std::vector<VertexId>& table(int d) const { return tables_[static_cast<std::size_t>(d)]; }

  /// Vertices that occur in the complex, ascending.
  std::vector<VertexId> vertices() const;
  bool is_subcomplex_of(const SimplicialComplex& other) const;
  std::int64_t euler_characteristic() const;

  /// Simplices all of whose vertices are marked.
  SimplicialComplex full_subcomplex(const std::vector<char>& vertex_mask) const;
  SimplicialComplex skeleton(int d) const;
  /// Same complex with a lower dimension cap.
  SimplicialComplex with_cap(int cap) const;

  /// Union / intersection of complexes on the same id space (caps: the smaller one).
  static SimplicialComplex union_of(const SimplicialComplex& a, const SimplicialComplex& b);
  static SimplicialComplex intersection_of(const SimplicialComplex& a, const SimplicialComplex& b);

  /// Text dump: a `#vertices n` line, then `#dim k` headers each followed by one simplex per line.
  void write_text(std::ostream& out) const;
  static SimplicialComplex read_text(std::istream& in);

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.n_ == b.n_ && a.tables_ == b.tables_;
  }

 private:
  void trim();

  std::size_t n_ = 0;
  int cap_ = kNoCap;
  std::vector<std::vector<VertexId>> tables_;
};

/// Vertex map between complexes. Valid when every simplex image spans a simplex.
struct SimplicialMap {
  std::vector<VertexId> table;

  static SimplicialMap identity(std::size_t n);
  /// Image of a simplex as a sorted, duplicate-free tuple.
  Simplex image(std::span<const VertexId> s) const;
  /// Throws std::invalid_argument naming the first simplex whose image is missing.
  void validate(const SimplicialComplex& domain, const SimplicialComplex& codomain) const;
  /// this ∘ inner
  SimplicialMap compose_after(const SimplicialMap& inner) const;

  friend bool operator==(const SimplicialMap&, const SimplicialMap&) = default;
};

/// True iff f(σ) ∪ g(σ) spans a codomain simplex for every domain simplex σ.
/// Throws ShapeMismatch when the maps do not share a domain size.
bool contiguous(const SimplicialMap& f, const SimplicialMap& g, const SimplicialComplex& domain,
                const SimplicialComplex& codomain);

/// Deletes every simplex containing one of `centers`. Throws AdjacentCenters when two centers span an edge.
SimplicialComplex remove_open_stars(const SimplicialComplex& k, const std::vector<VertexId>& centers);

/// Closed-star link: simplices of the closed star of v not containing v.
SimplicialComplex link(const SimplicialComplex& k, VertexId v);

/// Adds a new apex vertex (id = vertex_count) and apex * σ for every σ of `sub`.
/// Throws NotASubcomplex. The dimension cap grows by one.
SimplicialComplex attach_cone(const SimplicialComplex& k, const SimplicialComplex& sub);

/// Sign of the permutation sorting `s` and the sorted, duplicate-free result;
/// sign 0 when `s` has a repeated vertex.
int sort_with_sign(Simplex& s);

}  // namespace coarse
