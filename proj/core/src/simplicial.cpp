#include "coarse/simplicial.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

bool lex_less(const VertexId* a, const VertexId* b, std::size_t w) {
  return std::lexicographical_compare(a, a + w, b, b + w);
}

/// Sorts a flat table of width-w tuples and removes duplicates.
void sort_table(std::vector<VertexId>& t, std::size_t w) {
  const std::size_t m = t.size() / w;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return lex_less(t.data() + x * w, t.data() + y * w, w); });
  std::vector<VertexId> out;
  out.reserve(t.size());
  for (std::size_t k = 0; k < m; ++k) {
    const VertexId* s = t.data() + order[k] * w;
    if (!out.empty() && std::equal(s, s + w, out.end() - static_cast<std::ptrdiff_t>(w))) continue;
    out.insert(out.end(), s, s + w);
  }
  t.swap(out);
}

std::string simplex_str(std::span<const VertexId> s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::size_t vertex_count, int dimension_cap)
    : n_(vertex_count), cap_(dimension_cap) {}

SimplicialComplex SimplicialComplex::from_facets(std::size_t vertex_count, const std::vector<Simplex>& facets,
                                                 int dimension_cap) {
  SimplicialComplex k(vertex_count, dimension_cap);
  for (Simplex f : facets) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    if (f.empty()) continue;
    if (f.back() >= vertex_count) throw std::invalid_argument("facet vertex out of range");
    const std::size_t w = f.size();
    if (w > 30) throw SimplexExplosion("facet with " + std::to_string(w) + " vertices is too large to close");
    const std::size_t top = std::min<std::size_t>(w, static_cast<std::size_t>(std::min(dimension_cap, 30)) + 1);
    if (k.tables_.size() < top) k.tables_.resize(top);
    for (std::uint32_t mask = 1; mask < (1u << w); ++mask) {
      const auto bits = static_cast<std::size_t>(__builtin_popcount(mask));
      if (bits > top) continue;
      auto& t = k.tables_[bits - 1];
      for (std::size_t i = 0; i < w; ++i)
        if (mask & (1u << i)) t.push_back(f[i]);
    }
  }
  for (std::size_t d = 0; d < k.tables_.size(); ++d) sort_table(k.tables_[d], d + 1);
  k.trim();
  return k;
}

SimplicialComplex SimplicialComplex::from_tables(std::size_t vertex_count, std::vector<std::vector<VertexId>> tables,
                                                 int dimension_cap) {
  SimplicialComplex k(vertex_count, dimension_cap);
  if (dimension_cap != kNoCap && tables.size() > static_cast<std::size_t>(dimension_cap) + 1) {
    tables.resize(static_cast<std::size_t>(dimension_cap) + 1);
  }
  k.tables_ = std::move(tables);
  for (std::size_t d = 0; d < k.tables_.size(); ++d) {
    if (k.tables_[d].size() % (d + 1) != 0) throw std::invalid_argument("simplex table has ragged width");
    sort_table(k.tables_[d], d + 1);
  }
  k.trim();
  for (int d = 0; d <= k.dimension(); ++d) {
    for (std::size_t i = 0; i < k.count(d); ++i) {
      auto s = k.simplex(d, i);
      for (std::size_t j = 1; j < s.size(); ++j)
        if (s[j - 1] >= s[j]) throw std::invalid_argument("simplex is not strictly increasing: " + simplex_str(s));
      if (s.back() >= vertex_count) throw std::invalid_argument("simplex vertex out of range");
      if (d == 0) continue;
      Simplex face(s.begin() + 1, s.end());
      for (std::size_t drop = 0; drop <= static_cast<std::size_t>(d); ++drop) {
        if (drop > 0) face[drop - 1] = s[drop - 1];
        if (!k.contains(face)) throw NotASubcomplex("face of " + simplex_str(s) + " is missing");
      }
    }
  }
  return k;
}

void SimplicialComplex::trim() {
  while (!tables_.empty() && tables_.back().empty()) tables_.pop_back();
}

std::size_t SimplicialComplex::count(int d) const {
  if (d < 0 || d > dimension()) return 0;
  return tables_[static_cast<std::size_t>(d)].size() / static_cast<std::size_t>(d + 1);
}

std::size_t SimplicialComplex::total_count() const {
  std::size_t total = 0;
  for (int d = 0; d <= dimension(); ++d) total += count(d);
  return total;
}

std::optional<std::size_t> SimplicialComplex::find(std::span<const VertexId> s) const {
  if (s.empty()) return std::nullopt;
  const int d = static_cast<int>(s.size()) - 1;
  if (d > dimension()) return std::nullopt;
  const std::size_t w = s.size();
  const VertexId* base = tables_[static_cast<std::size_t>(d)].data();
  std::size_t lo = 0, hi = count(d);
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (lex_less(base + mid * w, s.data(), w))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < count(d) && std::equal(s.begin(), s.end(), base + lo * w)) return lo;
  return std::nullopt;
}

std::vector<VertexId> SimplicialComplex::vertices() const {
  if (empty()) return {};
  return tables_[0];
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
  if (n_ > other.n_) {
    for (VertexId v : vertices())
      if (v >= other.n_) return false;
  }
  for (int d = 0; d <= dimension(); ++d)
    for (std::size_t i = 0; i < count(d); ++i)
      if (!other.contains(simplex(d, i))) return false;
  return true;
}

std::int64_t SimplicialComplex::euler_characteristic() const {
  std::int64_t chi = 0;
  for (int d = 0; d <= dimension(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(count(d));
  return chi;
}

SimplicialComplex SimplicialComplex::full_subcomplex(const std::vector<char>& vertex_mask) const {
  SimplicialComplex out(n_, cap_);
  out.tables_.resize(tables_.size());
  for (int d = 0; d <= dimension(); ++d) {
    for (std::size_t i = 0; i < count(d); ++i) {
      auto s = simplex(d, i);
      if (std::all_of(s.begin(), s.end(), [&](VertexId v) { return v < vertex_mask.size() && vertex_mask[v]; })) {
        out.tables_[static_cast<std::size_t>(d)].insert(out.tables_[static_cast<std::size_t>(d)].end(), s.begin(),
                                                        s.end());
      }
    }
  }
  out.trim();
  return out;
}

SimplicialComplex SimplicialComplex::skeleton(int d) const {
  SimplicialComplex out = *this;
  if (d + 1 < static_cast<int>(out.tables_.size())) out.tables_.resize(static_cast<std::size_t>(std::max(d + 1, 0)));
  out.trim();
  return out;
}

SimplicialComplex SimplicialComplex::with_cap(int cap) const {
  SimplicialComplex out = skeleton(cap);
  out.cap_ = std::min(cap, cap_);
  return out;
}

SimplicialComplex SimplicialComplex::union_of(const SimplicialComplex& a, const SimplicialComplex& b) {
  SimplicialComplex out(std::max(a.n_, b.n_), std::min(a.cap_, b.cap_));
  out.tables_.resize(std::max(a.tables_.size(), b.tables_.size()));
  for (std::size_t d = 0; d < out.tables_.size(); ++d) {
    if (d < a.tables_.size()) out.tables_[d] = a.tables_[d];
    if (d < b.tables_.size()) out.tables_[d].insert(out.tables_[d].end(), b.tables_[d].begin(), b.tables_[d].end());
    sort_table(out.tables_[d], d + 1);
  }
  if (out.cap_ != kNoCap && out.tables_.size() > static_cast<std::size_t>(out.cap_) + 1)
    out.tables_.resize(static_cast<std::size_t>(out.cap_) + 1);
  out.trim();
  return out;
}

SimplicialComplex SimplicialComplex::intersection_of(const SimplicialComplex& a, const SimplicialComplex& b) {
  SimplicialComplex out(std::max(a.n_, b.n_), std::min(a.cap_, b.cap_));
  out.tables_.resize(a.tables_.size());
  for (int d = 0; d <= a.dimension(); ++d) {
    if (out.cap_ != kNoCap && d > out.cap_) break;
    for (std::size_t i = 0; i < a.count(d); ++i) {
      auto s = a.simplex(d, i);
      if (b.contains(s)) out.tables_[static_cast<std::size_t>(d)].insert(out.tables_[static_cast<std::size_t>(d)].end(), s.begin(), s.end());
    }
  }
  out.trim();
  return out;
}

void SimplicialComplex::write_text(std::ostream& out) const {
  out << "#vertices " << n_ << '\n';
  if (cap_ != kNoCap) out << "#cap " << cap_ << '\n';
  for (int d = 0; d <= dimension(); ++d) {
    out << "#dim " << d << '\n';
    for (std::size_t i = 0; i < count(d); ++i) {
      auto s = simplex(d, i);
      for (std::size_t j = 0; j < s.size(); ++j) out << (j ? " " : "") << s[j];
      out << '\n';
    }
  }
}

SimplicialComplex SimplicialComplex::read_text(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  int cap = kNoCap;
  int dim = -1;
  std::vector<std::vector<VertexId>> tables;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    if (line[0] == '#') {
      std::string key;
      ss >> key;
      if (key == "#vertices") {
        ss >> n;
      } else if (key == "#cap") {
        ss >> cap;
      } else if (key == "#dim") {
        ss >> dim;
        if (dim < 0) throw ParseError("negative dimension on line " + std::to_string(lineno));
        if (tables.size() <= static_cast<std::size_t>(dim)) tables.resize(static_cast<std::size_t>(dim) + 1);
      }
      continue;
    }
    if (dim < 0) throw ParseError("simplex before any #dim header on line " + std::to_string(lineno));
    std::vector<VertexId> s;
    std::int64_t v = 0;
    while (ss >> v) {
      if (v < 0) throw ParseError("negative vertex on line " + std::to_string(lineno));
      s.push_back(static_cast<VertexId>(v));
    }
    if (s.size() != static_cast<std::size_t>(dim) + 1)
      throw ParseError("simplex width does not match #dim on line " + std::to_string(lineno));
    for (VertexId x : s) n = std::max<std::size_t>(n, x + 1u);
    tables[static_cast<std::size_t>(dim)].insert(tables[static_cast<std::size_t>(dim)].end(), s.begin(), s.end());
  }
  return from_tables(n, std::move(tables), cap);
}

SimplicialMap SimplicialMap::identity(std::size_t n) {
  SimplicialMap f;
  f.table.resize(n);
  std::iota(f.table.begin(), f.table.end(), VertexId{0});
  return f;
}

Simplex SimplicialMap::image(std::span<const VertexId> s) const {
  Simplex out;
  out.reserve(s.size());
  for (VertexId v : s) out.push_back(table.at(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void SimplicialMap::validate(const SimplicialComplex& domain, const SimplicialComplex& codomain) const {
  if (table.size() < domain.vertex_count()) throw std::invalid_argument("simplicial map is not total");
  for (int d = 0; d <= domain.dimension(); ++d) {
    for (std::size_t i = 0; i < domain.count(d); ++i) {
      if (!codomain.contains(image(domain.simplex(d, i)))) {
        throw std::invalid_argument("image of simplex " + simplex_str(domain.simplex(d, i)) +
                                    " is not a simplex of the codomain");
      }
    }
  }
}

SimplicialMap SimplicialMap::compose_after(const SimplicialMap& inner) const {
  SimplicialMap out;
  out.table.reserve(inner.table.size());
  for (VertexId v : inner.table) out.table.push_back(table.at(v));
  return out;
}

bool contiguous(const SimplicialMap& f, const SimplicialMap& g, const SimplicialComplex& domain,
                const SimplicialComplex& codomain) {
  if (f.table.size() != g.table.size() || f.table.size() < domain.vertex_count()) {
    throw ShapeMismatch("contiguity requires maps with the same domain");
  }
  for (int d = 0; d <= domain.dimension(); ++d) {
    for (std::size_t i = 0; i < domain.count(d); ++i) {
      auto s = domain.simplex(d, i);
      Simplex both;
      for (VertexId v : s) {
        both.push_back(f.table[v]);
        both.push_back(g.table[v]);
      }
      std::sort(both.begin(), both.end());
      both.erase(std::unique(both.begin(), both.end()), both.end());
      if (!codomain.contains(both)) return false;
    }
  }
  return true;
}

SimplicialComplex remove_open_stars(const SimplicialComplex& k, const std::vector<VertexId>& centers) {
  std::vector<char> mask(k.vertex_count(), 1);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      Simplex e{std::min(centers[i], centers[j]), std::max(centers[i], centers[j])};
      if (e[0] == e[1] || k.contains(e)) {
        throw AdjacentCenters("centers " + std::to_string(e[0]) + " and " + std::to_string(e[1]) + " are adjacent");
      }
    }
    mask.at(centers[i]) = 0;
  }
  return k.full_subcomplex(mask);
}

SimplicialComplex link(const SimplicialComplex& k, VertexId v) {
  std::vector<Simplex> faces;
  for (int d = 1; d <= k.dimension(); ++d) {
    for (std::size_t i = 0; i < k.count(d); ++i) {
      auto s = k.simplex(d, i);
      if (!std::binary_search(s.begin(), s.end(), v)) continue;
      Simplex rest;
      for (VertexId x : s)
        if (x != v) rest.push_back(x);
      faces.push_back(std::move(rest));
    }
  }
  return SimplicialComplex::from_facets(k.vertex_count(), faces, k.dimension_cap());
}

SimplicialComplex attach_cone(const SimplicialComplex& k, const SimplicialComplex& sub) {
  if (!sub.is_subcomplex_of(k)) throw NotASubcomplex("cone base is not a subcomplex");
  const auto apex = static_cast<VertexId>(k.vertex_count());
  const int cap = k.dimension_cap() == SimplicialComplex::kNoCap ? SimplicialComplex::kNoCap : k.dimension_cap() + 1;
  std::vector<std::vector<VertexId>> tables(static_cast<std::size_t>(std::max(k.dimension(), sub.dimension() + 1) + 1));
  for (int d = 0; d <= k.dimension(); ++d) tables[static_cast<std::size_t>(d)] = k.table(d);
  tables[0].push_back(apex);
  for (int d = 0; d <= sub.dimension(); ++d) {
    auto& t = tables[static_cast<std::size_t>(d + 1)];
    for (std::size_t i = 0; i < sub.count(d); ++i) {
      auto s = sub.simplex(d, i);
      t.insert(t.end(), s.begin(), s.end());
      t.push_back(apex);
    }
  }
  return SimplicialComplex::from_tables(k.vertex_count() + 1, std::move(tables), cap);
}

int sort_with_sign(Simplex& s) {
  int sign = 1;
  for (std::size_t i = 1; i < s.size(); ++i) {
    for (std::size_t j = i; j > 0 && s[j - 1] >= s[j]; --j) {
      if (s[j - 1] == s[j]) return 0;
      std::swap(s[j - 1], s[j]);
      sign = -sign;
    }
  }
  return sign;
}

}  // namespace coarse
