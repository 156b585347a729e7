#include "coarse/homology.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "coarse/errors.hpp"

namespace coarse {

// ---------------------------------------------------------------------------------------------
// Coefficients

Coefficients Coefficients::mod(std::uint32_t p) {
  if (p < 2) throw std::invalid_argument("modulus must be a prime >= 2");
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  return {Kind::ModP, p};
}

Coefficients Coefficients::parse(const std::string& text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text.rfind("Z/", 0) == 0) return mod(static_cast<std::uint32_t>(std::stoul(text.substr(2))));
  throw std::invalid_argument("unknown coefficient ring '" + text + "' (expected Z, Q or Z/p)");
}

std::string Coefficients::str() const {
  switch (kind) {
    case Kind::Integers:
      return "Z";
    case Kind::Rationals:
      return "Q";
    case Kind::ModP:
      return "Z/" + std::to_string(p);
  }
  return "?";
}

// ---------------------------------------------------------------------------------------------
// SparseMatrix

std::size_t SparseMatrix::nonzeros() const {
  std::size_t total = 0;
  for (const auto& c : columns) total += c.size();
  return total;
}

IntMatrix SparseMatrix::to_dense() const {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const Entry& e : columns[j]) m(e.row, j) = e.value;
  return m;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& other) const {
  if (other.rows != cols()) throw std::invalid_argument("sparse multiply: shape mismatch");
  SparseMatrix out;
  out.rows = rows;
  out.columns.resize(other.cols());
  std::vector<Integer> acc(rows);
  std::vector<char> touched(rows, 0);
  std::vector<std::uint32_t> list;
  for (std::size_t j = 0; j < other.cols(); ++j) {
    list.clear();
    for (const Entry& b : other.columns[j]) {
      for (const Entry& a : columns[b.row]) {
        if (!touched[a.row]) {
          touched[a.row] = 1;
          list.push_back(a.row);
          acc[a.row] = 0;
        }
        acc[a.row] += a.value * b.value;
      }
    }
    std::sort(list.begin(), list.end());
    for (std::uint32_t r : list) {
      if (!acc[r].is_zero()) out.columns[j].push_back({r, acc[r]});
      touched[r] = 0;
    }
  }
  return out;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(columns.begin(), columns.end(), [](const auto& c) { return c.empty(); });
}

// ---------------------------------------------------------------------------------------------
// Chain data

namespace {

void check_cap(const SimplicialComplex& k, int needed_dim) {
  if (k.dimension_cap() != SimplicialComplex::kNoCap && needed_dim > k.dimension_cap()) {
    throw DegreeAboveCap("degree requires simplices of dimension " + std::to_string(needed_dim) +
                         " but the complex is capped at " + std::to_string(k.dimension_cap()));
  }
}

/// Relative basis of dimension q: simplex indices of K not in L, and the inverse map.
void relative_basis(const SimplicialComplex& k, const SimplicialComplex* sub, int q, std::vector<std::size_t>& basis,
                    std::vector<std::int64_t>& index) {
  const std::size_t n = k.count(q);
  basis.clear();
  index.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (sub && sub->contains(k.simplex(q, i))) continue;
    index[i] = static_cast<std::int64_t>(basis.size());
    basis.push_back(i);
  }
}

/// ∂_q in relative bases: rows = basis(q-1), cols = basis(q).
SparseMatrix boundary_block(const SimplicialComplex& k, int q, const std::vector<std::size_t>& cols,
                            const std::vector<std::int64_t>& row_index, std::size_t row_count) {
  SparseMatrix m;
  m.rows = row_count;
  m.columns.resize(cols.size());
  Simplex face(static_cast<std::size_t>(q));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto s = k.simplex(q, cols[j]);
    auto& col = m.columns[j];
    for (std::size_t drop = 0; drop <= static_cast<std::size_t>(q); ++drop) {
      std::size_t w = 0;
      for (std::size_t t = 0; t <= static_cast<std::size_t>(q); ++t)
        if (t != drop) face[w++] = s[t];
      auto idx = k.find(face);
      if (!idx) throw std::logic_error("complex is not face-closed");
      std::int64_t r = row_index[*idx];
      if (r < 0) continue;
      col.push_back({static_cast<std::uint32_t>(r), Integer(drop % 2 == 0 ? 1 : -1)});
    }
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
  }
  return m;
}

SparseMatrix transpose(const SparseMatrix& m) {
  SparseMatrix t;
  t.rows = m.cols();
  t.columns.resize(m.rows);
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.columns[j]) t.columns[e.row].push_back({static_cast<std::uint32_t>(j), e.value});
  return t;
}

}  // namespace

ChainData boundary_matrices(const SimplicialComplex& k, int up_to, const SimplicialComplex* sub) {
  check_cap(k, up_to);
  if (sub && !sub->is_subcomplex_of(k)) throw NotASubcomplex("relative chains need a genuine subcomplex");
  ChainData data;
  data.basis.resize(static_cast<std::size_t>(up_to) + 1);
  std::vector<std::vector<std::int64_t>> index(static_cast<std::size_t>(up_to) + 1);
  for (int q = 0; q <= up_to; ++q) relative_basis(k, sub, q, data.basis[q], index[q]);
  data.boundary.resize(static_cast<std::size_t>(up_to) + 1);
  for (int q = 1; q <= up_to; ++q) {
    data.boundary[q] = boundary_block(k, q, data.basis[q], index[q - 1], data.basis[q - 1].size());
  }
  for (int q = 2; q <= up_to; ++q) {
    if (!data.boundary[q - 1].multiply(data.boundary[q]).is_zero()) {
      throw std::logic_error("boundary of boundary is nonzero in degree " + std::to_string(q));
    }
  }
  return data;
}

// ---------------------------------------------------------------------------------------------
// Reduction engine

namespace {

struct Entry {
  std::uint32_t idx;
  Integer val;
};
using SVec = std::vector<Entry>;

struct Step {
  bool pivot_column;  // true: element removed as a pivot column (log holds β); false: pivot row (γ)
  std::uint32_t index;
  Integer u_inv;
  SVec vec;
};

struct WorkMatrix {
  std::vector<SVec> cols;
  std::vector<std::vector<std::uint32_t>> rows;
};

void erase_value(std::vector<std::uint32_t>& v, std::uint32_t x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it != v.end()) {
    *it = v.back();
    v.pop_back();
  }
}

const Integer* lookup(const SVec& col, std::uint32_t row) {
  auto it = std::lower_bound(col.begin(), col.end(), row, [](const Entry& e, std::uint32_t r) { return e.idx < r; });
  if (it == col.end() || it->idx != row) return nullptr;
  return &it->val;
}

}  // namespace

struct HomologyComputation::Impl {
  struct Position {
    int degree = 0;
    std::size_t size = 0;
    std::vector<char> alive;
    std::vector<Step> steps;
    std::vector<std::uint32_t> residual;
    bool valid = false;
    FgAbGroup group;
    // residual Smith data
    IntMatrix u, u_inv, v2, v2_inv;
    std::size_t rank_in = 0, rank_out = 0, free_rank = 0;
    std::vector<std::size_t> torsion_index;
    std::vector<Integer> torsion_order;
  };

  Integer modulus;  // 0 for the integers
  bool field = false;
  bool rational = false;
  std::vector<Position> pos;
  std::vector<SparseMatrix> original;  // original[i] : pos i → pos i+1
  std::vector<WorkMatrix> work;
  std::vector<std::vector<std::size_t>> basis;        // per position: simplex indices
  std::vector<std::vector<std::int64_t>> basis_index;  // per position: simplex index → basis

  Integer norm(const Integer& v) const { return field ? mod_nonneg(v, modulus) : v; }
  bool unit(const Integer& v) const { return field ? !v.is_zero() : v.is_unit(); }
  Integer inverse(const Integer& v) const {
    if (!field) return v;
    return mod_nonneg(ext_gcd(v, modulus).s, modulus);
  }

  void load(std::size_t i, const SparseMatrix& m) {
    WorkMatrix& w = work[i];
    w.cols.resize(m.cols());
    w.rows.assign(m.rows, {});
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (const auto& e : m.columns[j]) {
        Integer v = norm(e.value);
        if (v.is_zero()) continue;
        w.cols[j].push_back({e.row, v});
        w.rows[e.row].push_back(static_cast<std::uint32_t>(j));
      }
    }
  }

  /// col_c -= factor * col_a inside matrix w, keeping the row index in sync.
  void merge_sub(WorkMatrix& w, std::uint32_t c, const SVec& ca, const Integer& factor) {
    SVec& cc = w.cols[c];
    SVec out;
    out.reserve(cc.size() + ca.size());
    std::size_t x = 0, y = 0;
    while (x < cc.size() || y < ca.size()) {
      if (y == ca.size() || (x < cc.size() && cc[x].idx < ca[y].idx)) {
        out.push_back(std::move(cc[x++]));
      } else if (x == cc.size() || ca[y].idx < cc[x].idx) {
        Integer v = norm(-(factor * ca[y].val));
        if (!v.is_zero()) {
          out.push_back({ca[y].idx, v});
          w.rows[ca[y].idx].push_back(c);
        }
        ++y;
      } else {
        Integer v = norm(cc[x].val - factor * ca[y].val);
        if (v.is_zero()) {
          erase_value(w.rows[cc[x].idx], c);
        } else {
          out.push_back({cc[x].idx, v});
        }
        ++x;
        ++y;
      }
    }
    cc.swap(out);
  }

  template <class OnColumn, class OnRow>
  void eliminate(std::size_t i, std::uint32_t b, std::uint32_t a, OnColumn on_column, OnRow on_row) {
    WorkMatrix& w = work[i];
    const Integer u = *lookup(w.cols[a], b);
    const Integer uinv = inverse(u);
    SVec beta;
    for (std::uint32_t c : w.rows[b]) {
      if (c != a) beta.push_back({c, *lookup(w.cols[c], b)});
    }
    std::sort(beta.begin(), beta.end(), [](const Entry& p, const Entry& q) { return p.idx < q.idx; });
    SVec gamma;
    for (const Entry& e : w.cols[a])
      if (e.idx != b) gamma.push_back(e);
    const SVec ca = w.cols[a];
    for (const Entry& e : beta) {
      merge_sub(w, e.idx, ca, norm(e.val * uinv));
      on_column(e.idx);
    }
    for (const Entry& e : ca) erase_value(w.rows[e.idx], a);
    SVec().swap(w.cols[a]);
    w.rows[b].clear();
    for (const Entry& e : gamma) on_row(e.idx);
    pos[i].alive[a] = 0;
    pos[i + 1].alive[b] = 0;
    if (i > 0) {
      WorkMatrix& prev = work[i - 1];
      for (std::uint32_t c : prev.rows[a]) {
        SVec& col = prev.cols[c];
        col.erase(std::remove_if(col.begin(), col.end(), [&](const Entry& e) { return e.idx == a; }), col.end());
      }
      prev.rows[a].clear();
    }
    if (i + 1 < work.size()) {
      WorkMatrix& next = work[i + 1];
      for (const Entry& e : next.cols[b]) erase_value(next.rows[e.idx], b);
      SVec().swap(next.cols[b]);
    }
    pos[i].steps.push_back({true, a, uinv, std::move(beta)});
    pos[i + 1].steps.push_back({false, b, uinv, std::move(gamma)});
  }

  /// Unit-pivot elimination on one differential; returns the number of pivots.
  std::size_t reduce(std::size_t i) {
    WorkMatrix& w = work[i];
    using Item = std::pair<std::size_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::deque<std::uint32_t> singles;
    for (std::uint32_t c = 0; c < w.cols.size(); ++c)
      if (pos[i].alive[c] && !w.cols[c].empty()) heap.push({w.cols[c].size(), c});
    for (std::uint32_t r = 0; r < w.rows.size(); ++r)
      if (pos[i + 1].alive[r] && w.rows[r].size() == 1) singles.push_back(r);
    auto on_column = [&](std::uint32_t c) {
      if (!w.cols[c].empty()) heap.push({w.cols[c].size(), c});
    };
    auto on_row = [&](std::uint32_t r) {
      if (w.rows[r].size() == 1) singles.push_back(r);
    };
    std::size_t pivots = 0;
    while (true) {
      while (!singles.empty()) {
        std::uint32_t r = singles.front();
        singles.pop_front();
        if (!pos[i + 1].alive[r] || w.rows[r].size() != 1) continue;
        std::uint32_t c = w.rows[r][0];
        const Integer* v = lookup(w.cols[c], r);
        if (!v || !unit(*v)) continue;
        eliminate(i, r, c, on_column, on_row);
        ++pivots;
      }
      if (heap.empty()) break;
      auto [weight, c] = heap.top();
      heap.pop();
      if (!pos[i].alive[c] || w.cols[c].size() != weight || weight == 0) continue;
      std::uint32_t best = 0;
      std::size_t best_weight = 0;
      bool found = false;
      for (const Entry& e : w.cols[c]) {
        if (!unit(e.val)) continue;
        std::size_t rw = w.rows[e.idx].size();
        if (!found || rw < best_weight) {
          found = true;
          best = e.idx;
          best_weight = rw;
        }
      }
      if (!found) continue;
      eliminate(i, best, c, on_column, on_row);
      ++pivots;
    }
    return pivots;
  }

  /// Residual part of differential i (rows: residual of pos i+1, cols: residual of pos i).
  /// Zero rows may be dropped when only column operations follow, and zero columns when
  /// only row operations follow; neither changes the Smith data used afterwards.
  IntMatrix residual_block(std::size_t i, bool drop_zero_rows, bool drop_zero_cols) const {
    const auto& rr = pos[i + 1].residual;
    std::vector<std::uint32_t> rc;
    for (std::uint32_t c : pos[i].residual)
      if (!drop_zero_cols || !work[i].cols[c].empty()) rc.push_back(c);
    std::vector<std::int64_t> row_at(pos[i + 1].size, -1);
    std::size_t rows = 0;
    if (drop_zero_rows) {
      std::vector<char> used(pos[i + 1].size, 0);
      for (std::uint32_t c : rc)
        for (const Entry& e : work[i].cols[c]) used[e.idx] = 1;
      for (std::uint32_t r : rr)
        if (used[r]) row_at[r] = static_cast<std::int64_t>(rows++);
    } else {
      for (std::uint32_t r : rr) row_at[r] = static_cast<std::int64_t>(rows++);
    }
    IntMatrix m(rows, drop_zero_cols ? rc.size() : pos[i].residual.size());
    std::size_t k = 0;
    for (std::uint32_t c : pos[i].residual) {
      if (drop_zero_cols && work[i].cols[c].empty()) continue;
      for (const Entry& e : work[i].cols[c]) {
        std::int64_t r = row_at[e.idx];
        if (r < 0) throw std::logic_error("residual entry in an eliminated row");
        m(static_cast<std::size_t>(r), k) = e.val;
      }
      ++k;
    }
    return m;
  }

  void finish_position(std::size_t i) {
    Position& p = pos[i];
    const std::size_t m = p.residual.size();
    IntMatrix in = i > 0 ? residual_block(i - 1, false, true) : IntMatrix(m, 0);
    IntMatrix out = i + 1 < pos.size() ? residual_block(i, true, false) : IntMatrix(0, m);
    if (field) {
      if (!in.is_zero() || !out.is_zero()) throw std::logic_error("field reduction left nonzero residual");
      std::vector<Integer> tors(m, modulus);
      p.group = FgAbGroup(0, std::move(tors));
      return;
    }
    SmithForm s = smith_normal_form(in, SmithOptions{true, false});
    p.rank_in = s.rank;
    p.u = std::move(s.u);
    p.u_inv = std::move(s.u_inv);
    std::vector<std::size_t> tail;
    for (std::size_t k = p.rank_in; k < m; ++k) tail.push_back(k);
    IntMatrix b2 = (out * p.u_inv).select_columns(tail);
    SmithForm s2 = smith_normal_form(b2, SmithOptions{false, true});
    p.rank_out = s2.rank;
    p.v2 = std::move(s2.v);
    p.v2_inv = std::move(s2.v_inv);
    p.free_rank = m - p.rank_in - p.rank_out;
    for (std::size_t k = 0; k < p.rank_in; ++k) {
      if (s.diagonal[k] > Integer(1)) {
        p.torsion_index.push_back(k);
        p.torsion_order.push_back(s.diagonal[k]);
      }
    }
    if (rational) {
      p.group = FgAbGroup::free(p.free_rank);
    } else {
      p.group = FgAbGroup(p.free_rank, p.torsion_order);
    }
  }

  std::vector<Integer> forward(std::size_t i, std::vector<Integer> x) const {
    const Position& p = pos[i];
    for (const Step& s : p.steps) {
      if (s.pivot_column) continue;
      const Integer t = x[s.index];
      if (t.is_zero()) continue;
      const Integer f = norm(t * s.u_inv);
      for (const Entry& e : s.vec) x[e.idx] = norm(x[e.idx] - f * e.val);
    }
    std::vector<Integer> r(p.residual.size());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = norm(x[p.residual[k]]);
    return r;
  }

  std::vector<Integer> backward(std::size_t i, const std::vector<Integer>& r) const {
    const Position& p = pos[i];
    std::vector<Integer> x(p.size);
    for (std::size_t k = 0; k < r.size(); ++k) x[p.residual[k]] = r[k];
    for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) {
      if (!it->pivot_column) continue;
      Integer acc = 0;
      for (const Entry& e : it->vec)
        if (!x[e.idx].is_zero()) acc += e.val * x[e.idx];
      x[it->index] = norm(-(it->u_inv * acc));
    }
    return x;
  }
};

HomologyComputation::~HomologyComputation() = default;
HomologyComputation::HomologyComputation(HomologyComputation&&) noexcept = default;
HomologyComputation& HomologyComputation::operator=(HomologyComputation&&) noexcept = default;

HomologyComputation::HomologyComputation(const SimplicialComplex& k, const Options& options)
    : options_(options), complex_(k), impl_(std::make_unique<Impl>()) {
  if (options.sub) {
    if (!options.sub->is_subcomplex_of(k)) throw NotASubcomplex("relative (co)homology needs a genuine subcomplex");
    if (options.reduced && !options.sub->empty())
      throw std::invalid_argument("reduced groups are only defined for absolute complexes");
    sub_ = std::make_unique<SimplicialComplex>(*options.sub);
  }
  options_.sub = sub_.get();
  if (options.max_degree < 0) throw std::invalid_argument("max_degree must be non-negative");
  check_cap(k, options.max_degree + 1);
  min_degree_ = options.reduced ? -1 : 0;
  max_degree_ = options.max_degree;

  Impl& im = *impl_;
  im.field = options.coefficients.kind == Coefficients::Kind::ModP;
  im.rational = options.coefficients.kind == Coefficients::Kind::Rationals;
  im.modulus = im.field ? Integer(static_cast<std::int64_t>(options.coefficients.p)) : Integer(0);

  // Degrees lo..hi+1 with their relative bases.
  const int lo = min_degree_;
  const int hi = max_degree_ + 1;
  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::vector<std::size_t>> basis_by_degree(count);
  std::vector<std::vector<std::int64_t>> index_by_degree(count);
  for (int q = lo; q <= hi; ++q) {
    auto& b = basis_by_degree[static_cast<std::size_t>(q - lo)];
    auto& ix = index_by_degree[static_cast<std::size_t>(q - lo)];
    if (q < 0) {
      b = {0};
      ix = {0};
    } else {
      relative_basis(k, sub_.get(), q, b, ix);
    }
  }
  // ∂_q for q = lo+1..hi (rows: degree q-1).
  std::vector<SparseMatrix> bd(count);
  for (int q = lo + 1; q <= hi; ++q) {
    const auto qi = static_cast<std::size_t>(q - lo);
    if (q == 0) {
      SparseMatrix aug;
      aug.rows = 1;
      aug.columns.resize(basis_by_degree[qi].size());
      for (auto& c : aug.columns) c.push_back({0, Integer(1)});
      bd[qi] = std::move(aug);
    } else {
      bd[qi] = boundary_block(k, q, basis_by_degree[qi], index_by_degree[qi - 1], basis_by_degree[qi - 1].size());
    }
  }
  if (options.verify) {
    for (int q = lo + 2; q <= hi; ++q) {
      const auto qi = static_cast<std::size_t>(q - lo);
      if (!bd[qi - 1].multiply(bd[qi]).is_zero()) throw std::logic_error("d∘d is nonzero");
    }
  }

  im.pos.resize(count);
  im.basis.resize(count);
  im.basis_index.resize(count);
  im.original.resize(count - 1);
  const bool co = options.variance == Variance::Cohomology;
  for (std::size_t i = 0; i < count; ++i) {
    const int degree = co ? lo + static_cast<int>(i) : hi - static_cast<int>(i);
    const auto di = static_cast<std::size_t>(degree - lo);
    im.pos[i].degree = degree;
    im.pos[i].size = basis_by_degree[di].size();
    im.pos[i].alive.assign(im.pos[i].size, 1);
    im.basis[i] = basis_by_degree[di];
    im.basis_index[i] = index_by_degree[di];
  }
  for (std::size_t i = 0; i + 1 < count; ++i) {
    if (co) {
      // δ : degree (lo+i) → (lo+i+1) is the transpose of ∂_{lo+i+1}
      im.original[i] = transpose(bd[i + 1]);
    } else {
      // ∂ : degree (hi-i) → (hi-i-1)
      im.original[i] = bd[count - 1 - i];
    }
  }
  im.work.resize(count - 1);
  for (std::size_t i = 0; i + 1 < count; ++i) im.load(i, im.original[i]);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i + 1 < count; ++i)
      if (im.reduce(i) > 0) progress = true;
  }
  for (auto& p : im.pos) {
    for (std::uint32_t x = 0; x < p.size; ++x)
      if (p.alive[x]) p.residual.push_back(x);
  }
  for (std::size_t i = 0; i < count; ++i) {
    const bool valid = co ? (i + 1 < count) : (i > 0);
    im.pos[i].valid = valid;
    if (valid) im.finish_position(i);
  }
}

namespace {
std::size_t position_of(int q, int lo, int hi_plus, bool co) {
  return co ? static_cast<std::size_t>(q - lo) : static_cast<std::size_t>(hi_plus - q);
}
}  // namespace

const FgAbGroup& HomologyComputation::group(int q) const {
  if (q < min_degree_ || q > max_degree_) throw std::out_of_range("degree outside the computed window");
  const bool co = options_.variance == Variance::Cohomology;
  return impl_->pos[position_of(q, min_degree_, max_degree_ + 1, co)].group;
}

std::size_t HomologyComputation::basis_size(int q) const {
  if (q < min_degree_ || q > max_degree_ + 1) throw std::out_of_range("degree outside the computed window");
  const bool co = options_.variance == Variance::Cohomology;
  return impl_->pos[position_of(q, min_degree_, max_degree_ + 1, co)].size;
}

std::size_t HomologyComputation::simplex_of_basis(int q, std::size_t b) const {
  const bool co = options_.variance == Variance::Cohomology;
  return impl_->basis[position_of(q, min_degree_, max_degree_ + 1, co)].at(b);
}

std::optional<std::size_t> HomologyComputation::basis_of_simplex(int q, std::size_t simplex_index) const {
  const bool co = options_.variance == Variance::Cohomology;
  const auto& ix = impl_->basis_index[position_of(q, min_degree_, max_degree_ + 1, co)];
  if (simplex_index >= ix.size() || ix[simplex_index] < 0) return std::nullopt;
  return static_cast<std::size_t>(ix[simplex_index]);
}

std::vector<Integer> HomologyComputation::coordinates(int q, const std::vector<Integer>& cycle) const {
  const bool co = options_.variance == Variance::Cohomology;
  const Impl& im = *impl_;
  const std::size_t i = position_of(q, min_degree_, max_degree_ + 1, co);
  const auto& p = im.pos.at(i);
  if (!p.valid) throw std::out_of_range("degree outside the computed window");
  if (cycle.size() != p.size) throw std::invalid_argument("cycle has wrong length");
  std::vector<Integer> r = im.forward(i, cycle);
  if (im.field) return r;
  std::vector<Integer> y = p.u * r;
  std::vector<Integer> out;
  std::vector<Integer> tail(y.begin() + static_cast<std::ptrdiff_t>(p.rank_in), y.end());
  std::vector<Integer> z = p.v2_inv * tail;
  for (std::size_t k = 0; k < p.rank_out; ++k)
    if (!z[k].is_zero()) throw std::invalid_argument("chain is not a (co)cycle");
  for (std::size_t k = p.rank_out; k < z.size(); ++k) out.push_back(z[k]);
  if (!im.rational) {
    for (std::size_t t = 0; t < p.torsion_index.size(); ++t)
      out.push_back(mod_nonneg(y[p.torsion_index[t]], p.torsion_order[t]));
  }
  return out;
}

std::vector<Integer> HomologyComputation::representative(int q, std::size_t generator) const {
  const bool co = options_.variance == Variance::Cohomology;
  const Impl& im = *impl_;
  const std::size_t i = position_of(q, min_degree_, max_degree_ + 1, co);
  const auto& p = im.pos.at(i);
  if (!p.valid) throw std::out_of_range("degree outside the computed window");
  if (generator >= p.group.generator_count()) throw std::out_of_range("generator index out of range");
  const std::size_t m = p.residual.size();
  std::vector<Integer> r(m);
  if (im.field) {
    r[generator] = 1;
  } else {
    std::vector<Integer> y(m);
    if (generator < p.free_rank) {
      const std::size_t col = p.rank_out + generator;
      for (std::size_t k = 0; k + p.rank_in < m; ++k) y[p.rank_in + k] = p.v2(k, col);
    } else {
      y[p.torsion_index[generator - p.free_rank]] = 1;
    }
    r = p.u_inv * y;
  }
  return im.backward(i, r);
}

std::vector<Integer> HomologyComputation::differential(int q, const std::vector<Integer>& chain) const {
  const bool co = options_.variance == Variance::Cohomology;
  const Impl& im = *impl_;
  const std::size_t i = position_of(q, min_degree_, max_degree_ + 1, co);
  if (i + 1 >= im.pos.size()) throw std::out_of_range("no differential leaves this degree");
  const SparseMatrix& m = im.original[i];
  std::vector<Integer> out(m.rows);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (chain[j].is_zero()) continue;
    for (const auto& e : m.columns[j]) out[e.row] += e.value * chain[j];
  }
  for (auto& v : out) v = im.norm(v);
  return out;
}

std::vector<std::size_t> HomologyComputation::residual_sizes() const {
  std::vector<std::size_t> out;
  for (int q = min_degree_; q <= max_degree_; ++q) {
    const bool co = options_.variance == Variance::Cohomology;
    out.push_back(impl_->pos[position_of(q, min_degree_, max_degree_ + 1, co)].residual.size());
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Convenience wrappers

namespace {
std::vector<FgAbGroup> collect(const HomologyComputation& h) {
  std::vector<FgAbGroup> out;
  for (int q = 0; q <= h.max_degree(); ++q) out.push_back(h.group(q));
  return out;
}
}  // namespace

std::vector<FgAbGroup> homology(const SimplicialComplex& k, Coefficients c, bool reduced, int max_degree) {
  HomologyComputation::Options o;
  o.coefficients = c;
  o.variance = Variance::Homology;
  o.reduced = reduced;
  o.max_degree = max_degree;
  return collect(HomologyComputation(k, o));
}

std::vector<FgAbGroup> cohomology(const SimplicialComplex& k, Coefficients c, bool reduced, int max_degree) {
  HomologyComputation::Options o;
  o.coefficients = c;
  o.reduced = reduced;
  o.max_degree = max_degree;
  return collect(HomologyComputation(k, o));
}

std::vector<FgAbGroup> relative_cohomology(const SimplicialComplex& k, const SimplicialComplex& sub, Coefficients c,
                                           int max_degree) {
  HomologyComputation::Options o;
  o.coefficients = c;
  o.max_degree = max_degree;
  o.sub = &sub;
  return collect(HomologyComputation(k, o));
}

// ---------------------------------------------------------------------------------------------
// Maps

namespace {

/// Image of simplex (dim q, index idx) of `from` under f, as (sign, simplex index in `to`);
/// sign 0 when degenerate.
std::pair<int, std::size_t> map_simplex(const SimplicialMap& f, const SimplicialComplex& from,
                                        const SimplicialComplex& to, int q, std::size_t idx) {
  auto s = from.simplex(q, idx);
  Simplex img(s.size());
  for (std::size_t t = 0; t < s.size(); ++t) img[t] = f.table.at(s[t]);
  int sign = sort_with_sign(img);
  if (sign == 0) return {0, 0};
  auto found = to.find(img);
  if (!found) throw std::invalid_argument("simplicial map sends a simplex outside the codomain");
  return {sign, *found};
}

void check_pair_map(const SimplicialMap& f, const HomologyComputation& dom, const HomologyComputation& cod) {
  if (!(dom.options().coefficients == cod.options().coefficients))
    throw std::invalid_argument("induced map: coefficient mismatch");
  if (dom.options().variance != cod.options().variance) throw std::invalid_argument("induced map: variance mismatch");
  if (dom.sub()) {
    const SimplicialComplex empty(cod.complex().vertex_count());
    const SimplicialComplex& target_sub = cod.sub() ? *cod.sub() : empty;
    for (int d = 0; d <= dom.sub()->dimension(); ++d)
      for (std::size_t i = 0; i < dom.sub()->count(d); ++i)
        if (!target_sub.contains(f.image(dom.sub()->simplex(d, i))))
          throw std::invalid_argument("map of pairs does not carry the subcomplex into the subcomplex");
  }
}

}  // namespace

Homomorphism induced_map(const SimplicialMap& f, const HomologyComputation& domain_side,
                         const HomologyComputation& codomain_side, int q) {
  check_pair_map(f, domain_side, codomain_side);
  const SimplicialComplex& k = domain_side.complex();
  const SimplicialComplex& kp = codomain_side.complex();
  const bool co = domain_side.options().variance == Variance::Cohomology;
  if (co) {
    const FgAbGroup& src = codomain_side.group(q);
    const FgAbGroup& tgt = domain_side.group(q);
    IntMatrix m(tgt.generator_count(), src.generator_count());
    // Precompute, for each basis element of the domain, its signed image basis element.
    const std::size_t nb = domain_side.basis_size(q);
    std::vector<std::pair<int, std::size_t>> img(nb, {0, 0});
    for (std::size_t b = 0; b < nb; ++b) {
      if (q < 0) {
        img[b] = {1, 0};
        continue;
      }
      auto [sign, idx] = map_simplex(f, k, kp, q, domain_side.simplex_of_basis(q, b));
      if (sign == 0) continue;
      auto tb = codomain_side.basis_of_simplex(q, idx);
      if (tb) img[b] = {sign, *tb};
    }
    for (std::size_t j = 0; j < src.generator_count(); ++j) {
      std::vector<Integer> phi = codomain_side.representative(q, j);
      std::vector<Integer> pulled(nb);
      for (std::size_t b = 0; b < nb; ++b)
        if (img[b].first != 0) pulled[b] = Integer(img[b].first) * phi[img[b].second];
      m.set_column(j, domain_side.coordinates(q, pulled));
    }
    return Homomorphism(src, tgt, std::move(m));
  }
  const FgAbGroup& src = domain_side.group(q);
  const FgAbGroup& tgt = codomain_side.group(q);
  IntMatrix m(tgt.generator_count(), src.generator_count());
  for (std::size_t j = 0; j < src.generator_count(); ++j) {
    std::vector<Integer> c = domain_side.representative(q, j);
    std::vector<Integer> pushed(codomain_side.basis_size(q));
    for (std::size_t b = 0; b < c.size(); ++b) {
      if (c[b].is_zero()) continue;
      if (q < 0) {
        pushed[0] += c[b];
        continue;
      }
      auto [sign, idx] = map_simplex(f, k, kp, q, domain_side.simplex_of_basis(q, b));
      if (sign == 0) continue;
      auto tb = codomain_side.basis_of_simplex(q, idx);
      if (tb) pushed[*tb] += Integer(sign) * c[b];
    }
    m.set_column(j, codomain_side.coordinates(q, pushed));
  }
  return Homomorphism(src, tgt, std::move(m));
}

Homomorphism restriction_map(const HomologyComputation& big, const HomologyComputation& small, int q) {
  return induced_map(SimplicialMap::identity(small.complex().vertex_count()), small, big, q);
}

Homomorphism connecting_map(const HomologyComputation& sub_absolute, const HomologyComputation& pair, int q) {
  if (pair.options().variance != Variance::Cohomology || sub_absolute.options().variance != Variance::Cohomology)
    throw std::invalid_argument("connecting map is implemented for cohomology");
  if (!pair.sub()) throw NotASubcomplex("connecting map needs a pair");
  if (!(sub_absolute.complex() == *pair.sub())) throw NotASubcomplex("subcomplex of the pair does not match");
  if (sub_absolute.sub()) throw std::invalid_argument("subcomplex cohomology must be absolute");
  const SimplicialComplex& k = pair.complex();
  const FgAbGroup& src = sub_absolute.group(q);
  const FgAbGroup& tgt = pair.group(q + 1);
  IntMatrix m(tgt.generator_count(), src.generator_count());
  const std::size_t nsub = sub_absolute.basis_size(q);
  // Extension by zero: simplex index in K for each basis element of L.
  std::vector<std::size_t> where(nsub);
  for (std::size_t b = 0; b < nsub; ++b) {
    if (q < 0) {
      where[b] = 0;
      continue;
    }
    auto idx = k.find(sub_absolute.complex().simplex(q, sub_absolute.simplex_of_basis(q, b)));
    if (!idx) throw NotASubcomplex("subcomplex simplex missing from the complex");
    where[b] = *idx;
  }
  const std::size_t nk = q < 0 ? 1 : k.count(q);
  for (std::size_t j = 0; j < src.generator_count(); ++j) {
    std::vector<Integer> phi = sub_absolute.representative(q, j);
    std::vector<Integer> ext(nk);
    for (std::size_t b = 0; b < nsub; ++b) ext[where[b]] = phi[b];
    // (δ ext)(σ) on the relative basis of degree q+1.
    const std::size_t nb = pair.basis_size(q + 1);
    std::vector<Integer> value(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      if (q < 0) {
        value[b] = ext[0];
        continue;
      }
      auto s = k.simplex(q + 1, pair.simplex_of_basis(q + 1, b));
      Simplex face(static_cast<std::size_t>(q + 1));
      Integer acc = 0;
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        std::size_t w = 0;
        for (std::size_t t = 0; t < s.size(); ++t)
          if (t != drop) face[w++] = s[t];
        auto idx = k.find(face);
        if (!ext[*idx].is_zero()) acc += Integer(drop % 2 == 0 ? 1 : -1) * ext[*idx];
      }
      value[b] = acc;
    }
    if (pair.options().coefficients.kind == Coefficients::Kind::ModP) {
      for (auto& v : value) v = mod_nonneg(v, Integer(static_cast<std::int64_t>(pair.options().coefficients.p)));
    }
    m.set_column(j, pair.coordinates(q + 1, value));
  }
  return Homomorphism(src, tgt, std::move(m));
}

// ---------------------------------------------------------------------------------------------
// Mayer–Vietoris

nlohmann::json MayerVietorisReport::to_json() const {
  nlohmann::json pos = nlohmann::json::array();
  for (const auto& p : positions) {
    pos.push_back({{"position", p.label},
                   {"exact", p.exact},
                   {"kernel", p.kernel.to_json()},
                   {"image", p.image.to_json()}});
  }
  nlohmann::json gs = nlohmann::json::object();
  for (const auto& [name, g] : groups) gs[name] = {{"group", g.str()}, {"value", g.to_json()}};
  return {{"positions", pos}, {"groups", gs}, {"union_consistent", union_is_consistent}, {"pass", pass}};
}

MayerVietorisReport mayer_vietoris_check(const SimplicialComplex& whole, const SimplicialComplex& a,
                                         const SimplicialComplex& b, const SimplicialComplex& overlap,
                                         Coefficients c, int lo, int hi) {
  if (!(SimplicialComplex::union_of(a, b) == whole)) {
    throw InconsistentUnion("complex is not the union of the two pieces");
  }
  if (!(SimplicialComplex::intersection_of(a, b) == overlap)) {
    throw InconsistentUnion("overlap is not the intersection of the two pieces");
  }
  if (lo < 0 || hi < lo) throw std::invalid_argument("bad degree window");
  HomologyComputation::Options o;
  o.coefficients = c;
  o.max_degree = hi + 1;
  HomologyComputation hk(whole, o), ha(a, o), hb(b, o), hi_(overlap, o);

  MayerVietorisReport rep;
  auto name = [](const std::string& space, int q) { return "H^" + std::to_string(q) + "(" + space + ")"; };

  // Maps for each degree.
  struct Maps {
    Presentation sum;
    Homomorphism r;      // H^q(K) → H^q(A)⊕H^q(B)
    Homomorphism d;      // H^q(A)⊕H^q(B) → H^q(A∩B)
  };
  std::vector<Maps> maps;
  for (int q = lo; q <= hi + 1; ++q) {
    Presentation sum = direct_sum({ha.group(q), hb.group(q)});
    Homomorphism ra = restriction_map(hk, ha, q);
    Homomorphism rb = restriction_map(hk, hb, q);
    Homomorphism ia = restriction_map(ha, hi_, q);
    Homomorphism ib = restriction_map(hb, hi_, q);
    const std::size_t na = ha.group(q).generator_count();
    const std::size_t nb = hb.group(q).generator_count();
    IntMatrix stacked(na + nb, hk.group(q).generator_count());
    for (std::size_t j = 0; j < stacked.cols(); ++j) {
      for (std::size_t i = 0; i < na; ++i) stacked(i, j) = ra.matrix()(i, j);
      for (std::size_t i = 0; i < nb; ++i) stacked(na + i, j) = rb.matrix()(i, j);
    }
    IntMatrix diff(hi_.group(q).generator_count(), na + nb);
    for (std::size_t i = 0; i < diff.rows(); ++i) {
      for (std::size_t j = 0; j < na; ++j) diff(i, j) = ia.matrix()(i, j);
      for (std::size_t j = 0; j < nb; ++j) diff(i, na + j) = -ib.matrix()(i, j);
    }
    Homomorphism r(hk.group(q), sum.group, sum.to_canonical * stacked);
    Homomorphism d(sum.group, hi_.group(q), diff * sum.from_canonical);
    maps.push_back({std::move(sum), std::move(r), std::move(d)});
    rep.groups.emplace_back(name("K", q), hk.group(q));
    rep.groups.emplace_back(name("A", q) + "+" + name("B", q), maps.back().sum.group);
    rep.groups.emplace_back(name("A∩B", q), hi_.group(q));
  }
  // Connecting maps Δ_q : H^q(A∩B) → H^{q+1}(K), computed on the cochain level: extend a
  // cocycle of A∩B by zero over A, apply δ, and read the result on K (zero off A).
  auto delta = [&](int q) {
    const FgAbGroup& src = hi_.group(q);
    const FgAbGroup& tgt = hk.group(q + 1);
    IntMatrix m(tgt.generator_count(), src.generator_count());
    for (std::size_t j = 0; j < src.generator_count(); ++j) {
      std::vector<Integer> phi = hi_.representative(q, j);
      std::vector<Integer> on_a(ha.basis_size(q));
      for (std::size_t bb = 0; bb < phi.size(); ++bb) {
        auto idx = a.find(overlap.simplex(q, hi_.simplex_of_basis(q, bb)));
        on_a[*ha.basis_of_simplex(q, *idx)] = phi[bb];
      }
      std::vector<Integer> d_on_a = ha.differential(q, on_a);
      std::vector<Integer> on_k(hk.basis_size(q + 1));
      for (std::size_t bb = 0; bb < d_on_a.size(); ++bb) {
        if (d_on_a[bb].is_zero()) continue;
        auto idx = whole.find(a.simplex(q + 1, ha.simplex_of_basis(q + 1, bb)));
        on_k[*hk.basis_of_simplex(q + 1, *idx)] = d_on_a[bb];
      }
      m.set_column(j, hk.coordinates(q + 1, on_k));
    }
    return Homomorphism(src, tgt, std::move(m));
  };
  std::vector<Homomorphism> deltas;
  for (int q = lo; q <= hi; ++q) deltas.push_back(delta(q));

  auto check = [&](const std::string& label, const Subgroup& ker, const Subgroup& img) {
    MayerVietorisReport::Position p;
    p.label = label;
    p.exact = ker == img;
    p.kernel = ker.isomorphism_type();
    p.image = img.isomorphism_type();
    rep.positions.push_back(std::move(p));
  };
  for (int q = lo; q <= hi; ++q) {
    const auto qi = static_cast<std::size_t>(q - lo);
    const Maps& mq = maps[qi];
    // H^q(K): ker r_q = im Δ_{q-1}, or 0 at the start of the sequence
    Subgroup incoming = q == 0 ? Subgroup::trivial(hk.group(q))
                        : (q > lo ? deltas[qi - 1].image() : delta(q - 1).image());
    check(name("K", q), mq.r.kernel(), incoming);
    check(name("A", q) + "+" + name("B", q), mq.d.kernel(), mq.r.image());
    check(name("A∩B", q), deltas[qi].kernel(), mq.d.image());
  }
  check(name("K", hi + 1), maps.back().r.kernel(), deltas.back().image());
  rep.pass = std::all_of(rep.positions.begin(), rep.positions.end(), [](const auto& p) { return p.exact; });
  return rep;
}

nlohmann::json groups_to_json(const std::vector<FgAbGroup>& groups, int first_degree) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < groups.size(); ++i) {
    out.push_back({{"degree", first_degree + static_cast<int>(i)},
                   {"group", groups[i].str()},
                   {"value", groups[i].to_json()}});
  }
  return out;
}

}  // namespace coarse
