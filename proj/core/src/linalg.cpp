#include "coarse/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace coarse {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<Integer> IntMatrix::column(std::size_t c) const {
  std::vector<Integer> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<Integer> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

void IntMatrix::set_column(std::size_t c, const std::vector<Integer>& v) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  IntMatrix m(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) m(r, j) = (*this)(r, cols[j]);
  return m;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& rows) const {
  IntMatrix m(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(rows[i], c);
  return m;
}

IntMatrix IntMatrix::hcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
  }
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v.is_zero(); });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  IntMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) m(i, j) += aik * b(k, j);
      }
    }
  }
  return m;
}

std::vector<Integer> operator*(const IntMatrix& a, const std::vector<Integer>& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
  std::vector<Integer> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (!x[k].is_zero() && !a(i, k).is_zero()) y[i] += a(i, k) * x[k];
  return y;
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& c) {
  if (c.is_zero()) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Integer& s = (*this)(src, j);
    if (!s.is_zero()) (*this)(dst, j) += c * s;
  }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& c) {
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Integer& s = (*this)(i, src);
    if (!s.is_zero()) (*this)(i, dst) += c * s;
  }
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

namespace {

/// Bookkeeping wrapper: applies elementary operations to A and mirrors them into
/// the requested transforms.
struct SmithWork {
  IntMatrix a;
  IntMatrix u, u_inv, v, v_inv;
  bool left;
  bool right;

  void row_add(std::size_t dst, std::size_t src, const Integer& c) {
    a.add_row_multiple(dst, src, c);
    if (left) {
      u.add_row_multiple(dst, src, c);
      u_inv.add_col_multiple(src, dst, -c);
    }
  }
  void col_add(std::size_t dst, std::size_t src, const Integer& c) {
    a.add_col_multiple(dst, src, c);
    if (right) {
      v.add_col_multiple(dst, src, c);
      v_inv.add_row_multiple(src, dst, -c);
    }
  }
  void row_swap(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    if (left) {
      u.swap_rows(i, j);
      u_inv.swap_cols(i, j);
    }
  }
  void col_swap(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    if (right) {
      v.swap_cols(i, j);
      v_inv.swap_rows(i, j);
    }
  }
  void row_negate(std::size_t i) {
    a.negate_row(i);
    if (left) {
      u.negate_row(i);
      u_inv.negate_col(i);
    }
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input, SmithOptions opts) {
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  SmithWork w{input, {}, {}, {}, {}, opts.track_left, opts.track_right};
  if (w.left) {
    w.u = IntMatrix::identity(m);
    w.u_inv = IntMatrix::identity(m);
  }
  if (w.right) {
    w.v = IntMatrix::identity(n);
    w.v_inv = IntMatrix::identity(n);
  }
  IntMatrix& a = w.a;
  const std::size_t lim = std::min(m, n);
  std::size_t t = 0;
  for (; t < lim; ++t) {
    // Global pivot: minimal |a_ij| over the active block, then lowest row, then lowest column.
    auto find_pivot = [&](std::size_t& pr, std::size_t& pc) {
      bool found = false;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Integer& x = a(i, j);
          if (x.is_zero()) continue;
          Integer ax = abs(x);
          if (!found || ax < best) {
            found = true;
            best = ax;
            pr = i;
            pc = j;
            if (best.is_unit()) return true;
          }
        }
      return found;
    };
    std::size_t pr = 0, pc = 0;
    if (!find_pivot(pr, pc)) break;
    w.row_swap(t, pr);
    w.col_swap(t, pc);
    while (true) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t).is_zero()) continue;
        Integer q = floor_divmod(a(i, t), a(t, t)).quot;
        w.row_add(i, t, -q);
        if (!a(i, t).is_zero()) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j).is_zero()) continue;
        Integer q = floor_divmod(a(t, j), a(t, t)).quot;
        w.col_add(j, t, -q);
        if (!a(t, j).is_zero()) dirty = true;
      }
      if (dirty) {
        // Move the smallest remainder in the pivot row/column to the pivot.
        std::size_t bi = t, bj = t;
        Integer best = abs(a(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (!a(i, t).is_zero() && abs(a(i, t)) < best) {
            best = abs(a(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (!a(t, j).is_zero() && abs(a(t, j)) < best) {
            best = abs(a(t, j));
            bi = t;
            bj = j;
          }
        w.row_swap(t, bi);
        w.col_swap(t, bj);
        continue;
      }
      // Divisibility condition on the remaining block.
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!floor_divmod(a(i, j), a(t, t)).rem.is_zero()) {
            w.row_add(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (a(t, t).sign() < 0) w.row_negate(t);
  }
  SmithForm out;
  out.rank = t;
  out.diagonal.resize(lim);
  for (std::size_t i = 0; i < lim; ++i) out.diagonal[i] = a(i, i);
  out.d = std::move(w.a);
  out.u = std::move(w.u);
  out.u_inv = std::move(w.u_inv);
  out.v = std::move(w.v);
  out.v_inv = std::move(w.v_inv);
  return out;
}

std::vector<Integer> invariant_factors(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a, {false, false});
  s.diagonal.resize(s.rank);
  return s.diagonal;
}

std::size_t integer_rank(const IntMatrix& a) { return smith_normal_form(a, {false, false}).rank; }

IntMatrix column_hermite_basis(const IntMatrix& a) {
  // Row-style HNF of the transpose: generators as rows, echelon with positive pivots
  // and entries above each pivot reduced into [0, pivot).
  IntMatrix h = a.transpose();
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    while (true) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (!h(i, c).is_zero() && (best == m || abs(h(i, c)) < abs(h(best, c)))) best = i;
      if (best == m) break;
      h.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c).is_zero()) continue;
        Integer q = floor_divmod(h(i, c), h(r, c)).quot;
        h.add_row_multiple(i, r, -q);
        if (!h(i, c).is_zero()) clean = false;
      }
      if (clean) break;
    }
    if (r < m && !h(r, c).is_zero()) {
      if (h(r, c).sign() < 0) h.negate_row(r);
      for (std::size_t i = 0; i < r; ++i) {
        Integer q = floor_divmod(h(i, c), h(r, c)).quot;
        h.add_row_multiple(i, r, -q);
      }
      pivots.push_back(c);
      ++r;
    }
  }
  IntMatrix out(n, r);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t j = 0; j < n; ++j) out(j, k) = h(k, j);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a, {false, true});
  const std::size_t n = a.cols();
  std::vector<std::size_t> cols;
  for (std::size_t j = s.rank; j < n; ++j) cols.push_back(j);
  return s.v.select_columns(cols);
}

std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, const std::vector<Integer>& y) {
  if (y.size() != a.rows()) throw std::invalid_argument("solve_integer: shape mismatch");
  SmithForm s = smith_normal_form(a, {true, true});
  std::vector<Integer> uy = s.u * y;
  std::vector<Integer> z(a.cols());
  for (std::size_t i = 0; i < uy.size(); ++i) {
    if (i < s.rank) {
      DivMod qr = floor_divmod(uy[i], s.diagonal[i]);
      if (!qr.rem.is_zero()) return std::nullopt;
      z[i] = qr.quot;
    } else if (!uy[i].is_zero()) {
      return std::nullopt;
    }
  }
  return s.v * z;
}

}  // namespace coarse
