#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "coarse/integer.hpp"

namespace coarse {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Integer> column(std::size_t c) const;
  std::vector<Integer> row(std::size_t r) const;
  void set_column(std::size_t c, const std::vector<Integer>& v);

  IntMatrix transpose() const;
  IntMatrix select_columns(const std::vector<std::size_t>& cols) const;
  IntMatrix select_rows(const std::vector<std::size_t>& rows) const;
  /// Horizontal concatenation [A | B]; row counts must agree.
  static IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);

  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend std::vector<Integer> operator*(const IntMatrix& a, const std::vector<Integer>& x);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  // Elementary operations (used by the normal-form routines).
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& c);  // row_dst += c*row_src
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& c);  // col_dst += c*col_src
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// U * A * V = D with U, V unimodular and D diagonal with d_0 | d_1 | ... (all >= 0).
struct SmithForm {
  IntMatrix d;
  IntMatrix u, u_inv;
  IntMatrix v, v_inv;
  std::vector<Integer> diagonal;  // first `rank` entries are the nonzero invariant factors
  std::size_t rank = 0;
};

struct SmithOptions {
  bool track_left = true;
  bool track_right = true;
};

/// Smith normal form. Pivot rule: minimal absolute value, then lowest row, then lowest column.
SmithForm smith_normal_form(const IntMatrix& a, SmithOptions opts = {});

/// Invariant factors only (no transforms).
std::vector<Integer> invariant_factors(const IntMatrix& a);

std::size_t integer_rank(const IntMatrix& a);

/// Column Hermite normal form of the lattice spanned by the columns of `a`:
/// returns an n x k matrix whose columns are a canonical basis of the lattice.
IntMatrix column_hermite_basis(const IntMatrix& a);

/// Basis (as columns) of the integer kernel {x : a x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

/// Solves a x = y over the integers; nullopt when no integral solution exists.
std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, const std::vector<Integer>& y);

}  // namespace coarse
