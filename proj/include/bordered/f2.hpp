#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

namespace bordered::f2 {

/// A vector over GF(2), stored as the sorted set of indices with coefficient 1.
class F2Vector {
 public:
  F2Vector() = default;
  /// Throws Error(InvalidArgument) on repeated indices.
  explicit F2Vector(std::vector<std::size_t> support);
  F2Vector(std::initializer_list<std::size_t> support);

  const std::vector<std::size_t>& support() const noexcept { return support_; }
  bool empty() const noexcept { return support_.empty(); }
  std::size_t weight() const noexcept { return support_.size(); }
  bool contains(std::size_t i) const;
  void toggle(std::size_t i);

  F2Vector& operator+=(const F2Vector& other);
  friend F2Vector operator+(F2Vector a, const F2Vector& b) { return a += b; }
  friend bool operator==(const F2Vector&, const F2Vector&) = default;

 private:
  std::vector<std::size_t> support_;
};

/// Sparse matrix over GF(2). Entries are present or absent; each row keeps its
/// column indices sorted.
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols);
  /// Throws Error(InvalidArgument) on out-of-range or duplicate entries.
  F2Matrix(std::size_t rows, std::size_t cols,
           const std::vector<std::pair<std::size_t, std::size_t>>& entries);

  static F2Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const std::vector<std::size_t>& row(std::size_t r) const { return row_support_[r]; }
  bool at(std::size_t r, std::size_t c) const;
  void toggle(std::size_t r, std::size_t c);
  std::size_t nonzeros() const;
  bool is_zero() const;
  std::vector<std::pair<std::size_t, std::size_t>> entries() const;

  /// Column c as a vector of row indices.
  F2Vector column(std::size_t c) const;
  F2Vector apply(const F2Vector& v) const;
  F2Matrix transpose() const;

  friend F2Matrix operator*(const F2Matrix& a, const F2Matrix& b);
  friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<std::size_t>> row_support_;
};

std::size_t rank(const F2Matrix& m);

/// Basis of the null space: one vector per pivot-free column, in increasing
/// column order; the vector has a 1 at its free column and zeros at the others.
std::vector<F2Vector> kernel_basis(const F2Matrix& m);

/// Some x with m * x = target, or nullopt when the system is inconsistent.
/// Free variables are set to zero. Throws Error(InvalidArgument) when target
/// has an index >= rows.
std::optional<F2Vector> solve(const F2Matrix& m, const F2Vector& target);

/// dim ker(d_out) - rank(d_in) for a two-step complex
///   C_prev --d_in--> C --d_out--> C_next.
/// Throws Error(NotAComplex) when d_out * d_in != 0 and
/// Error(InvalidArgument) when the shapes do not compose.
std::size_t homology_dim(const F2Matrix& d_in, const F2Matrix& d_out);

}  // namespace bordered::f2
