#include "bordered/f2.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "bordered/errors.hpp"

namespace bordered::f2 {

F2Vector::F2Vector(std::vector<std::size_t> support) : support_(std::move(support)) {
  std::sort(support_.begin(), support_.end());
  if (std::adjacent_find(support_.begin(), support_.end()) != support_.end())
    throw Error(ErrorKind::InvalidArgument, "F2Vector: repeated index in support");
}

F2Vector::F2Vector(std::initializer_list<std::size_t> support)
    : F2Vector(std::vector<std::size_t>(support)) {}

bool F2Vector::contains(std::size_t i) const {
  return std::binary_search(support_.begin(), support_.end(), i);
}

void F2Vector::toggle(std::size_t i) {
  auto it = std::lower_bound(support_.begin(), support_.end(), i);
  if (it != support_.end() && *it == i)
    support_.erase(it);
  else
    support_.insert(it, i);
}

F2Vector& F2Vector::operator+=(const F2Vector& other) {
  std::vector<std::size_t> out;
  out.reserve(support_.size() + other.support_.size());
  std::set_symmetric_difference(support_.begin(), support_.end(), other.support_.begin(),
                                other.support_.end(), std::back_inserter(out));
  support_ = std::move(out);
  return *this;
}

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_support_(rows) {}

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols,
                   const std::vector<std::pair<std::size_t, std::size_t>>& entries)
    : F2Matrix(rows, cols) {
  for (auto [r, c] : entries) {
    if (r >= rows || c >= cols)
      throw Error(ErrorKind::InvalidArgument,
                  "F2Matrix: entry (" + std::to_string(r) + "," + std::to_string(c) +
                      ") out of bounds");
    row_support_[r].push_back(c);
  }
  for (auto& row : row_support_) {
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end())
      throw Error(ErrorKind::InvalidArgument, "F2Matrix: duplicate entry");
  }
}

F2Matrix F2Matrix::identity(std::size_t n) {
  F2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.row_support_[i].push_back(i);
  return m;
}

bool F2Matrix::at(std::size_t r, std::size_t c) const {
  const auto& row = row_support_.at(r);
  return std::binary_search(row.begin(), row.end(), c);
}

void F2Matrix::toggle(std::size_t r, std::size_t c) {
  if (r >= rows_ || c >= cols_) throw Error(ErrorKind::InvalidArgument, "F2Matrix: toggle out of bounds");
  auto& row = row_support_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c);
  if (it != row.end() && *it == c)
    row.erase(it);
  else
    row.insert(it, c);
}

std::size_t F2Matrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : row_support_) n += row.size();
  return n;
}

bool F2Matrix::is_zero() const { return nonzeros() == 0; }

std::vector<std::pair<std::size_t, std::size_t>> F2Matrix::entries() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < rows_; ++r)
    for (auto c : row_support_[r]) out.emplace_back(r, c);
  return out;
}

F2Vector F2Matrix::column(std::size_t c) const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < rows_; ++r)
    if (at(r, c)) out.push_back(r);
  return F2Vector(std::move(out));
}

F2Vector F2Matrix::apply(const F2Vector& v) const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto& row = row_support_[r];
    std::size_t parity = 0;
    // Both sides sorted: count the intersection.
    auto a = row.begin();
    auto b = v.support().begin();
    while (a != row.end() && b != v.support().end()) {
      if (*a < *b) ++a;
      else if (*b < *a) ++b;
      else { ++parity; ++a; ++b; }
    }
    if (parity & 1U) out.push_back(r);
  }
  return F2Vector(std::move(out));
}

F2Matrix F2Matrix::transpose() const {
  F2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (auto c : row_support_[r]) t.row_support_[c].push_back(r);
  return t;
}

F2Matrix operator*(const F2Matrix& a, const F2Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidArgument, "F2Matrix: shape mismatch in product");
  F2Matrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    F2Vector acc;
    for (auto k : a.row_support_[r]) acc += F2Vector(b.row_support_[k]);
    out.row_support_[r] = acc.support();
  }
  return out;
}

namespace {

// Dense row-major bit matrix used internally for elimination.
class BitRows {
 public:
  BitRows(std::size_t rows, std::size_t cols)
      : cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

  std::size_t rows() const { return words_ == 0 ? 0 : bits_.size() / words_; }
  std::uint64_t* row(std::size_t r) { return bits_.data() + r * words_; }
  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U;
  }
  void set(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64); }
  void xor_into(std::size_t dst, std::size_t src) {
    std::uint64_t* d = row(dst);
    const std::uint64_t* s = row(src);
    for (std::size_t w = 0; w < words_; ++w) d[w] ^= s[w];
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a), row(a) + words_, row(b));
  }

 private:
  std::size_t cols_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

struct Echelon {
  BitRows rows;
  std::vector<std::size_t> pivot_cols;  // pivot column of row i, i < rank
};

// Reduced row echelon form over the first `eliminate_cols` columns.
Echelon reduce(const F2Matrix& m, const F2Vector* augment) {
  std::size_t width = m.cols() + (augment ? 1 : 0);
  BitRows bits(m.rows(), std::max<std::size_t>(width, 1));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (auto c : m.row(r)) bits.set(r, c);
  if (augment)
    for (auto r : augment->support()) bits.set(r, m.cols());

  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols() && next < m.rows(); ++c) {
    std::size_t p = next;
    while (p < m.rows() && !bits.get(p, c)) ++p;
    if (p == m.rows()) continue;
    bits.swap_rows(p, next);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != next && bits.get(r, c)) bits.xor_into(r, next);
    pivots.push_back(c);
    ++next;
  }
  return {std::move(bits), std::move(pivots)};
}

}  // namespace

std::size_t rank(const F2Matrix& m) { return reduce(m, nullptr).pivot_cols.size(); }

std::vector<F2Vector> kernel_basis(const F2Matrix& m) {
  Echelon e = reduce(m, nullptr);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<F2Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::size_t> support{f};
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
      if (e.rows.get(i, f)) support.push_back(e.pivot_cols[i]);
    basis.emplace_back(std::move(support));
  }
  return basis;
}

std::optional<F2Vector> solve(const F2Matrix& m, const F2Vector& target) {
  if (!target.empty() && target.support().back() >= m.rows())
    throw Error(ErrorKind::InvalidArgument, "solve: target length exceeds matrix rows");
  Echelon e = reduce(m, &target);
  std::size_t rank = e.pivot_cols.size();
  for (std::size_t r = rank; r < m.rows(); ++r)
    if (e.rows.get(r, m.cols())) return std::nullopt;
  std::vector<std::size_t> x;
  for (std::size_t i = 0; i < rank; ++i)
    if (e.rows.get(i, m.cols())) x.push_back(e.pivot_cols[i]);
  return F2Vector(std::move(x));
}

std::size_t homology_dim(const F2Matrix& d_in, const F2Matrix& d_out) {
  if (d_out.cols() != d_in.rows())
    throw Error(ErrorKind::InvalidArgument, "homology_dim: d_out.cols must equal d_in.rows");
  if (!(d_out * d_in).is_zero()) throw Error(ErrorKind::NotAComplex, "homology_dim: d_out * d_in != 0");
  return (d_out.cols() - rank(d_out)) - rank(d_in);
}

}  // namespace bordered::f2
