// Rectangular matrices of polynomials.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "reesdual/poly.hpp"

namespace reesdual {

template <class K>
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr<K> ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Poly<K>(ring_)),
        col_deg_(cols) {}

  static PolyMatrix from_rows(RingPtr<K> ring, const std::vector<std::vector<Poly<K>>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    PolyMatrix m(std::move(ring), rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static PolyMatrix column(RingPtr<K> ring, const std::vector<Poly<K>>& entries) {
    PolyMatrix m(std::move(ring), entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
    return m;
  }

  const RingPtr<K>& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Poly<K>& operator()(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
  const Poly<K>& operator()(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }

  std::vector<Poly<K>> column_entries(std::size_t j) const {
    std::vector<Poly<K>> c;
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  const std::optional<BiDegree>& declared_bidegree(std::size_t j) const { return col_deg_.at(j); }

  /// Declares a column bidegree after checking every entry is zero or of that bidegree.
  void declare_bidegree(std::size_t j, BiDegree d) {
    for (std::size_t i = 0; i < rows_; ++i)
      if (!(*this)(i, j).bidegree().compatible(d))
        throw std::invalid_argument("column " + std::to_string(j) + " is not of constant bidegree");
    col_deg_.at(j) = d;
  }

  /// [this | other]
  PolyMatrix hconcat(const PolyMatrix& other) const {
    if (other.rows_ != rows_) throw std::invalid_argument("hconcat: row count mismatch");
    PolyMatrix r(ring_, rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < other.cols_; ++j) r(i, cols_ + j) = other(i, j);
    }
    for (std::size_t j = 0; j < cols_; ++j) r.col_deg_[j] = col_deg_[j];
    for (std::size_t j = 0; j < other.cols_; ++j) r.col_deg_[cols_ + j] = other.col_deg_[j];
    return r;
  }

  PolyMatrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
    PolyMatrix r(ring_, row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
      for (std::size_t j = 0; j < col_idx.size(); ++j) r(i, j) = (*this)(row_idx[i], col_idx[j]);
    for (std::size_t j = 0; j < col_idx.size(); ++j) r.col_deg_[j] = col_deg_.at(col_idx[j]);
    return r;
  }

  PolyMatrix without_row(std::size_t t) const {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < rows_; ++i)
      if (i != t) rows.push_back(i);
    for (std::size_t j = 0; j < cols_; ++j) cols.push_back(j);
    return select(rows, cols);
  }

  /// Row vector times matrix: entries of [v]·M.
  std::vector<Poly<K>> left_multiply(std::span<const Poly<K>> v) const {
    if (v.size() != rows_) throw std::invalid_argument("left_multiply: length mismatch");
    std::vector<Poly<K>> out(cols_, Poly<K>(ring_));
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i)
        if (!v[i].is_zero() && !(*this)(i, j).is_zero()) out[j] += v[i] * (*this)(i, j);
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Poly<K>& p) { return p.is_zero(); });
  }

  /// Determinant by Laplace expansion along columns, sparsest column first, with minors
  /// memoized by their row set.
  Poly<K> determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
    if (rows_ == 0) return Poly<K>::constant(ring_, 1);
    if (rows_ > 30) throw std::invalid_argument("matrix too large for cofactor expansion");
    std::vector<std::size_t> order(cols_);
    for (std::size_t j = 0; j < cols_; ++j) order[j] = j;
    auto zeros = [&](std::size_t j) {
      std::size_t z = 0;
      for (std::size_t i = 0; i < rows_; ++i) z += (*this)(i, j).is_zero();
      return z;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return zeros(a) > zeros(b); });
    // sign of the column permutation
    int sign = 1;
    {
      std::vector<std::size_t> p = order;
      for (std::size_t i = 0; i < p.size(); ++i)
        while (p[i] != i) {
          std::swap(p[i], p[p[i]]);
          sign = -sign;
        }
    }
    std::unordered_map<std::uint32_t, Poly<K>> memo;
    Poly<K> d = expand(order, 0, (1u << rows_) - 1, memo);
    return sign < 0 ? -d : d;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<std::vector<std::string>> to_strings() const {
    std::vector<std::vector<std::string>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string());
    return out;
  }

 private:
  // det of the submatrix with rows in `mask` and columns order[k..]
  Poly<K> expand(const std::vector<std::size_t>& order, std::size_t k, std::uint32_t mask,
                 std::unordered_map<std::uint32_t, Poly<K>>& memo) const {
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    std::size_t col = order[k];
    Poly<K> acc(ring_);
    if (k + 1 == order.size()) {
      for (std::size_t i = 0; i < rows_; ++i)
        if (mask & (1u << i)) acc = (*this)(i, col);
      memo.emplace(mask, acc);
      return acc;
    }
    int pos = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!(mask & (1u << i))) continue;
      const auto& e = (*this)(i, col);
      if (!e.is_zero()) {
        Poly<K> minor = expand(order, k + 1, mask & ~(1u << i), memo);
        if (!minor.is_zero()) {
          Poly<K> term = e * minor;
          if (pos % 2) acc -= term;
          else acc += term;
        }
      }
      ++pos;
    }
    memo.emplace(mask, acc);
    return acc;
  }

  RingPtr<K> ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Poly<K>> data_;
  std::vector<std::optional<BiDegree>> col_deg_;
};

/// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Every r x r minor of an r-row matrix, indexed like for_each_subset(cols, r).
/// Minors of the first k rows are shared across all column sets containing them.
template <class K>
std::vector<Poly<K>> maximal_minor_table(const PolyMatrix<K>& m) {
  const std::size_t r = m.rows(), c = m.cols();
  if (c > 30) throw std::invalid_argument("too many columns for the minor table");
  std::vector<Poly<K>> out;
  if (r == 0) {
    out.push_back(Poly<K>::constant(m.ring(), 1));
    return out;
  }
  if (r > c) return out;
  // level k holds the k x k minors on rows 0..k-1, keyed by column mask
  std::unordered_map<std::uint32_t, Poly<K>> prev, cur;
  for (std::size_t j = 0; j < c; ++j) prev.emplace(1u << j, m(0, j));
  for (std::size_t k = 1; k < r; ++k) {
    cur.clear();
    for_each_subset(c, k + 1, [&](const std::vector<std::size_t>& cols) {
      std::uint32_t mask = 0;
      for (auto j : cols) mask |= 1u << j;
      Poly<K> acc(m.ring());
      for (std::size_t p = 0; p < cols.size(); ++p) {
        const auto& e = m(k, cols[p]);
        if (e.is_zero()) continue;
        const auto& sub = prev.at(mask & ~(1u << cols[p]));
        if (sub.is_zero()) continue;
        if ((k + p) % 2) acc -= e * sub;
        else acc += e * sub;
      }
      cur.emplace(mask, std::move(acc));
    });
    prev.swap(cur);
  }
  for_each_subset(c, r, [&](const std::vector<std::size_t>& cols) {
    std::uint32_t mask = 0;
    for (auto j : cols) mask |= 1u << j;
    out.push_back(std::move(prev.at(mask)));
  });
  return out;
}

/// All nonzero r x r minors of an r-row matrix, in lexicographic column order.
template <class K>
std::vector<Poly<K>> maximal_minors(const PolyMatrix<K>& m) {
  std::vector<Poly<K>> out;
  for (auto& p : maximal_minor_table(m))
    if (!p.is_zero()) out.push_back(std::move(p));
  return out;
}

/// Nonzero t x t minors (ideal of minors I_t).
template <class K>
std::vector<Poly<K>> minors(const PolyMatrix<K>& m, std::size_t t) {
  std::vector<Poly<K>> out;
  if (t == 0) {
    out.push_back(Poly<K>::constant(m.ring(), 1));
    return out;
  }
  if (t == m.rows()) return maximal_minors(m);
  for_each_subset(m.rows(), t, [&](const std::vector<std::size_t>& rows) {
    for_each_subset(m.cols(), t, [&](const std::vector<std::size_t>& cols) {
      auto d = m.select(rows, cols).determinant();
      if (!d.is_zero()) out.push_back(std::move(d));
    });
  });
  return out;
}

}  // namespace reesdual
