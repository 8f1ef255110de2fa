// Copyright 2026 The bqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bqec/errors.hpp"

namespace bqec {

constexpr std::size_t words_for_bits(std::size_t bits) {
  return (bits + 63) / 64;
}

inline bool word_parity(std::uint64_t w) {
  return std::popcount(w) & 1;
}

/// Dense GF(2) matrix with each row packed into 64-bit words.
///
/// Padding bits past `cols()` are kept zero so that whole-word comparisons and
/// popcounts are valid.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for_bits(cols)), data_(rows * stride_, 0) {
  }

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m.set(i, i, true);
    }
    return m;
  }

  std::size_t rows() const {
    return rows_;
  }
  std::size_t cols() const {
    return cols_;
  }
  std::size_t stride() const {
    return stride_;
  }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * stride_ + c / 64] >> (c % 64)) & 1;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    std::uint64_t &w = data_[r * stride_ + c / 64];
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    w = v ? (w | bit) : (w & ~bit);
  }
  void flip(std::size_t r, std::size_t c) {
    data_[r * stride_ + c / 64] ^= std::uint64_t{1} << (c % 64);
  }

  std::span<std::uint64_t> row(std::size_t r) {
    return {data_.data() + r * stride_, stride_};
  }
  std::span<const std::uint64_t> row(std::size_t r) const {
    return {data_.data() + r * stride_, stride_};
  }

  /// row(dst) ^= row(src)
  void xor_row_into(std::size_t src, std::size_t dst) {
    for (std::size_t w = 0; w < stride_; ++w) {
      data_[dst * stride_ + w] ^= data_[src * stride_ + w];
    }
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) {
      return;
    }
    std::swap_ranges(data_.begin() + a * stride_, data_.begin() + (a + 1) * stride_, data_.begin() + b * stride_);
  }
  bool row_is_zero(std::size_t r) const {
    auto rw = row(r);
    return std::all_of(rw.begin(), rw.end(), [](std::uint64_t w) { return w == 0; });
  }

  void append_row(std::span<const std::uint64_t> bits) {
    if (bits.size() != stride_) {
      throw DimensionError("append_row: word count mismatch");
    }
    data_.insert(data_.end(), bits.begin(), bits.end());
    ++rows_;
  }

  BitMatrix transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (get(r, c)) {
          t.set(c, r, true);
        }
      }
    }
    return t;
  }

  /// Columns [begin, begin+count) as a new matrix.
  BitMatrix column_slice(std::size_t begin, std::size_t count) const {
    BitMatrix out(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < count; ++c) {
        if (get(r, begin + c)) {
          out.set(r, c, true);
        }
      }
    }
    return out;
  }

  /// In-place reduced row echelon form. Returns the rank; nonzero rows end up
  /// first. `pivots`, when given, receives the pivot column of each of them.
  std::size_t row_reduce(std::vector<std::size_t> *pivots = nullptr) {
    std::size_t rank = 0;
    if (pivots) {
      pivots->clear();
    }
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
      std::size_t pivot = rank;
      while (pivot < rows_ && !get(pivot, c)) {
        ++pivot;
      }
      if (pivot == rows_) {
        continue;
      }
      swap_rows(pivot, rank);
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r != rank && get(r, c)) {
          xor_row_into(rank, r);
        }
      }
      if (pivots) {
        pivots->push_back(c);
      }
      ++rank;
    }
    return rank;
  }

  bool operator==(const BitMatrix &other) const = default;

  std::string str() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        s.push_back(get(r, c) ? '1' : '0');
      }
      s.push_back('\n');
    }
    return s;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> data_;
};

inline BitMatrix operator*(const BitMatrix &a, const BitMatrix &b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("BitMatrix product: inner dimensions differ");
  }
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = out.row(r);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.get(r, k)) {
        auto src = b.row(k);
        for (std::size_t w = 0; w < dst.size(); ++w) {
          dst[w] ^= src[w];
        }
      }
    }
  }
  return out;
}

inline BitMatrix operator+(const BitMatrix &a, const BitMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("BitMatrix sum: shapes differ");
  }
  BitMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = out.row(r);
    auto src = b.row(r);
    for (std::size_t w = 0; w < dst.size(); ++w) {
      dst[w] ^= src[w];
    }
  }
  return out;
}

/// GF(2) row rank.
inline std::size_t rank(BitMatrix m) {
  return m.row_reduce();
}

/// Basis (as rows) of the right kernel {v : m v = 0}.
inline BitMatrix nullspace(const BitMatrix &m) {
  BitMatrix r = m;
  std::vector<std::size_t> pivots;
  const std::size_t rk = r.row_reduce(&pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) {
    is_pivot[p] = true;
  }
  BitMatrix basis(0, m.cols());
  std::vector<std::uint64_t> v(words_for_bits(m.cols()));
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) {
      continue;
    }
    std::fill(v.begin(), v.end(), 0);
    v[free / 64] |= std::uint64_t{1} << (free % 64);
    for (std::size_t i = 0; i < rk; ++i) {
      if (r.get(i, free)) {
        v[pivots[i] / 64] |= std::uint64_t{1} << (pivots[i] % 64);
      }
    }
    basis.append_row(v);
  }
  return basis;
}

/// True when the two matrices have the same GF(2) row space.
inline bool same_row_space(const BitMatrix &a, const BitMatrix &b) {
  if (a.cols() != b.cols()) {
    return false;
  }
  BitMatrix ra = a;
  BitMatrix rb = b;
  const std::size_t ka = ra.row_reduce();
  const std::size_t kb = rb.row_reduce();
  if (ka != kb) {
    return false;
  }
  for (std::size_t i = 0; i < ka; ++i) {
    if (!std::equal(ra.row(i).begin(), ra.row(i).end(), rb.row(i).begin())) {
      return false;
    }
  }
  return true;
}

/// Incrementally built GF(2) basis. Rows are reduced against earlier basis
/// rows on insertion, so membership is a single forward sweep.
class RowBasis {
 public:
  explicit RowBasis(std::size_t bits) : stride_(words_for_bits(bits)) {
  }

  /// Adds `v` if it is independent of the current basis; returns whether it was.
  bool add(std::span<const std::uint64_t> v) {
    std::vector<std::uint64_t> r(v.begin(), v.end());
    reduce(r);
    for (std::size_t w = 0; w < stride_; ++w) {
      if (r[w]) {
        pivots_.push_back(w * 64 + std::countr_zero(r[w]));
        rows_.push_back(std::move(r));
        return true;
      }
    }
    return false;
  }

  bool contains(std::span<const std::uint64_t> v) const {
    std::vector<std::uint64_t> r(v.begin(), v.end());
    reduce(r);
    return std::all_of(r.begin(), r.end(), [](std::uint64_t w) { return w == 0; });
  }

  std::size_t size() const {
    return rows_.size();
  }

 private:
  void reduce(std::vector<std::uint64_t> &r) const {
    if (r.size() != stride_) {
      throw DimensionError("RowBasis: vector length mismatch");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::size_t p = pivots_[i];
      if ((r[p / 64] >> (p % 64)) & 1) {
        for (std::size_t w = 0; w < stride_; ++w) {
          r[w] ^= rows_[i][w];
        }
      }
    }
  }

  std::size_t stride_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace bqec
