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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "bqec/bit_matrix.hpp"
#include "bqec/errors.hpp"
#include "bqec/pauli.hpp"

namespace bqec {

/// r x 2n GF(2) matrix [Z | X] whose rows are Pauli operators on n qubits.
class SympMatrix {
 public:
  SympMatrix() = default;
  SympMatrix(std::size_t rows, std::size_t n) : n_(n), z_(rows, n), x_(rows, n) {
  }

  static SympMatrix from_rows(std::size_t n, std::span<const SympRow> rows) {
    SympMatrix m(0, n);
    for (const auto &r : rows) {
      m.append_row(r);
    }
    return m;
  }
  static SympMatrix from_paulis(std::size_t n, std::span<const PauliOp> ops) {
    SympMatrix m(0, n);
    for (const auto &p : ops) {
      m.append_row(p.bits());
    }
    return m;
  }

  std::size_t rows() const {
    return z_.rows();
  }
  std::size_t n() const {
    return n_;
  }
  const BitMatrix &zblock() const {
    return z_;
  }
  const BitMatrix &xblock() const {
    return x_;
  }

  SympRow row(std::size_t i) const {
    return SympRow(n_, z_.row(i), x_.row(i));
  }
  std::vector<SympRow> row_list() const {
    std::vector<SympRow> out;
    out.reserve(rows());
    for (std::size_t i = 0; i < rows(); ++i) {
      out.push_back(row(i));
    }
    return out;
  }
  void set_row(std::size_t i, const SympRow &r) {
    check(r);
    std::copy(r.z_words().begin(), r.z_words().end(), z_.row(i).begin());
    std::copy(r.x_words().begin(), r.x_words().end(), x_.row(i).begin());
  }
  void append_row(const SympRow &r) {
    check(r);
    z_.append_row(r.z_words());
    x_.append_row(r.x_words());
  }

  bool inner(std::size_t i, std::size_t j) const {
    std::uint64_t acc = 0;
    auto zi = z_.row(i), xi = x_.row(i), zj = z_.row(j), xj = x_.row(j);
    for (std::size_t w = 0; w < zi.size(); ++w) {
      acc ^= (zi[w] & xj[w]) ^ (xi[w] & zj[w]);
    }
    return word_parity(acc);
  }

  /// The rows laid out as an r x 2n matrix [Z | X].
  BitMatrix as_bits() const {
    BitMatrix m(0, 2 * n_);
    for (std::size_t i = 0; i < rows(); ++i) {
      m.append_row(row(i).concat_bits());
    }
    return m;
  }

  std::size_t rank() const {
    return bqec::rank(as_bits());
  }

  bool operator==(const SympMatrix &o) const = default;

 private:
  void check(const SympRow &r) const {
    if (r.n() != n_) {
      throw DimensionError("row has " + std::to_string(r.n()) + " qubits, matrix has " + std::to_string(n_));
    }
  }

  std::size_t n_ = 0;
  BitMatrix z_;
  BitMatrix x_;
};

/// Omega_F = F_Z F_X^T + F_X F_Z^T. Entry (i,j) is 1 iff rows i and j anticommute.
inline BitMatrix symplectic_product_matrix(const SympMatrix &f) {
  BitMatrix omega(f.rows(), f.rows());
  for (std::size_t i = 0; i < f.rows(); ++i) {
    for (std::size_t j = i + 1; j < f.rows(); ++j) {
      if (f.inner(i, j)) {
        omega.set(i, j, true);
        omega.set(j, i, true);
      }
    }
  }
  return omega;
}

template <class Row>
struct SgsoResult {
  std::vector<std::pair<Row, Row>> pairs;
  std::vector<Row> isotropic;
};

/// Symplectic Gram-Schmidt over an arbitrary row type.
///
/// Rows are taken top to bottom. A row's partner is the first later row with
/// inner product 1; the pair is then eliminated from all later rows, so every
/// output row commutes with every other except its own partner. Rows that find
/// no partner go to the isotropic list unless they are already in its span.
///
/// `inner(a, b)` is the bilinear form, `combine(a, b)` performs a <- a*b, and
/// `bits(a)` yields the GF(2) vector used for the span test.
template <class Row, class Inner, class Combine, class Bits>
SgsoResult<Row> sgso_rows(std::vector<Row> rows, std::size_t vector_bits, Inner inner, Combine combine, Bits bits) {
  SgsoResult<Row> out;
  RowBasis iso_span(vector_bits);
  std::size_t head = 0;
  while (head < rows.size()) {
    Row u = std::move(rows[head]);
    ++head;
    std::size_t partner = rows.size();
    for (std::size_t j = head; j < rows.size(); ++j) {
      if (inner(u, rows[j])) {
        partner = j;
        break;
      }
    }
    if (partner == rows.size()) {
      if (iso_span.add(bits(u))) {
        out.isotropic.push_back(std::move(u));
      }
      continue;
    }
    Row v = std::move(rows[partner]);
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(partner));
    for (std::size_t j = head; j < rows.size(); ++j) {
      const bool with_v = inner(rows[j], v);
      const bool with_u = inner(rows[j], u);
      if (with_v) {
        combine(rows[j], u);
      }
      if (with_u) {
        combine(rows[j], v);
      }
    }
    out.pairs.emplace_back(std::move(u), std::move(v));
  }
  return out;
}

struct SympSgso {
  std::vector<std::pair<SympRow, SympRow>> pairs;
  SympMatrix isotropic;
};

/// Splits the row space of `m` into hyperbolic pairs and an isotropic remainder.
/// 2 * pairs.size() == rank(symplectic_product_matrix(m)).
inline SympSgso sgso(const SympMatrix &m) {
  auto res = sgso_rows(
      m.row_list(), 2 * m.n(), [](const SympRow &a, const SympRow &b) { return symp_inner(a, b); },
      [](SympRow &a, const SympRow &b) { a ^= b; }, [](const SympRow &a) { return a.concat_bits(); });
  SympSgso out{std::move(res.pairs), SympMatrix::from_rows(m.n(), res.isotropic)};
  return out;
}

}  // namespace bqec
