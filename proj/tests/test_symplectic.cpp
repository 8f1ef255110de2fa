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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bqec/bit_matrix.hpp"
#include "bqec/code_io.hpp"
#include "bqec/pauli.hpp"
#include "bqec/stabilizer_code.hpp"
#include "bqec/symplectic.hpp"
#include "dense_oracle.hpp"

using namespace bqec;
using bqec::oracle::dense;

namespace {

BitMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64 &rng) {
  BitMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      m.set(i, j, rng() & 1);
    }
  }
  return m;
}

// Rank by counting the distinct vectors in the span (2^rank of them).
std::size_t span_rank(const BitMatrix &m) {
  std::set<std::vector<bool>> seen;
  for (std::uint64_t mask = 0; mask < (1ull << m.rows()); ++mask) {
    std::vector<bool> v(m.cols(), false);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if ((mask >> i) & 1) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
          v[j] = v[j] != m.get(i, j);
        }
      }
    }
    seen.insert(v);
  }
  std::size_t r = 0;
  while ((std::size_t(1) << r) < seen.size()) {
    ++r;
  }
  return r;
}

PauliOp P(const char *s) {
  return PauliOp::from_string(s);
}

}  // namespace

TEST(BitMatrix, IdentityAndZeroRank) {
  BitMatrix id(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    id.set(i, i, true);
  }
  EXPECT_EQ(rank(id), 4u);
  EXPECT_EQ(rank(BitMatrix(3, 5)), 0u);
  EXPECT_EQ(rank(BitMatrix(0, 0)), 0u);
}

TEST(BitMatrix, SteaneCheckMatrixRank) {
  EXPECT_EQ(steane_code().check_matrix().as_bits().rows(), 6u);
  EXPECT_EQ(rank(steane_code().check_matrix().as_bits()), 6u);
}

TEST(BitMatrix, RankMatchesSpanEnumeration) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 10, c = 1 + rng() % 70;
    BitMatrix m = random_matrix(r, c, rng);
    ASSERT_EQ(rank(m), span_rank(m)) << trial;
  }
}

TEST(BitMatrix, NullspaceIsKernelWithRightDimension) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + rng() % 12, c = 1 + rng() % 80;
    BitMatrix m = random_matrix(r, c, rng);
    BitMatrix k = nullspace(m);
    EXPECT_EQ(k.rows(), c - rank(m));
    EXPECT_EQ(rank(k), k.rows());
    BitMatrix prod = m * k.transpose();
    EXPECT_EQ(rank(prod), 0u);
  }
}

TEST(BitMatrix, TransposeAndProduct) {
  std::mt19937_64 rng(13);
  BitMatrix a = random_matrix(5, 67, rng), b = random_matrix(67, 3, rng);
  BitMatrix ab = a * b;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      bool s = false;
      for (std::size_t k = 0; k < 67; ++k) {
        s = s != (a.get(i, k) && b.get(k, j));
      }
      EXPECT_EQ(ab.get(i, j), s);
    }
  }
  EXPECT_EQ(a.transpose().transpose(), a);
}

TEST(Pauli, BinaryForm) {
  EXPECT_EQ(pauli_to_binary(P("ZZ")).bits_str(), "11|00");
  EXPECT_EQ(pauli_to_binary(P("XX")).bits_str(), "00|11");
  EXPECT_EQ(pauli_to_binary(P("YI")).bits_str(), "10|10");
  EXPECT_EQ(binary_to_pauli(SympRow::from_bits("10|10")).str(), "+YI");
}

TEST(Pauli, SymplecticInner) {
  const auto zz = SympRow::from_bits("11|00"), xx = SympRow::from_bits("00|11"), xi = SympRow::from_bits("00|10");
  EXPECT_FALSE(symp_inner(zz, xx));
  EXPECT_TRUE(symp_inner(zz, xi));
  EXPECT_FALSE(symp_inner(xi, xi));
  EXPECT_THROW(symp_inner(zz, SympRow(3)), DimensionError);
}

TEST(Pauli, SingleQubitProducts) {
  EXPECT_EQ(pauli_mul(P("X"), P("Z")).str(), "-iY");
  EXPECT_EQ(pauli_mul(P("X"), P("Z")).phase(), 3);
  EXPECT_EQ(pauli_mul(P("Z"), P("X")).str(), "+iY");
  EXPECT_EQ(pauli_mul(P("XIZIYZXY"), P("XIZIYZXY")).str(), "+IIIIIIII");
  EXPECT_THROW(pauli_mul(P("X"), P("XX")), DimensionError);
}

TEST(Pauli, ParseAndPrint) {
  EXPECT_EQ(P("-XZ").str(), "-XZ");
  EXPECT_EQ(P("iY").phase(), 1);
  EXPECT_TRUE(P("-YY").negative());
  EXPECT_THROW(P("XQ"), ParseError);
}

TEST(Pauli, ProductMatchesDenseOracle) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    PauliOp a(n), b(n);
    for (std::size_t q = 0; q < n; ++q) {
      a.set_letter(q, "IXYZ"[rng() & 3]);
      b.set_letter(q, "IXYZ"[rng() & 3]);
    }
    a.set_phase(rng() & 3);
    b.set_phase(rng() & 3);
    ASSERT_TRUE(oracle::approx_equal(dense(pauli_mul(a, b)), dense(a) * dense(b))) << a.str() << " " << b.str();
    const bool commute = oracle::approx_equal(dense(a) * dense(b), dense(b) * dense(a));
    ASSERT_EQ(commute, !symp_inner(a.bits(), b.bits()));
    ASSERT_EQ(commute, a.commutes(b));
  }
}

TEST(Pauli, TruncatedCodeRowsMatchDenseOracle) {
  // First four qubits of the first two [[8,3,3]] rows.
  PauliOp a = P("XIZI"), b = P("IXZZ");
  EXPECT_TRUE(oracle::approx_equal(dense(pauli_mul(a, b)), dense(a) * dense(b)));
  EXPECT_EQ(pauli_mul(a, b).letters(), "XXIZ");
}

TEST(Pauli, BinaryRoundTrip) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 90;
    PauliOp p(n);
    for (std::size_t q = 0; q < n; ++q) {
      p.set_letter(q, "IXYZ"[rng() & 3]);
    }
    EXPECT_EQ(binary_to_pauli(pauli_to_binary(p)), p);
    EXPECT_EQ(pauli_to_binary(binary_to_pauli(p.bits())), p.bits());
  }
}

TEST(Symplectic, ProductMatrixExamples) {
  auto l = SympMatrix::from_rows(2, std::vector<SympRow>{SympRow::from_bits("00|11"), SympRow::from_bits("10|00")});
  BitMatrix om = symplectic_product_matrix(l);
  EXPECT_FALSE(om.get(0, 0));
  EXPECT_TRUE(om.get(0, 1));
  EXPECT_TRUE(om.get(1, 0));
  EXPECT_EQ(rank(om) / 2, 1u);

  auto ebit_a = SympMatrix::from_rows(1, std::vector<SympRow>{SympRow::from_bits("0|1"), SympRow::from_bits("1|0")});
  EXPECT_EQ(rank(symplectic_product_matrix(ebit_a)) / 2, 1u);

  auto zonly = SympMatrix::from_paulis(3, std::vector<PauliOp>{P("ZZI"), P("IZZ"), P("ZIZ")});
  EXPECT_EQ(rank(symplectic_product_matrix(zonly)), 0u);
}

TEST(Symplectic, ProductMatrixSymmetricEvenRank) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 8, r = rng() % 12;
    std::vector<PauliOp> ops;
    for (std::size_t i = 0; i < r; ++i) {
      PauliOp p(n);
      for (std::size_t q = 0; q < n; ++q) {
        p.set_letter(q, "IXYZ"[rng() & 3]);
      }
      ops.push_back(p);
    }
    BitMatrix om = symplectic_product_matrix(SympMatrix::from_paulis(n, ops));
    EXPECT_EQ(om, om.transpose());
    for (std::size_t i = 0; i < r; ++i) {
      EXPECT_FALSE(om.get(i, i));
    }
    EXPECT_EQ(rank(om) % 2, 0u);
  }
}

TEST(Symplectic, SgsoTrivialCases) {
  auto ebit_a = SympMatrix::from_rows(1, std::vector<SympRow>{SympRow::from_bits("0|1"), SympRow::from_bits("1|0")});
  SympSgso s = sgso(ebit_a);
  EXPECT_EQ(s.pairs.size(), 1u);
  EXPECT_EQ(s.isotropic.rows(), 0u);

  auto zonly = SympMatrix::from_paulis(3, std::vector<PauliOp>{P("ZZI"), P("IZZ"), P("ZIZ")});
  SympSgso t = sgso(zonly);
  EXPECT_EQ(t.pairs.size(), 0u);
  EXPECT_EQ(t.isotropic.rows(), 2u);

  SympSgso e = sgso(SympMatrix(0, 3));
  EXPECT_TRUE(e.pairs.empty());
  EXPECT_EQ(e.isotropic.rows(), 0u);
}

TEST(Symplectic, SgsoPropertiesOnRandomInput) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 8, r = rng() % 13;
    std::vector<PauliOp> ops;
    for (std::size_t i = 0; i < r; ++i) {
      PauliOp p(n);
      for (std::size_t q = 0; q < n; ++q) {
        p.set_letter(q, "IXYZ"[rng() & 3]);
      }
      ops.push_back(p);
    }
    SympMatrix m = SympMatrix::from_paulis(n, ops);
    SympSgso s = sgso(m);
    std::vector<SympRow> out;
    for (const auto &[u, v] : s.pairs) {
      out.push_back(u);
      out.push_back(v);
    }
    for (std::size_t i = 0; i < s.isotropic.rows(); ++i) {
      out.push_back(s.isotropic.row(i));
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        const bool expect = (i % 2 == 0) && j == i + 1 && j < 2 * s.pairs.size();
        ASSERT_EQ(symp_inner(out[i], out[j]), expect) << trial << " " << i << " " << j;
      }
    }
    SympMatrix om = SympMatrix::from_rows(n, out);
    ASSERT_TRUE(same_row_space(om.as_bits(), m.as_bits())) << trial;
    ASSERT_EQ(2 * s.pairs.size(), rank(symplectic_product_matrix(m)));
  }
}

TEST(Symplectic, EightThreeThreeAliceSgsoTable) {
  // Alice parts of the [[8,3,3]] generators, SGSO on those columns, carried to full rows.
  const auto code = *builtin_code("g8_3_3");
  std::vector<PauliOp> rows = code.generators();
  std::vector<std::uint64_t> mask(1, 0xF);
  auto res = sgso_rows(
      rows, 16, [&](const PauliOp &a, const PauliOp &b) { return symp_inner_masked(a.bits(), b.bits(), mask); },
      [](PauliOp &dst, const PauliOp &src) { dst *= src; }, [](const PauliOp &p) { return p.bits().concat_bits(); });
  ASSERT_EQ(res.pairs.size(), 2u);
  ASSERT_EQ(res.isotropic.size(), 1u);
  EXPECT_EQ(res.pairs[0].first.letters(), "XIZIYZXY");
  EXPECT_EQ(res.pairs[0].second.letters(), "IIXYZZYX");
  EXPECT_EQ(res.pairs[1].first.letters(), "IXZZYXYI");
  EXPECT_EQ(res.pairs[1].second.letters(), "ZIYZZXIY");
  // The commonly printed form of this row ends in I, which anticommutes with
  // three generators; the group element agreeing on qubits 1-7 ends in Y.
  EXPECT_EQ(res.isotropic[0].letters(), "IYZXZIZY");
  EXPECT_FALSE(group_contains(code.generators(), PauliOp::from_string("IYZXZIZI")));
  EXPECT_FALSE(group_contains(code.generators(), PauliOp::from_string("-IYZXZIZI")));
  const PauliOp iso = res.isotropic[0];
  EXPECT_TRUE(group_contains(code.generators(), iso));
}
