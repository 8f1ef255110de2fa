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

#include "bqec/bipartition.hpp"
#include "bqec/code_io.hpp"
#include "random_codes.hpp"

using namespace bqec;

namespace {

using Vec = std::vector<bool>;  // [z | x] restricted to some qubit set

struct Space {
  std::vector<Vec> elems;
};

Vec restrict_vec(const SympRow &r, const std::vector<std::size_t> &qs) {
  Vec v;
  for (auto q : qs) {
    v.push_back(r.z(q));
  }
  for (auto q : qs) {
    v.push_back(r.x(q));
  }
  return v;
}

bool inner(const Vec &a, const Vec &b) {
  const std::size_t m = a.size() / 2;
  bool s = false;
  for (std::size_t i = 0; i < m; ++i) {
    s ^= (a[i] && b[m + i]) ^ (a[m + i] && b[i]);
  }
  return s;
}

std::size_t log2_size(std::size_t s) {
  std::size_t d = 0;
  while ((std::size_t(1) << d) < s) {
    ++d;
  }
  return d;
}

// Enumerates the span of `rows` restricted to `qs` and returns
// (dim, dim of radical) computed by brute force.
std::pair<std::size_t, std::size_t> restricted_dims(const std::vector<SympRow> &rows,
                                                     const std::vector<std::size_t> &qs) {
  std::set<Vec> span;
  for (std::uint64_t m = 0; m < (1ull << rows.size()); ++m) {
    SympRow acc(rows.empty() ? 0 : rows.front().n());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if ((m >> i) & 1) {
        acc ^= rows[i];
      }
    }
    span.insert(restrict_vec(acc, qs));
  }
  std::size_t rad = 0;
  for (const auto &v : span) {
    bool central = true;
    for (const auto &w : span) {
      central = central && !inner(v, w);
    }
    rad += central;
  }
  return {log2_size(span.size()), log2_size(rad)};
}

// All binary vectors commuting with every generator, as a generating list.
std::vector<SympRow> normalizer_by_enumeration(const StabilizerCode &c) {
  const std::size_t n = c.n();
  std::vector<SympRow> basis_rows;
  RowBasis basis(2 * n);
  for (std::uint64_t z = 0; z < (1ull << n); ++z) {
    for (std::uint64_t x = 0; x < (1ull << n); ++x) {
      SympRow r(n);
      for (std::size_t q = 0; q < n; ++q) {
        r.set_z(q, (z >> q) & 1);
        r.set_x(q, (x >> q) & 1);
      }
      bool ok = true;
      for (const auto &g : c.generators()) {
        ok = ok && !symp_inner(r, g.bits());
      }
      if (ok && basis.add(r.concat_bits())) {
        basis_rows.push_back(r);
      }
    }
  }
  return basis_rows;
}

// Parameters from enumeration: half the symplectic dimension of the restricted spaces.
BipartiteParams enumerated_params(const StabilizerCode &c, const Bipartition &part) {
  std::vector<SympRow> h;
  for (const auto &g : c.generators()) {
    h.push_back(g.bits());
  }
  const auto g = normalizer_by_enumeration(c);
  const auto qa = part.qubits(Party::A), qb = part.qubits(Party::B);
  auto half = [](std::pair<std::size_t, std::size_t> d) { return static_cast<long>((d.first - d.second) / 2); };
  const long c_ab = half(restricted_dims(h, qa));
  const long s_a = half(restricted_dims(g, qa)), s_b = half(restricted_dims(g, qb));
  const long k = static_cast<long>(c.k());
  const long k_ab = s_a + s_b - k - 2 * c_ab;
  BipartiteParams p;
  p.n = c.n();
  p.c_ab = static_cast<std::size_t>(c_ab);
  p.k_ab = static_cast<std::size_t>(k_ab);
  p.k_a = static_cast<std::size_t>(s_a - c_ab - k_ab);
  p.k_b = static_cast<std::size_t>(s_b - c_ab - k_ab);
  return p;
}

const StabilizerCode &g833() {
  static const StabilizerCode c = *builtin_code("g8_3_3");
  return c;
}

}  // namespace

TEST(Cut, ParseAndMasks) {
  Bipartition p = Bipartition::from_string("AABABBB");
  EXPECT_EQ(p.qubits(Party::A), (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_EQ(p.qubits(Party::B), (std::vector<std::size_t>{2, 4, 5, 6}));
  EXPECT_EQ(p.str(), "AABABBB");
  EXPECT_EQ(Bipartition::from_alice(7, {0, 1, 3}), p);
  EXPECT_THROW(Bipartition::from_string("AXB"), ParseError);
}

TEST(Restrict, EbitAlice) {
  auto ebit = *builtin_code("ebit");
  SympMatrix a = restrict(ebit.check_matrix(), Bipartition::from_string("AB"), Party::A);
  ASSERT_EQ(a.n(), 1u);
  EXPECT_EQ(a.row(0).bits_str(), "1|0");
  EXPECT_EQ(a.row(1).bits_str(), "0|1");
}

TEST(Restrict, AllAliceIsIdentity) {
  SympMatrix h = steane_code().check_matrix();
  SympMatrix a = restrict(h, Bipartition::all(7, Party::A), Party::A);
  EXPECT_EQ(a.as_bits(), h.as_bits());
  EXPECT_THROW(restrict(h, Bipartition::all(6, Party::A), Party::A), DimensionError);
}

TEST(Restrict, SteaneOutsideRank) {
  SympMatrix a = restrict(steane_code().check_matrix(), Bipartition::from_string("AABABBB"), Party::A);
  EXPECT_EQ(a.n(), 3u);
  EXPECT_EQ(a.rows(), 6u);
  EXPECT_EQ(a.rank(), 6u);
}

TEST(Params, EightThreeThreeFirstFour) {
  BipartiteParams p = compute_params(g833(), Bipartition::from_string("AAAABBBB"));
  EXPECT_EQ(p.c_ab, 2u);
  EXPECT_EQ(p.k_ab, 1u);
  EXPECT_EQ(p.k_a, 1u);
  EXPECT_EQ(p.k_b, 1u);
  EXPECT_EQ(p.label(), "[[8,1,1,1;2]]");
}

TEST(Params, SteaneOutsideInside) {
  BipartiteParams p = compute_params(steane_code(), Bipartition::from_string("AABABBB"));
  EXPECT_EQ(p.label(), "[[7,0,1,0;3]]");
}

TEST(Params, OneSidedCut) {
  for (const auto &b : kBuiltinCodes) {
    auto c = parse_stabilizer(b.text);
    BipartiteParams p = compute_params(c, Bipartition::all(c.n(), Party::A));
    EXPECT_EQ(p.c_ab, 0u);
    EXPECT_EQ(p.k_ab, 0u);
    EXPECT_EQ(p.k_a, c.k());
    EXPECT_EQ(p.k_b, 0u);
  }
}

TEST(Params, MatchesEnumerationOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    auto c = oracle::random_code(rng, 1, 6);
    auto part = oracle::random_cut(c.n(), rng);
    ASSERT_EQ(compute_params(c, part), enumerated_params(c, part)) << serialize_stabilizer(c) << part.str();
  }
  EXPECT_EQ(enumerated_params(steane_code(), Bipartition::from_string("AABABBB")).label(), "[[7,0,1,0;3]]");
}

TEST(Params, RandomCodesAreConsistent) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = oracle::random_code(rng, 1, 10);
    auto part = oracle::random_cut(c.n(), rng);
    RankProfile r = rank_profile(c, part);
    ASSERT_EQ(r.rank_omega_h_a, r.rank_omega_h_b);
    BipartiteParams p;
    ASSERT_NO_THROW(p = compute_params(c, part));
    ASSERT_EQ(p.k_a + p.k_b + p.k_ab, c.k());
    ASSERT_EQ(static_cast<long>(p.k_ab),
              static_cast<long>(r.rank_h_a + r.rank_h_b + c.k()) - static_cast<long>(c.n()) -
                  2 * static_cast<long>(p.c_ab));
  }
}

TEST(Params, InvalidCodeRejected) {
  StabilizerCode c(2, {PauliOp::from_string("ZZ"), PauliOp::from_string("XI")});
  EXPECT_THROW(compute_params(c, Bipartition::from_string("AB")), ValidationError);
  EXPECT_THROW(compute_params(steane_code(), Bipartition::from_string("AB")), DimensionError);
}

TEST(Decompose, EightThreeThreeTable) {
  auto part = Bipartition::from_string("AAAABBBB");
  BipartiteDecomposition d = decompose(g833(), part);
  ASSERT_EQ(d.entanglement.size(), 2u);
  ASSERT_EQ(d.nonlocal_info.size(), 1u);
  EXPECT_TRUE(d.local_a.empty());
  EXPECT_TRUE(d.local_b.empty());
  EXPECT_EQ(d.entanglement[0].first.letters(), "XIZIYZXY");
  EXPECT_EQ(d.entanglement[0].second.letters(), "IIXYZZYX");
  EXPECT_EQ(d.entanglement[1].first.letters(), "IXZZYXYI");
  EXPECT_EQ(d.entanglement[1].second.letters(), "ZIYZZXIY");
  EXPECT_EQ(d.nonlocal_info[0].letters(), "IYZXZIZY");
  EXPECT_TRUE(same_group(d.all_generators(), g833().generators()));
  AuditReport a = subgroup_size_audit(d, g833(), part);
  EXPECT_TRUE(a.ok);
  EXPECT_EQ(a.rank_h_a, 5u);
  EXPECT_EQ(a.rank_h_b, 5u);
}

TEST(Decompose, SteaneCut) {
  auto part = Bipartition::from_string("AABABBB");
  BipartiteDecomposition d = decompose(steane_code(), part);
  EXPECT_EQ(d.entanglement.size(), 3u);
  EXPECT_TRUE(d.nonlocal_info.empty());
  EXPECT_TRUE(d.local_a.empty());
  EXPECT_TRUE(d.local_b.empty());
  AuditReport a = subgroup_size_audit(d, steane_code(), part);
  EXPECT_TRUE(a.ok);
  EXPECT_EQ(a.rank_h_a, 6u);
  EXPECT_EQ(a.rank_h_b, 6u);
}

TEST(Decompose, Ebit) {
  BipartiteDecomposition d = decompose(*builtin_code("ebit"), Bipartition::from_string("AB"));
  ASSERT_EQ(d.entanglement.size(), 1u);
  EXPECT_EQ(d.entanglement[0].first.str(), "+ZZ");
  EXPECT_EQ(d.entanglement[0].second.str(), "+XX");
  EXPECT_TRUE(d.nonlocal_info.empty());
}

TEST(Decompose, OneSidedAudit) {
  auto c = *builtin_code("five_one_three");
  auto part = Bipartition::all(5, Party::A);
  BipartiteDecomposition d = decompose(c, part);
  EXPECT_EQ(d.local_a.size(), 4u);
  EXPECT_TRUE(subgroup_size_audit(d, c, part).ok);
}

TEST(Decompose, RandomCodesAreSound) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = oracle::random_code(rng, 1, 10);
    auto part = oracle::random_cut(c.n(), rng);
    BipartiteDecomposition d = decompose(c, part);
    BipartiteParams p = compute_params(c, part);
    ASSERT_EQ(d.entanglement.size(), p.c_ab);
    ASSERT_EQ(d.nonlocal_info.size(), p.k_ab);
    ASSERT_EQ(d.local_a.size() + d.local_b.size() + 2 * p.c_ab + p.k_ab, c.n() - c.k());
    ASSERT_TRUE(same_group(d.all_generators(), c.generators())) << trial;
    ASSERT_EQ(check_decomposition_structure(d, part), "") << trial;
    ASSERT_TRUE(subgroup_size_audit(d, c, part).ok) << trial;
  }
}

TEST(Trivial, EightThreeThree) {
  auto part = Bipartition::from_string("AAAABBBB");
  StabilizerCode t = trivial_stabilizer(compute_params(g833(), part), part);
  EXPECT_EQ(serialize_stabilizer(t), "ZIIIZIII\nXIIIXIII\nIZIIIZII\nIXIIIXII\nIIZIIIZI\n");
}
