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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bqec/bit_matrix.hpp"
#include "bqec/errors.hpp"
#include "bqec/pauli.hpp"
#include "bqec/stabilizer_code.hpp"
#include "bqec/symplectic.hpp"

namespace bqec {

enum class Party : std::uint8_t { A, B };

inline Party other(Party p) {
  return p == Party::A ? Party::B : Party::A;
}

/// Assignment of every qubit to Alice (A) or Bob (B). Owners need not be contiguous.
class Bipartition {
 public:
  Bipartition() = default;
  explicit Bipartition(std::vector<Party> owner) : owner_(std::move(owner)) {
  }

  /// One character per qubit, 'A' or 'B'; character i is the owner of qubit i (1-origin).
  static Bipartition from_string(std::string_view s) {
    std::vector<Party> owner;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == 'A' || s[i] == 'a') {
        owner.push_back(Party::A);
      } else if (s[i] == 'B' || s[i] == 'b') {
        owner.push_back(Party::B);
      } else {
        throw ParseError(std::string("cut string expects 'A' or 'B', got '") + s[i] + "'", 1, i + 1);
      }
    }
    return Bipartition(std::move(owner));
  }

  /// Qubits listed in `alice` (0-origin) go to A, the rest to B.
  static Bipartition from_alice(std::size_t n, const std::vector<std::size_t> &alice) {
    std::vector<Party> owner(n, Party::B);
    for (auto q : alice) {
      if (q >= n) {
        throw DimensionError("qubit " + std::to_string(q) + " out of range for n=" + std::to_string(n));
      }
      owner[q] = Party::A;
    }
    return Bipartition(std::move(owner));
  }

  static Bipartition all(std::size_t n, Party p) {
    return Bipartition(std::vector<Party>(n, p));
  }

  std::size_t n() const {
    return owner_.size();
  }
  Party owner(std::size_t q) const {
    return owner_[q];
  }
  std::vector<std::size_t> qubits(Party side) const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < owner_.size(); ++q) {
      if (owner_[q] == side) {
        out.push_back(q);
      }
    }
    return out;
  }
  std::size_t count(Party side) const {
    return qubits(side).size();
  }
  std::vector<std::uint64_t> mask(Party side) const {
    std::vector<std::uint64_t> m(words_for_bits(n()), 0);
    for (std::size_t q = 0; q < owner_.size(); ++q) {
      if (owner_[q] == side) {
        m[q / 64] |= std::uint64_t{1} << (q % 64);
      }
    }
    return m;
  }
  std::string str() const {
    std::string s;
    for (auto p : owner_) {
      s.push_back(p == Party::A ? 'A' : 'B');
    }
    return s;
  }

  bool operator==(const Bipartition &) const = default;

 private:
  std::vector<Party> owner_;
};

/// Columns of `m` owned by `side`, in qubit order (H^A, H^B, G^A, ...).
inline SympMatrix restrict(const SympMatrix &m, const Bipartition &part, Party side) {
  if (m.n() != part.n()) {
    throw DimensionError("restrict: matrix has " + std::to_string(m.n()) + " qubits, bipartition has " +
                         std::to_string(part.n()));
  }
  const auto cols = part.qubits(side);
  SympMatrix out(m.rows(), cols.size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const SympRow src = m.row(i);
    SympRow dst(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      dst.set_z(c, src.z(cols[c]));
      dst.set_x(c, src.x(cols[c]));
    }
    out.set_row(i, dst);
  }
  return out;
}

/// Pauli restricted to `side`, with the identity on the other party's qubits.
inline PauliOp local_part(const PauliOp &p, const Bipartition &part, Party side) {
  PauliOp out(p.n());
  for (std::size_t q = 0; q < p.n(); ++q) {
    if (part.owner(q) == side) {
      out.set_letter(q, p.letter(q));
    }
  }
  return out;
}

struct BipartiteParams {
  std::size_t n = 0;
  std::size_t c_ab = 0;
  std::size_t k_a = 0;
  std::size_t k_b = 0;
  std::size_t k_ab = 0;

  /// "[[n,k_A,k_B,k_AB;c_AB]]"
  std::string label() const {
    return "[[" + std::to_string(n) + "," + std::to_string(k_a) + "," + std::to_string(k_b) + "," +
           std::to_string(k_ab) + ";" + std::to_string(c_ab) + "]]";
  }
  bool operator==(const BipartiteParams &) const = default;
};

/// Every GF(2) rank entering the parameter formulas.
struct RankProfile {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t rank_h_a = 0;
  std::size_t rank_h_b = 0;
  std::size_t rank_omega_h_a = 0;
  std::size_t rank_omega_h_b = 0;
  std::size_t rank_omega_g = 0;
  std::size_t rank_omega_g_a = 0;
  std::size_t rank_omega_g_b = 0;
};

inline RankProfile rank_profile(const StabilizerCode &c, const Bipartition &part) {
  require_valid(c);
  if (c.n() != part.n()) {
    throw DimensionError("code has " + std::to_string(c.n()) + " qubits, cut has " + std::to_string(part.n()));
  }
  const SympMatrix h = c.check_matrix();
  const SympMatrix g = normalizer_generators(c).gens;
  const SympMatrix h_a = restrict(h, part, Party::A), h_b = restrict(h, part, Party::B);
  const SympMatrix g_a = restrict(g, part, Party::A), g_b = restrict(g, part, Party::B);
  RankProfile r;
  r.n = c.n();
  r.k = c.k();
  r.rank_h_a = h_a.rank();
  r.rank_h_b = h_b.rank();
  r.rank_omega_h_a = rank(symplectic_product_matrix(h_a));
  r.rank_omega_h_b = rank(symplectic_product_matrix(h_b));
  r.rank_omega_g = rank(symplectic_product_matrix(g));
  r.rank_omega_g_a = rank(symplectic_product_matrix(g_a));
  r.rank_omega_g_b = rank(symplectic_product_matrix(g_b));
  return r;
}

/// Ebit, nonlocal and local information-qubit counts of the bipartite code.
///
/// k_AB comes from the normalizer ranks,
///   k_AB = (rank Omega_{G^A} + rank Omega_{G^B} - rank Omega_G) / 2 - 2 c_AB,
/// and is cross-checked against the check-matrix ranks,
///   k_AB = rank H^A + rank H^B + k - n - 2 c_AB.
/// Each ebit accounts for two generators of the shared subgroup, hence 2 c_AB
/// in the second form. Any disagreement throws ConsistencyError.
inline BipartiteParams compute_params(const StabilizerCode &c, const Bipartition &part) {
  const RankProfile r = rank_profile(c, part);
  auto fail = [](const std::string &what) { throw ConsistencyError("bipartite parameter check failed: " + what); };
  if (r.rank_omega_h_a % 2 || r.rank_omega_h_b % 2 || r.rank_omega_g % 2 || r.rank_omega_g_a % 2 ||
      r.rank_omega_g_b % 2) {
    fail("odd symplectic product matrix rank");
  }
  if (r.rank_omega_h_a != r.rank_omega_h_b) {
    fail("rank(Omega_HA) = " + std::to_string(r.rank_omega_h_a) + " but rank(Omega_HB) = " +
         std::to_string(r.rank_omega_h_b));
  }
  if (r.rank_omega_g / 2 != r.k) {
    fail("rank(Omega_G)/2 != k");
  }
  const long c_ab = static_cast<long>(r.rank_omega_h_a / 2);
  const long k_ab_g =
      static_cast<long>(r.rank_omega_g_a + r.rank_omega_g_b - r.rank_omega_g) / 2 - 2 * c_ab;
  const long k_ab_h = static_cast<long>(r.rank_h_a + r.rank_h_b + r.k) - static_cast<long>(r.n) - 2 * c_ab;
  if (k_ab_g != k_ab_h) {
    fail("k_AB from normalizer ranks = " + std::to_string(k_ab_g) + ", from check-matrix ranks = " +
         std::to_string(k_ab_h));
  }
  const long k_a = static_cast<long>(r.rank_omega_g_a / 2) - c_ab - k_ab_g;
  const long k_b = static_cast<long>(r.rank_omega_g_b / 2) - c_ab - k_ab_g;
  if (k_ab_g < 0 || k_a < 0 || k_b < 0) {
    fail("negative count");
  }
  if (static_cast<std::size_t>(k_a + k_b + k_ab_g) != r.k) {
    fail("k_A + k_B + k_AB != k");
  }
  return {r.n, static_cast<std::size_t>(c_ab), static_cast<std::size_t>(k_a), static_cast<std::size_t>(k_b),
          static_cast<std::size_t>(k_ab_g)};
}

/// The parent stabilizer rewritten as four subgroups: ebit pairs whose Alice
/// parts anticommute within the pair, nonlocal information-qubit generators,
/// and generators supported only on A or only on B.
struct BipartiteDecomposition {
  std::vector<std::pair<PauliOp, PauliOp>> entanglement;
  std::vector<PauliOp> nonlocal_info;
  std::vector<PauliOp> local_a;
  std::vector<PauliOp> local_b;

  /// Entanglement pairs first, then nonlocal, local_a, local_b.
  std::vector<PauliOp> all_generators() const {
    std::vector<PauliOp> out;
    for (const auto &[g, gbar] : entanglement) {
      out.push_back(g);
      out.push_back(gbar);
    }
    out.insert(out.end(), nonlocal_info.begin(), nonlocal_info.end());
    out.insert(out.end(), local_a.begin(), local_a.end());
    out.insert(out.end(), local_b.begin(), local_b.end());
    return out;
  }
};

namespace detail {

inline std::vector<SympRow> local_bits(const std::vector<PauliOp> &ops, const Bipartition &part, Party side) {
  std::vector<SympRow> out;
  for (const auto &p : ops) {
    out.push_back(local_part(p, part, side).bits());
  }
  return out;
}

/// Splits `rows` by whether each row's `side` part is independent of the
/// accepted rows (and of `fixed`). Accepted rows are kept verbatim; each
/// dependent row is multiplied by the rows reproducing its `side` part.
inline std::pair<std::vector<PauliOp>, std::vector<PauliOp>> split_by_local_dependence(
    const std::vector<PauliOp> &rows, const std::vector<PauliOp> &fixed, const Bipartition &part, Party side) {
  std::vector<PauliOp> accepted;
  std::vector<PauliOp> reduced;
  for (const auto &row : rows) {
    std::vector<PauliOp> pool = fixed;
    pool.insert(pool.end(), accepted.begin(), accepted.end());
    auto combo = solve_combination(local_bits(pool, part, side), local_part(row, part, side).bits());
    if (!combo) {
      accepted.push_back(row);
      continue;
    }
    PauliOp r = row;
    for (std::size_t i = 0; i < combo->size(); ++i) {
      if ((*combo)[i]) {
        r *= pool[i];
      }
    }
    reduced.push_back(std::move(r));
  }
  return {std::move(accepted), std::move(reduced)};
}

}  // namespace detail

inline BipartiteDecomposition decompose(const StabilizerCode &c, const Bipartition &part) {
  require_valid(c);
  if (c.n() != part.n()) {
    throw DimensionError("code has " + std::to_string(c.n()) + " qubits, cut has " + std::to_string(part.n()));
  }
  // Generators with independent Alice parts (S') versus those left acting only on Bob (S^B).
  auto [s_prime, s_b] = detail::split_by_local_dependence(c.generators(), {}, part, Party::A);
  // Clear Bob-side dependence of S' using S^B; rows whose Bob part vanishes form S^A.
  auto [s_ab, s_a] = detail::split_by_local_dependence(s_prime, s_b, part, Party::B);

  const auto mask_a = part.mask(Party::A);
  auto split = sgso_rows(
      std::move(s_ab), 2 * c.n(),
      [&](const PauliOp &u, const PauliOp &v) { return symp_inner_masked(u.bits(), v.bits(), mask_a); },
      [](PauliOp &u, const PauliOp &v) { u *= v; }, [](const PauliOp &u) { return u.bits().concat_bits(); });

  BipartiteDecomposition d;
  d.entanglement = std::move(split.pairs);
  d.nonlocal_info = std::move(split.isotropic);
  d.local_a = std::move(s_a);
  d.local_b = std::move(s_b);
  return d;
}

struct AuditReport {
  bool ok = true;
  std::vector<std::string> violations;
  std::size_t rank_h_a = 0;
  std::size_t rank_h_b = 0;
};

/// Checks the subgroup sizes produced by decompose() against the rank identities
///   |S^B| = n - k - rank H^A,  |S^A| = n - k - rank H^B,
///   2 c_AB + k_AB = rank H^A + rank H^B + k - n.
inline AuditReport subgroup_size_audit(const BipartiteDecomposition &d, const StabilizerCode &c,
                                       const Bipartition &part) {
  const SympMatrix h = c.check_matrix();
  AuditReport r;
  r.rank_h_a = restrict(h, part, Party::A).rank();
  r.rank_h_b = restrict(h, part, Party::B).rank();
  const long n = static_cast<long>(c.n()), k = static_cast<long>(c.k());
  auto expect = [&](const std::string &what, long got, long want) {
    if (got != want) {
      r.ok = false;
      r.violations.push_back(what + ": got " + std::to_string(got) + ", expected " + std::to_string(want));
    }
  };
  expect("|S^B| = n - k - rank(H^A)", static_cast<long>(d.local_b.size()), n - k - static_cast<long>(r.rank_h_a));
  expect("|S^A| = n - k - rank(H^B)", static_cast<long>(d.local_a.size()), n - k - static_cast<long>(r.rank_h_b));
  expect("|S^AB| = rank(H^A) + rank(H^B) + k - n",
         static_cast<long>(2 * d.entanglement.size() + d.nonlocal_info.size()),
         static_cast<long>(r.rank_h_a + r.rank_h_b) + k - n);
  return r;
}

/// Checks the structural invariants of a decomposition: locality of the local
/// subgroups, and that Alice parts anticommute exactly within each ebit pair.
/// Returns an empty string when everything holds.
inline std::string check_decomposition_structure(const BipartiteDecomposition &d, const Bipartition &part) {
  for (std::size_t i = 0; i < d.local_a.size(); ++i) {
    if (!local_part(d.local_a[i], part, Party::B).bits().is_identity()) {
      return "local_a[" + std::to_string(i) + "] acts on B";
    }
  }
  for (std::size_t i = 0; i < d.local_b.size(); ++i) {
    if (!local_part(d.local_b[i], part, Party::A).bits().is_identity()) {
      return "local_b[" + std::to_string(i) + "] acts on A";
    }
  }
  const auto all = d.all_generators();
  const auto mask_a = part.mask(Party::A);
  const std::size_t paired = 2 * d.entanglement.size();
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const bool expected = i < paired && j == i + 1 && i % 2 == 0;
      if (symp_inner_masked(all[i].bits(), all[j].bits(), mask_a) != expected) {
        return "Alice parts of generators " + std::to_string(i) + " and " + std::to_string(j) +
               (expected ? " should anticommute" : " should commute");
      }
    }
  }
  return {};
}

/// The unencoded stabilizer for a cut: ebit j on (a_j, b_j) stabilized by ZZ
/// and XX, nonlocal information qubit j on (a_{c+j}, b_{c+j}) stabilized by
/// ZZ, then single-qubit Z ancillas on each side. Remaining qubits carry the
/// local information qubits. a_i / b_i are the owned qubits in increasing order.
inline StabilizerCode trivial_stabilizer(const BipartiteParams &p, const Bipartition &part) {
  const auto qa = part.qubits(Party::A), qb = part.qubits(Party::B);
  const long anc_a = static_cast<long>(qa.size()) - static_cast<long>(p.c_ab + p.k_ab + p.k_a);
  const long anc_b = static_cast<long>(qb.size()) - static_cast<long>(p.c_ab + p.k_ab + p.k_b);
  if (anc_a < 0 || anc_b < 0 || p.n != part.n()) {
    throw ConsistencyError("parameters " + p.label() + " do not fit cut " + part.str());
  }
  const std::size_t n = part.n();
  std::vector<PauliOp> gens;
  auto two = [&](std::size_t a, std::size_t b, char letter) {
    PauliOp g(n);
    g.set_letter(a, letter);
    g.set_letter(b, letter);
    gens.push_back(std::move(g));
  };
  auto one = [&](std::size_t q) {
    PauliOp g(n);
    g.set_letter(q, 'Z');
    gens.push_back(std::move(g));
  };
  for (std::size_t j = 0; j < p.c_ab; ++j) {
    two(qa[j], qb[j], 'Z');
    two(qa[j], qb[j], 'X');
  }
  for (std::size_t j = 0; j < p.k_ab; ++j) {
    two(qa[p.c_ab + j], qb[p.c_ab + j], 'Z');
  }
  for (long j = 0; j < anc_a; ++j) {
    one(qa[p.c_ab + p.k_ab + static_cast<std::size_t>(j)]);
  }
  for (long j = 0; j < anc_b; ++j) {
    one(qb[p.c_ab + p.k_ab + static_cast<std::size_t>(j)]);
  }
  return StabilizerCode(n, std::move(gens));
}

}  // namespace bqec
