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
#include <optional>
#include <string>
#include <vector>

#include "bqec/bit_matrix.hpp"
#include "bqec/errors.hpp"
#include "bqec/pauli.hpp"
#include "bqec/symplectic.hpp"

namespace bqec {

/// [[n, k]] stabilizer code given by n-k Hermitian generators.
///
/// Construction only checks shapes; use validate_code() for the commutation
/// and independence invariants.
class StabilizerCode {
 public:
  StabilizerCode() = default;
  StabilizerCode(std::size_t n, std::vector<PauliOp> generators) : n_(n), generators_(std::move(generators)) {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (generators_[i].n() != n_) {
        throw DimensionError("generator " + std::to_string(i + 1) + " acts on " + std::to_string(generators_[i].n()) +
                             " qubits, code has " + std::to_string(n_));
      }
      if (!generators_[i].is_hermitian()) {
        throw ValidationError("generator " + std::to_string(i + 1) + " is not Hermitian");
      }
    }
  }

  std::size_t n() const {
    return n_;
  }
  /// n minus the number of generators; meaningful once the generators are independent.
  std::size_t k() const {
    return n_ - generators_.size();
  }
  std::size_t num_generators() const {
    return generators_.size();
  }
  const std::vector<PauliOp> &generators() const {
    return generators_;
  }
  const PauliOp &generator(std::size_t i) const {
    return generators_[i];
  }
  SympMatrix check_matrix() const {
    return SympMatrix::from_paulis(n_, generators_);
  }
  std::vector<bool> signs_negative() const {
    std::vector<bool> s;
    for (const auto &g : generators_) {
      s.push_back(g.negative());
    }
    return s;
  }

  bool operator==(const StabilizerCode &) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<PauliOp> generators_;
};

struct ValidationReport {
  bool ok = true;
  std::string message;
  /// 1-origin rows involved in the violation (two rows for anticommutation, one for dependence).
  std::vector<std::size_t> rows;
};

inline ValidationReport validate_code(const StabilizerCode &c) {
  if (c.num_generators() > c.n()) {
    return {false, "more generators than qubits", {}};
  }
  const auto &g = c.generators();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!g[i].commutes(g[j])) {
        return {false, "rows " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " anticommute", {i + 1, j + 1}};
      }
    }
  }
  RowBasis basis(2 * c.n());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!basis.add(g[i].bits().concat_bits())) {
      return {false, "row " + std::to_string(i + 1) + " depends on earlier rows", {i + 1}};
    }
  }
  return {};
}

inline void require_valid(const StabilizerCode &c) {
  auto report = validate_code(c);
  if (!report.ok) {
    throw ValidationError("invalid stabilizer code: " + report.message);
  }
}

/// GF(2) coefficients expressing `target` in the span of `rows`, if it lies there.
inline std::optional<std::vector<bool>> solve_combination(std::span<const SympRow> rows, const SympRow &target) {
  const std::size_t n = target.n();
  const std::size_t r = rows.size();
  BitMatrix aug(r, 2 * n + r);
  for (std::size_t i = 0; i < r; ++i) {
    rows[i].check_same(target);
    for (std::size_t q = 0; q < n; ++q) {
      aug.set(i, q, rows[i].z(q));
      aug.set(i, n + q, rows[i].x(q));
    }
    aug.set(i, 2 * n + i, true);
  }
  std::vector<std::size_t> pivots;
  const std::size_t rk = aug.row_reduce(&pivots);
  std::vector<bool> t(2 * n + r, false);
  for (std::size_t q = 0; q < n; ++q) {
    t[q] = target.z(q);
    t[n + q] = target.x(q);
  }
  for (std::size_t i = 0; i < rk; ++i) {
    if (pivots[i] >= 2 * n) {
      break;
    }
    if (t[pivots[i]]) {
      for (std::size_t c = 0; c < 2 * n + r; ++c) {
        t[c] = t[c] ^ aug.get(i, c);
      }
    }
  }
  for (std::size_t c = 0; c < 2 * n; ++c) {
    if (t[c]) {
      return std::nullopt;
    }
  }
  return std::vector<bool>(t.begin() + static_cast<std::ptrdiff_t>(2 * n), t.end());
}

/// Whether `p`, sign included, is an element of the group generated by the
/// commuting Hermitian operators `gens`.
inline bool group_contains(std::span<const PauliOp> gens, const PauliOp &p) {
  std::vector<SympRow> rows;
  for (const auto &g : gens) {
    rows.push_back(g.bits());
  }
  auto combo = solve_combination(rows, p.bits());
  if (!combo) {
    return false;
  }
  PauliOp prod(p.n());
  for (std::size_t i = 0; i < combo->size(); ++i) {
    if ((*combo)[i]) {
      prod *= gens[i];
    }
  }
  return prod == p;
}

/// Index of the first operator in `ops` that is not in the group generated by
/// `gens`, or nullopt if all are.
inline std::optional<std::size_t> first_outside_group(std::span<const PauliOp> gens, std::span<const PauliOp> ops) {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (!group_contains(gens, ops[i])) {
      return i;
    }
  }
  return std::nullopt;
}

/// Equality of the generated stabilizer groups, signs included.
inline bool same_group(std::span<const PauliOp> a, std::span<const PauliOp> b) {
  return !first_outside_group(a, b) && !first_outside_group(b, a);
}

inline bool same_group(const StabilizerCode &a, const StabilizerCode &b) {
  return a.n() == b.n() && same_group(a.generators(), b.generators());
}

/// Generators of the normalizer N(S): a basis of the symplectic complement of
/// the check matrix. Contains the stabilizer row space; n + k rows.
struct NormalizerGens {
  SympMatrix gens;
};

inline NormalizerGens normalizer_generators(const StabilizerCode &c) {
  require_valid(c);
  const std::size_t n = c.n();
  // symp(v, g) = v_z . g_x + v_x . g_z, i.e. v is orthogonal to the row [g_x | g_z].
  BitMatrix swapped(c.num_generators(), 2 * n);
  for (std::size_t i = 0; i < c.num_generators(); ++i) {
    const auto &b = c.generator(i).bits();
    for (std::size_t q = 0; q < n; ++q) {
      swapped.set(i, q, b.x(q));
      swapped.set(i, n + q, b.z(q));
    }
  }
  BitMatrix kernel = nullspace(swapped);
  SympMatrix out(0, n);
  for (std::size_t i = 0; i < kernel.rows(); ++i) {
    SympRow r(n);
    for (std::size_t q = 0; q < n; ++q) {
      r.set_z(q, kernel.get(i, q));
      r.set_x(q, kernel.get(i, n + q));
    }
    out.append_row(r);
  }
  return {std::move(out)};
}

struct LogicalPair {
  SympRow xbar;
  SympRow zbar;
};

struct LogicalSet {
  std::vector<LogicalPair> pairs;
};

/// Logical operators from SGSO on the normalizer. The hyperbolic pairs are the
/// logicals; the isotropic remainder spans the stabilizer.
inline LogicalSet logical_operators(const StabilizerCode &c) {
  auto normalizer = normalizer_generators(c);
  auto split = sgso(normalizer.gens);
  LogicalSet out;
  for (auto &[u, v] : split.pairs) {
    if (u.is_z_type() && !v.is_z_type()) {
      out.pairs.push_back({std::move(v), std::move(u)});
    } else {
      out.pairs.push_back({std::move(u), std::move(v)});
    }
  }
  return out;
}

constexpr std::size_t kMaxDistanceQubits = 12;

/// Minimum weight of a Pauli that commutes with every generator but is not in
/// the stabilizer group (signs ignored). Returns 0 for k = 0 codes, which have
/// no logical operators.
inline std::size_t brute_force_distance(const StabilizerCode &c) {
  require_valid(c);
  if (c.n() > kMaxDistanceQubits) {
    throw CapabilityError("brute_force_distance supports n <= " + std::to_string(kMaxDistanceQubits) + ", got " +
                          std::to_string(c.n()));
  }
  if (c.k() == 0) {
    return 0;
  }
  const std::size_t n = c.n();
  RowBasis stabilizer(2 * n);
  for (const auto &g : c.generators()) {
    stabilizer.add(g.bits().concat_bits());
  }
  // Each generator as (z mask, x mask) over n <= 12 bits.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> gens;
  for (const auto &g : c.generators()) {
    gens.emplace_back(static_cast<std::uint32_t>(g.bits().z_words()[0]),
                      static_cast<std::uint32_t>(g.bits().x_words()[0]));
  }
  auto is_logical = [&](std::uint32_t z, std::uint32_t x) {
    for (auto [gz, gx] : gens) {
      if (std::popcount((z & gx) ^ (x & gz)) & 1) {
        return false;
      }
    }
    SympRow r(n);
    r.z_words()[0] = z;
    r.x_words()[0] = x;
    return !stabilizer.contains(r.concat_bits());
  };
  for (std::size_t w = 1; w <= n; ++w) {
    for (std::uint32_t support = 0; support < (1u << n); ++support) {
      if (static_cast<std::size_t>(std::popcount(support)) != w) {
        continue;
      }
      std::vector<std::size_t> qubits;
      for (std::size_t q = 0; q < n; ++q) {
        if ((support >> q) & 1) {
          qubits.push_back(q);
        }
      }
      std::size_t combos = 1;
      for (std::size_t i = 0; i < w; ++i) {
        combos *= 3;
      }
      for (std::size_t code = 0; code < combos; ++code) {
        std::uint32_t z = 0, x = 0;
        std::size_t rest = code;
        for (auto q : qubits) {
          const std::size_t letter = rest % 3 + 1;  // 1=X, 2=Y, 3=Z
          rest /= 3;
          if (letter != 3) {
            x |= 1u << q;
          }
          if (letter != 1) {
            z |= 1u << q;
          }
        }
        if (is_logical(z, x)) {
          return w;
        }
      }
    }
  }
  return 0;
}

}  // namespace bqec
