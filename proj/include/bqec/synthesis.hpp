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

#include <cstdint>
#include <string>
#include <vector>

#include "bqec/bipartition.hpp"
#include "bqec/circuit.hpp"
#include "bqec/code_io.hpp"
#include "bqec/errors.hpp"
#include "bqec/stabilizer_code.hpp"

namespace bqec {

enum class PrepBasis : std::uint8_t { Zero, Plus };

namespace detail {

// Applies gates to a working generator list while recording them.
class Reducer {
 public:
  Reducer(std::size_t n, std::vector<PauliOp> rows) : circ_(n), rows_(std::move(rows)) {
  }

  void gate(GateKind kind, std::uint32_t a, std::uint32_t b = 0) {
    Gate g{kind, {a, b}, 0};
    circ_.gates.push_back(g);
    for (auto &r : rows_) {
      apply_clifford(r, g);
    }
  }

  // Turns the letter of row r on qubit q into Z (no-op on I or Z).
  void make_z(std::size_t r, std::size_t q) {
    const char l = rows_[r].letter(q);
    if (l == 'X') {
      gate(GateKind::H, static_cast<std::uint32_t>(q));
    } else if (l == 'Y') {
      gate(GateKind::P, static_cast<std::uint32_t>(q));
      gate(GateKind::H, static_cast<std::uint32_t>(q));
    }
  }

  // Row r restricted to `qubits` becomes Z on `pivot`. Qubits in `fixed` may
  // only carry Z and are cleared with CNOT(fixed -> pivot).
  void reduce_to_z(std::size_t r, const std::vector<std::size_t> &qubits, std::size_t pivot,
                   const std::vector<std::size_t> &fixed) {
    std::vector<std::size_t> support;
    for (auto q : qubits) {
      if (rows_[r].letter(q) != 'I') {
        make_z(r, q);
        support.push_back(q);
      }
    }
    if (support.empty()) {
      throw ConsistencyError("synthesis: row has no free support");
    }
    if (rows_[r].letter(pivot) == 'I') {
      gate(GateKind::SWAP, static_cast<std::uint32_t>(support.front()), static_cast<std::uint32_t>(pivot));
    }
    for (auto q : qubits) {
      if (q != pivot && rows_[r].letter(q) != 'I') {
        gate(GateKind::CNOT, static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(pivot));
      }
    }
    for (auto q : fixed) {
      const char l = rows_[r].letter(q);
      if (l == 'Z') {
        gate(GateKind::CNOT, static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(pivot));
      } else if (l != 'I') {
        throw ConsistencyError("synthesis: isotropic row anticommutes with an earlier row");
      }
    }
  }

  // Row r (anticommuting with Z on pivot) restricted to `qubits` becomes X on pivot.
  void reduce_to_x(std::size_t r, const std::vector<std::size_t> &qubits, std::size_t pivot) {
    const char lp = rows_[r].letter(pivot);
    if (lp == 'Y') {
      gate(GateKind::P, static_cast<std::uint32_t>(pivot));
    } else if (lp != 'X') {
      throw ConsistencyError("synthesis: partner row does not anticommute on pivot");
    }
    for (auto q : qubits) {
      if (q != pivot && rows_[r].letter(q) != 'I') {
        make_z(r, q);
        gate(GateKind::CZ, static_cast<std::uint32_t>(pivot), static_cast<std::uint32_t>(q));
      }
    }
  }

  const PauliOp &row(std::size_t r) const {
    return rows_[r];
  }
  Circuit &circuit() {
    return circ_;
  }

 private:
  Circuit circ_;
  std::vector<PauliOp> rows_;
};

}  // namespace detail

/// Local Clifford circuit E with conjugate(trivial form, E) generating the
/// parent group, signs included.
inline Circuit synthesize_local_encoder(const BipartiteDecomposition &d, const Bipartition &part) {
  if (auto msg = check_decomposition_structure(d, part); !msg.empty()) {
    throw ValidationError("decomposition does not match cut " + part.str() + ": " + msg);
  }
  const std::size_t n = part.n();
  const std::size_t c = d.entanglement.size();
  const std::size_t kab = d.nonlocal_info.size();
  const auto qa = part.qubits(Party::A), qb = part.qubits(Party::B);
  if (c + kab + d.local_a.size() > qa.size() || c + kab + d.local_b.size() > qb.size()) {
    throw ValidationError("decomposition has more generators than the cut can hold");
  }

  // Row layout: pairs (u, v) interleaved, nonlocal, local A, local B.
  std::vector<PauliOp> rows;
  for (const auto &[u, v] : d.entanglement) {
    rows.push_back(u);
    rows.push_back(v);
  }
  rows.insert(rows.end(), d.nonlocal_info.begin(), d.nonlocal_info.end());
  rows.insert(rows.end(), d.local_a.begin(), d.local_a.end());
  rows.insert(rows.end(), d.local_b.begin(), d.local_b.end());
  for (const auto &r : rows) {
    if (r.n() != n) {
      throw ValidationError("decomposition row length differs from cut length");
    }
  }
  const std::size_t nl0 = 2 * c, la0 = nl0 + kab, lb0 = la0 + d.local_a.size();
  detail::Reducer red(n, rows);

  auto reduce_side = [&](const std::vector<std::size_t> &qs, std::size_t local_begin, std::size_t local_end) {
    for (std::size_t j = 0; j < c; ++j) {
      red.reduce_to_z(2 * j, qs, qs[j], {});
      red.reduce_to_x(2 * j + 1, qs, qs[j]);
    }
    std::vector<std::size_t> free(qs.begin() + static_cast<std::ptrdiff_t>(c), qs.end());
    std::vector<std::size_t> fixed;
    std::size_t slot = c;
    auto iso = [&](std::size_t r) {
      const std::size_t pivot = qs[slot++];
      std::vector<std::size_t> open;
      for (auto q : free) {
        if (std::find(fixed.begin(), fixed.end(), q) == fixed.end()) {
          open.push_back(q);
        }
      }
      red.reduce_to_z(r, open, pivot, fixed);
      fixed.push_back(pivot);
    };
    for (std::size_t r = nl0; r < la0; ++r) {
      iso(r);
    }
    for (std::size_t r = local_begin; r < local_end; ++r) {
      iso(r);
    }
  };
  reduce_side(qa, la0, lb0);
  reduce_side(qb, lb0, rows.size());

  // Sign fixes.
  auto flip_with = [&](GateKind kind, std::size_t q) { red.gate(kind, static_cast<std::uint32_t>(q)); };
  for (std::size_t j = 0; j < c; ++j) {
    if (red.row(2 * j).negative()) {
      flip_with(GateKind::X, qa[j]);
    }
    if (red.row(2 * j + 1).negative()) {
      flip_with(GateKind::Z, qa[j]);
    }
  }
  for (std::size_t r = nl0; r < la0; ++r) {
    if (red.row(r).negative()) {
      flip_with(GateKind::X, qa[c + (r - nl0)]);
    }
  }
  for (std::size_t r = la0; r < lb0; ++r) {
    if (red.row(r).negative()) {
      flip_with(GateKind::X, qa[c + kab + (r - la0)]);
    }
  }
  for (std::size_t r = lb0; r < rows.size(); ++r) {
    if (red.row(r).negative()) {
      flip_with(GateKind::X, qb[c + kab + (r - lb0)]);
    }
  }

  Circuit reduction = red.circuit();
  schedule_asap(reduction);
  Circuit enc = inverse(reduction);
  enc.party = part;
  validate_circuit(enc);
  return enc;
}

/// Stabilizer group of the trivial form for the decomposition `d` of `c` over `part`.
inline StabilizerCode trivial_form(const StabilizerCode &c, const Bipartition &part) {
  return trivial_stabilizer(compute_params(c, part), part);
}

/// Empty string when conjugate(trivial form, enc) generates the code's group;
/// otherwise names the first code generator outside the encoded group.
inline std::string verify_encoder(const StabilizerCode &c, const Bipartition &part, const Circuit &enc) {
  if (enc.n != c.n()) {
    return "circuit has " + std::to_string(enc.n) + " qubits, code has " + std::to_string(c.n());
  }
  if (!is_local(enc, part)) {
    return "circuit contains a gate spanning both parties";
  }
  const StabilizerCode encoded = conjugate(trivial_form(c, part), unitary_part(enc));
  if (auto i = first_outside_group(encoded.generators(), c.generators())) {
    return "generator " + std::to_string(*i + 1) + " (" + c.generator(*i).str() + ") is not stabilized";
  }
  if (auto i = first_outside_group(c.generators(), encoded.generators())) {
    return "encoded generator " + std::to_string(*i + 1) + " (" + encoded.generator(*i).str() + ") is not in the code";
  }
  return {};
}

/// Stabilizer of three ebits on (4,5), (2,3), (1,7), qubit 6 free.
inline StabilizerCode steane_3ea_unencoded() {
  return parse_stabilizer("IIIXXII\nIXXIIII\nXIIIIIX\nIIIZZII\nIZZIIII\nZIIIIIZ\n");
}

/// Outside party {1,2,4} is A, inside party {3,5,6,7} is B.
inline Bipartition steane_cut() {
  return Bipartition::from_string("AABABBB");
}

/// Three ebits plus one info qubit (6), one extra wait layer on the ebit
/// halves, then three rounds of two CNOTs inside {3,5,6,7}.
inline Circuit steane_3ea_encoder(PrepBasis info = PrepBasis::Zero) {
  Circuit c(7);
  c.party = steane_cut();
  c.add(GateKind::PREP_EBIT, 0, 3, 4)
      .add(GateKind::PREP_EBIT, 0, 1, 2)
      .add(GateKind::PREP_EBIT, 0, 0, 6)
      .add(info == PrepBasis::Zero ? GateKind::PREP_ZERO : GateKind::PREP_PLUS, 0, 5);
  for (std::uint32_t q = 0; q < 7; ++q) {
    c.add(GateKind::WAIT, 1, q);
  }
  const std::uint32_t rounds[3][2][2] = {{{2, 4}, {5, 6}}, {{6, 2}, {4, 5}}, {{2, 4}, {5, 6}}};
  for (std::uint32_t r = 0; r < 3; ++r) {
    for (const auto &cn : rounds[r]) {
      c.add(GateKind::CNOT, 2 + r, cn[0], cn[1]);
    }
    for (std::uint32_t q : {0u, 1u, 3u}) {
      c.add(GateKind::WAIT, 2 + r, q);
    }
  }
  validate_circuit(c);
  return c;
}

/// Standard encoded |0> (or its Hadamard dual, encoded |+>) preparation:
/// seeds on 1, 2, 4 fan out over three CNOT rounds.
inline Circuit steane_baseline_encoder(PrepBasis basis = PrepBasis::Zero) {
  Circuit c(7);
  const bool zero = basis == PrepBasis::Zero;
  for (std::uint32_t q = 0; q < 7; ++q) {
    const bool seed = q == 0 || q == 1 || q == 3;
    c.add(seed == zero ? GateKind::PREP_PLUS : GateKind::PREP_ZERO, 0, q);
  }
  const std::uint32_t rounds[3][3][2] = {
      {{3, 4}, {1, 2}, {0, 6}},
      {{3, 5}, {1, 6}, {0, 2}},
      {{3, 6}, {1, 5}, {0, 4}},
  };
  for (std::uint32_t r = 0; r < 3; ++r) {
    bool busy[7] = {};
    for (const auto &cn : rounds[r]) {
      if (zero) {
        c.add(GateKind::CNOT, 1 + r, cn[0], cn[1]);
      } else {
        c.add(GateKind::CNOT, 1 + r, cn[1], cn[0]);
      }
      busy[cn[0]] = busy[cn[1]] = true;
    }
    for (std::uint32_t q = 0; q < 7; ++q) {
      if (!busy[q]) {
        c.add(GateKind::WAIT, 1 + r, q);
      }
    }
  }
  validate_circuit(c);
  return c;
}

}  // namespace bqec
