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

// Random stabilizer codes by rejection sampling: each new generator is a
// uniformly random Pauli kept only if it commutes with and is independent of
// the previous ones. Signs are random.

#include <random>
#include <vector>

#include "bqec/bipartition.hpp"
#include "bqec/circuit.hpp"
#include "bqec/stabilizer_code.hpp"

namespace bqec::oracle {

inline PauliOp random_pauli(std::size_t n, std::mt19937_64 &rng) {
  PauliOp p(n);
  for (std::size_t q = 0; q < n; ++q) {
    p.set_letter(q, "IXYZ"[rng() & 3]);
  }
  return p;
}

inline StabilizerCode random_code(std::size_t n, std::size_t r, std::mt19937_64 &rng) {
  std::vector<PauliOp> gens;
  RowBasis basis(2 * n);
  while (gens.size() < r) {
    PauliOp p = random_pauli(n, rng);
    bool ok = !p.bits().is_identity();
    for (const auto &g : gens) {
      ok = ok && p.commutes(g);
    }
    if (!ok || basis.contains(p.bits().concat_bits())) {
      continue;
    }
    basis.add(p.bits().concat_bits());
    if (rng() & 1) {
      p.set_phase(2);
    }
    gens.push_back(std::move(p));
  }
  return StabilizerCode(n, std::move(gens));
}

// n in [lo, hi], at least one generator.
inline StabilizerCode random_code(std::mt19937_64 &rng, std::size_t lo = 2, std::size_t hi = 10) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  const std::size_t r = std::uniform_int_distribution<std::size_t>(1, n)(rng);
  return random_code(n, r, rng);
}

inline Bipartition random_cut(std::size_t n, std::mt19937_64 &rng) {
  std::string s(n, 'A');
  for (auto &c : s) {
    c = (rng() & 1) ? 'B' : 'A';
  }
  return Bipartition::from_string(s);
}

inline Circuit random_clifford_circuit(std::size_t n, std::size_t gates, std::mt19937_64 &rng) {
  static constexpr GateKind kKinds[] = {GateKind::H,    GateKind::P,  GateKind::X,    GateKind::Y,   GateKind::Z,
                                        GateKind::CNOT, GateKind::CZ, GateKind::SWAP, GateKind::WAIT};
  Circuit c(n);
  for (std::size_t i = 0; i < gates; ++i) {
    GateKind k = kKinds[rng() % std::size(kKinds)];
    if (n < 2 && gate_info(k).arity == 2) {
      k = GateKind::H;
    }
    const auto a = static_cast<std::uint32_t>(rng() % n);
    auto b = static_cast<std::uint32_t>(rng() % n);
    if (gate_info(k).arity == 2) {
      while (b == a) {
        b = static_cast<std::uint32_t>(rng() % n);
      }
    }
    c.add(k, 0, a, b);
  }
  schedule_asap(c);
  return c;
}

}  // namespace bqec::oracle
