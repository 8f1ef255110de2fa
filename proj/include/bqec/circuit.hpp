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
#include <array>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bqec/bipartition.hpp"
#include "bqec/errors.hpp"
#include "bqec/pauli.hpp"
#include "bqec/stabilizer_code.hpp"

namespace bqec {

enum class GateKind : std::uint8_t {
  H,
  P,
  X,
  Y,
  Z,
  CNOT,
  CZ,
  SWAP,
  PREP_ZERO,
  PREP_PLUS,
  PREP_EBIT,
  WAIT,
  MEAS_Z,
  MEAS_X,
};

struct GateInfo {
  GateKind kind;
  std::string_view name;
  std::uint8_t arity;
  bool unitary;
};

inline constexpr std::array<GateInfo, 14> kGateTable{{
    {GateKind::H, "H", 1, true},
    {GateKind::P, "P", 1, true},
    {GateKind::X, "X", 1, true},
    {GateKind::Y, "Y", 1, true},
    {GateKind::Z, "Z", 1, true},
    {GateKind::CNOT, "CNOT", 2, true},
    {GateKind::CZ, "CZ", 2, true},
    {GateKind::SWAP, "SWAP", 2, true},
    {GateKind::PREP_ZERO, "PREP_ZERO", 1, false},
    {GateKind::PREP_PLUS, "PREP_PLUS", 1, false},
    {GateKind::PREP_EBIT, "PREP_EBIT", 2, false},
    {GateKind::WAIT, "WAIT", 1, true},
    {GateKind::MEAS_Z, "MEAS_Z", 1, false},
    {GateKind::MEAS_X, "MEAS_X", 1, false},
}};

inline const GateInfo &gate_info(GateKind k) {
  return kGateTable[static_cast<std::size_t>(k)];
}

inline std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  for (const auto &g : kGateTable) {
    if (g.name == name) {
      return g.kind;
    }
  }
  return std::nullopt;
}

struct Gate {
  GateKind kind;
  std::array<std::uint32_t, 2> q{0, 0};
  std::uint32_t timestep = 0;

  std::uint8_t arity() const {
    return gate_info(kind).arity;
  }
  bool operator==(const Gate &) const = default;
};

/// Timestep-ordered gate list on n qubits, optionally labelled with parties.
struct Circuit {
  std::size_t n = 0;
  std::vector<Gate> gates;
  std::optional<Bipartition> party;

  Circuit() = default;
  explicit Circuit(std::size_t n) : n(n) {
  }

  Circuit &add(GateKind kind, std::uint32_t timestep, std::uint32_t a, std::uint32_t b = 0) {
    gates.push_back(Gate{kind, {a, b}, timestep});
    return *this;
  }

  std::size_t count(GateKind kind) const {
    return static_cast<std::size_t>(std::count_if(gates.begin(), gates.end(), [&](const Gate &g) { return g.kind == kind; }));
  }

  std::uint32_t depth() const {
    std::uint32_t d = 0;
    for (const auto &g : gates) {
      d = std::max(d, g.timestep + 1);
    }
    return d;
  }

  bool operator==(const Circuit &o) const {
    return n == o.n && gates == o.gates;
  }
};

/// Throws ValidationError naming the first offending gate (1-origin index).
inline void validate_circuit(const Circuit &c) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> seen;
  std::uint32_t last_t = 0;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate &g = c.gates[i];
    const std::string where = "gate " + std::to_string(i + 1) + " (" + std::string(gate_info(g.kind).name) + ")";
    if (g.timestep < last_t) {
      throw ValidationError(where + ": timesteps must be non-decreasing");
    }
    last_t = g.timestep;
    for (std::uint8_t k = 0; k < g.arity(); ++k) {
      if (g.q[k] >= c.n) {
        throw ValidationError(where + ": qubit " + std::to_string(g.q[k] + 1) + " out of range");
      }
      if (!seen.emplace(std::make_pair(g.timestep, g.q[k]), i).second) {
        throw ValidationError(where + ": qubit " + std::to_string(g.q[k] + 1) + " already used at timestep " +
                              std::to_string(g.timestep));
      }
    }
    if (g.arity() == 2 && g.q[0] == g.q[1]) {
      throw ValidationError(where + ": duplicate operand");
    }
    if (c.party && g.arity() == 2) {
      const bool crosses = c.party->owner(g.q[0]) != c.party->owner(g.q[1]);
      if (g.kind == GateKind::PREP_EBIT && !crosses) {
        throw ValidationError(where + ": ebit halves must belong to different parties");
      }
      if (g.kind != GateKind::PREP_EBIT && crosses) {
        throw ValidationError(where + ": gate spans both parties");
      }
    }
  }
}

/// True when no two-qubit unitary acts across the cut.
inline bool is_local(const Circuit &c, const Bipartition &part) {
  for (const auto &g : c.gates) {
    if (g.arity() == 2 && g.kind != GateKind::PREP_EBIT && part.owner(g.q[0]) != part.owner(g.q[1])) {
      return false;
    }
  }
  return true;
}

/// Text format: "<timestep> <KIND> <q1> [<q2>]" per line, 1-origin qubits,
/// '#' comments. Qubit count is `n` when given, else the largest index used.
inline Circuit parse_circuit(std::string_view text, std::optional<std::size_t> n = std::nullopt) {
  Circuit c;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::uint32_t max_q = 0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> seen;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = text.size();
    }
    ++line_no;
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::vector<std::pair<std::string_view, std::size_t>> tokens;
    for (std::size_t i = 0; i < line.size();) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
        ++i;
      }
      const std::size_t start = i;
      while (i < line.size() && !(line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
        ++i;
      }
      if (i > start) {
        tokens.emplace_back(line.substr(start, i - start), start + 1);
      }
    }
    if (tokens.empty()) {
      continue;
    }
    auto number = [&](std::size_t idx, const char *what) {
      auto [tok, col] = tokens[idx];
      std::uint32_t v = 0;
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw ParseError(std::string("expected ") + what + ", got '" + std::string(tok) + "'", line_no, col);
      }
      return v;
    };
    if (tokens.size() < 2) {
      throw ParseError("expected '<timestep> <KIND> <qubits...>'", line_no, tokens[0].second);
    }
    const std::uint32_t t = number(0, "timestep");
    auto kind = gate_kind_from_name(tokens[1].first);
    if (!kind) {
      throw ParseError("unknown gate '" + std::string(tokens[1].first) + "'", line_no, tokens[1].second);
    }
    const std::uint8_t arity = gate_info(*kind).arity;
    if (tokens.size() != 2u + arity) {
      throw ParseError(std::string(gate_info(*kind).name) + " takes " + std::to_string(arity) + " qubit(s)", line_no,
                       tokens[1].second);
    }
    Gate g{*kind, {0, 0}, t};
    for (std::uint8_t k = 0; k < arity; ++k) {
      const std::uint32_t q = number(2 + k, "qubit index");
      if (q == 0 || (n && q > *n)) {
        throw ParseError("qubit " + std::to_string(q) + " out of range", line_no, tokens[2 + k].second);
      }
      g.q[k] = q - 1;
      max_q = std::max(max_q, q);
    }
    if (arity == 2 && g.q[0] == g.q[1]) {
      throw ParseError("duplicate operand", line_no, tokens[3].second);
    }
    for (std::uint8_t k = 0; k < arity; ++k) {
      if (!seen.emplace(std::make_pair(t, g.q[k]), line_no).second) {
        throw ParseError("qubit " + std::to_string(g.q[k] + 1) + " used twice at timestep " + std::to_string(t),
                         line_no, tokens[2 + k].second);
      }
    }
    c.gates.push_back(g);
  }
  c.n = n ? *n : max_q;
  std::stable_sort(c.gates.begin(), c.gates.end(),
                   [](const Gate &a, const Gate &b) { return a.timestep < b.timestep; });
  return c;
}

inline std::string serialize_circuit(const Circuit &c) {
  std::string out;
  for (const auto &g : c.gates) {
    out += std::to_string(g.timestep);
    out.push_back(' ');
    out += gate_info(g.kind).name;
    for (std::uint8_t k = 0; k < g.arity(); ++k) {
      out.push_back(' ');
      out += std::to_string(g.q[k] + 1);
    }
    out.push_back('\n');
  }
  return out;
}

/// Heisenberg update P -> U P U^dagger for one gate. WAIT is the identity.
inline void apply_clifford(PauliOp &p, const Gate &g) {
  SympRow &b = p.bits();
  bool flip = false;
  const std::uint32_t a = g.q[0], t = g.q[1];
  switch (g.kind) {
    case GateKind::H: {
      const bool x = b.x(a), z = b.z(a);
      flip = x && z;
      b.set_x(a, z);
      b.set_z(a, x);
      break;
    }
    case GateKind::P: {
      const bool x = b.x(a), z = b.z(a);
      flip = x && z;
      b.set_z(a, z != x);
      break;
    }
    case GateKind::X:
      flip = b.z(a);
      break;
    case GateKind::Z:
      flip = b.x(a);
      break;
    case GateKind::Y:
      flip = b.x(a) != b.z(a);
      break;
    case GateKind::CNOT: {
      const bool xc = b.x(a), zc = b.z(a), xt = b.x(t), zt = b.z(t);
      flip = xc && zt && !(xt != zc);
      b.set_x(t, xt != xc);
      b.set_z(a, zc != zt);
      break;
    }
    case GateKind::CZ: {
      apply_clifford(p, Gate{GateKind::H, {t, 0}, 0});
      apply_clifford(p, Gate{GateKind::CNOT, {a, t}, 0});
      apply_clifford(p, Gate{GateKind::H, {t, 0}, 0});
      return;
    }
    case GateKind::SWAP: {
      const bool xa = b.x(a), za = b.z(a);
      b.set_x(a, b.x(t));
      b.set_z(a, b.z(t));
      b.set_x(t, xa);
      b.set_z(t, za);
      break;
    }
    case GateKind::WAIT:
      break;
    default:
      throw CapabilityError(std::string("gate ") + std::string(gate_info(g.kind).name) + " is not unitary");
  }
  if (flip) {
    p.set_phase(p.phase() ^ 2);
  }
}

/// Stabilizer of the state obtained by running `circ` on a state stabilized by `c`.
inline StabilizerCode conjugate(const StabilizerCode &c, const Circuit &circ) {
  if (circ.n != c.n()) {
    throw DimensionError("circuit has " + std::to_string(circ.n) + " qubits, code has " + std::to_string(c.n()));
  }
  for (const auto &g : circ.gates) {
    if (!gate_info(g.kind).unitary) {
      throw CapabilityError(std::string("conjugate: non-unitary gate ") + std::string(gate_info(g.kind).name));
    }
  }
  std::vector<PauliOp> gens = c.generators();
  for (const auto &g : circ.gates) {
    for (auto &p : gens) {
      apply_clifford(p, g);
    }
  }
  return StabilizerCode(c.n(), std::move(gens));
}

/// Drops preparations and waits. Throws if the circuit measures anything.
inline Circuit unitary_part(const Circuit &c) {
  Circuit out(c.n);
  out.party = c.party;
  for (const auto &g : c.gates) {
    if (g.kind == GateKind::MEAS_Z || g.kind == GateKind::MEAS_X) {
      throw CapabilityError("unitary_part: circuit contains measurements");
    }
    if (gate_info(g.kind).unitary && g.kind != GateKind::WAIT) {
      out.gates.push_back(g);
    }
  }
  return out;
}

/// Inverse of a unitary circuit. Layers are reversed and renumbered from 0;
/// P is inverted as P followed by Z in an extra layer.
inline Circuit inverse(const Circuit &c) {
  Circuit out(c.n);
  out.party = c.party;
  std::vector<std::vector<Gate>> layers;
  for (const auto &g : c.gates) {
    if (!gate_info(g.kind).unitary) {
      throw CapabilityError(std::string("inverse: non-unitary gate ") + std::string(gate_info(g.kind).name));
    }
    if (layers.empty() || layers.back().front().timestep != g.timestep) {
      layers.emplace_back();
    }
    layers.back().push_back(g);
  }
  std::uint32_t t = 0;
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    std::vector<std::uint32_t> phase_qubits;
    for (auto g = it->rbegin(); g != it->rend(); ++g) {
      Gate inv = *g;
      inv.timestep = t;
      out.gates.push_back(inv);
      if (g->kind == GateKind::P) {
        phase_qubits.push_back(g->q[0]);
      }
    }
    ++t;
    if (!phase_qubits.empty()) {
      for (auto q : phase_qubits) {
        out.add(GateKind::Z, t, q);
      }
      ++t;
    }
  }
  return out;
}

/// Assigns each gate the earliest timestep after the previous use of its qubits.
inline void schedule_asap(Circuit &c) {
  std::vector<std::uint32_t> next(c.n, 0);
  for (auto &g : c.gates) {
    std::uint32_t t = next[g.q[0]];
    if (g.arity() == 2) {
      t = std::max(t, next[g.q[1]]);
    }
    g.timestep = t;
    next[g.q[0]] = t + 1;
    if (g.arity() == 2) {
      next[g.q[1]] = t + 1;
    }
  }
  std::stable_sort(c.gates.begin(), c.gates.end(), [](const Gate &a, const Gate &b) { return a.timestep < b.timestep; });
}

}  // namespace bqec
