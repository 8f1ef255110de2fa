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

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bqec/circuit.hpp"
#include "bqec/errors.hpp"
#include "bqec/ft/pauli_frame.hpp"
#include "bqec/synthesis.hpp"

namespace bqec::ft {

enum class EncoderVariant : std::uint8_t { Baseline, ThreeEA };

inline std::string_view variant_name(EncoderVariant v) {
  return v == EncoderVariant::Baseline ? "baseline" : "3ea";
}

inline EncoderVariant parse_variant(std::string_view s) {
  if (s == "baseline") {
    return EncoderVariant::Baseline;
  }
  if (s == "3ea" || s == "threeEA") {
    return EncoderVariant::ThreeEA;
  }
  throw ValidationError("unknown encoder variant '" + std::string(s) + "' (expected baseline or 3ea)");
}

/// Encoded |0> or |+> preparation on 7 fresh qubits for the chosen variant.
inline Circuit block_encoder(EncoderVariant v, PrepBasis basis) {
  return v == EncoderVariant::Baseline ? steane_baseline_encoder(basis) : steane_3ea_encoder(basis);
}

using Block = std::array<std::uint32_t, 7>;

enum class OpCode : std::uint8_t {
  Gate,     // physical gate, possibly a noise location
  Check,    // accept/reject a verified ancilla factory
  Correct,  // classical decode of a syndrome block into a data Pauli correction
};

struct Op {
  OpCode code = OpCode::Gate;
  GateKind kind = GateKind::WAIT;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::int32_t loc = -1;  // location id, -1 if noiseless
  std::uint32_t aux = 0;  // measurement slot, factory id, or correction id
};

struct Location {
  std::uint32_t op = 0;
  GateKind kind = GateKind::WAIT;
  NoiseClass cls = NoiseClass::None;
  std::string label;
};

/// Verified ancilla preparation: ops [begin, end) prepare and verify the block.
struct Factory {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  Block ancilla{};
  Block verifier{};
  std::array<std::uint32_t, 7> verifier_slots{};
  Block data{};  // data block that waits while the factory reruns
  std::uint32_t duration = 0;
};

/// Syndrome measured into `slots`; the single-qubit correction goes to `data`.
struct Correction {
  std::array<std::uint32_t, 7> slots{};
  Block data{};
  bool x_type = true;  // true: X correction from Z-basis outcomes
};

/// Flat, timestep-ordered program with fault locations and classical steps.
struct ExRec {
  EncoderVariant variant = EncoderVariant::Baseline;
  std::uint32_t num_qubits = 0;
  std::uint32_t num_slots = 0;
  std::vector<Op> ops;
  std::vector<Location> locations;
  std::vector<Factory> factories;
  std::vector<Correction> corrections;
  std::vector<Block> outputs;  // data blocks decoded at the end

  std::size_t count_locations(GateKind k) const {
    std::size_t c = 0;
    for (const auto &l : locations) {
      c += l.kind == k;
    }
    return c;
  }
  std::vector<std::uint32_t> locations_of(NoiseClass cls) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < locations.size(); ++i) {
      if (locations[i].cls == cls) {
        out.push_back(i);
      }
    }
    return out;
  }
};

/// Hamming syndrome of a 7-bit word: the 1-origin position of a single flip, 0 if none.
inline std::uint32_t hamming_syndrome(std::uint32_t word) {
  std::uint32_t s = 0;
  for (std::uint32_t j = 0; j < 7; ++j) {
    if ((word >> j) & 1) {
      s ^= j + 1;
    }
  }
  return s;
}

/// Logical flip of a 7-bit error word after ideal single-error decoding.
inline bool decodes_to_logical(std::uint32_t word) {
  const std::uint32_t s = hamming_syndrome(word);
  if (s != 0) {
    word ^= 1u << (s - 1);
  }
  return std::popcount(word) & 1;
}

namespace detail {

class ExRecBuilder {
 public:
  explicit ExRecBuilder(EncoderVariant v) {
    ex_.variant = v;
  }

  Block new_block() {
    Block b{};
    for (auto &q : b) {
      q = ex_.num_qubits++;
    }
    return b;
  }

  void gate(GateKind kind, std::uint32_t a, std::uint32_t b, const std::string &label) {
    Op op;
    op.kind = kind;
    op.a = a;
    op.b = b;
    const NoiseClass cls = noise_class(kind);
    if (cls != NoiseClass::None) {
      op.loc = static_cast<std::int32_t>(ex_.locations.size());
      ex_.locations.push_back(Location{static_cast<std::uint32_t>(ex_.ops.size()), kind, cls, label});
    }
    if (kind == GateKind::MEAS_Z || kind == GateKind::MEAS_X) {
      op.aux = ex_.num_slots++;
    }
    ex_.ops.push_back(op);
  }

  void waits(const Block &b, std::uint32_t steps, const std::string &label) {
    for (std::uint32_t t = 0; t < steps; ++t) {
      for (auto q : b) {
        gate(GateKind::WAIT, q, 0, label);
      }
    }
  }

  // Encoder circuit mapped onto a block, one op per gate.
  void encode(const Block &blk, PrepBasis basis, const std::string &label) {
    const Circuit c = block_encoder(ex_.variant, basis);
    for (const auto &g : c.gates) {
      gate(g.kind, blk[g.q[0]], g.arity() == 2 ? blk[g.q[1]] : 0, label);
    }
  }

  std::uint32_t encoder_depth() const {
    return block_encoder(ex_.variant, PrepBasis::Zero).depth();
  }

  // Verified |0> (basis Zero) or |+> ancilla for the data block.
  Block factory(PrepBasis basis, const Block &data, const std::string &label) {
    Factory f;
    f.ancilla = new_block();
    f.verifier = new_block();
    f.data = data;
    f.begin = static_cast<std::uint32_t>(ex_.ops.size());
    encode(f.ancilla, basis, label + ".anc");
    encode(f.verifier, basis, label + ".ver");
    const bool zero = basis == PrepBasis::Zero;
    for (std::uint32_t j = 0; j < 7; ++j) {
      if (zero) {
        gate(GateKind::CNOT, f.ancilla[j], f.verifier[j], label + ".verify");
      } else {
        gate(GateKind::CNOT, f.verifier[j], f.ancilla[j], label + ".verify");
      }
    }
    for (std::uint32_t j = 0; j < 7; ++j) {
      f.verifier_slots[j] = ex_.num_slots;
      gate(zero ? GateKind::MEAS_Z : GateKind::MEAS_X, f.verifier[j], 0, label + ".verify");
      gate(GateKind::WAIT, f.ancilla[j], 0, label + ".idle");
    }
    f.end = static_cast<std::uint32_t>(ex_.ops.size());
    f.duration = encoder_depth() + 2;
    Op chk;
    chk.code = OpCode::Check;
    chk.aux = static_cast<std::uint32_t>(ex_.factories.size());
    ex_.factories.push_back(f);
    ex_.ops.push_back(chk);
    return f.ancilla;
  }

  // Steane EC on one data block.
  void ec(const Block &data, const std::string &label) {
    const Block plus = factory(PrepBasis::Plus, data, label + ".plus");
    const Block zero = factory(PrepBasis::Zero, data, label + ".zero");
    waits(data, encoder_depth() + 2, label + ".data");
    Correction cx, cz;
    cx.data = cz.data = data;
    cx.x_type = true;
    cz.x_type = false;
    // X errors: data -> |+> ancilla, measure Z.
    for (std::uint32_t j = 0; j < 7; ++j) {
      gate(GateKind::CNOT, data[j], plus[j], label + ".xsyn");
      gate(GateKind::WAIT, zero[j], 0, label + ".idle");
    }
    // Z errors: |0> ancilla -> data, measure X; in parallel with the Z readout above.
    for (std::uint32_t j = 0; j < 7; ++j) {
      cx.slots[j] = ex_.num_slots;
      gate(GateKind::MEAS_Z, plus[j], 0, label + ".xsyn");
      gate(GateKind::CNOT, zero[j], data[j], label + ".zsyn");
    }
    for (std::uint32_t j = 0; j < 7; ++j) {
      cz.slots[j] = ex_.num_slots;
      gate(GateKind::MEAS_X, zero[j], 0, label + ".zsyn");
      gate(GateKind::WAIT, data[j], 0, label + ".data");
    }
    correction(cx);
    correction(cz);
  }

  void correction(const Correction &c) {
    Op op;
    op.code = OpCode::Correct;
    op.aux = static_cast<std::uint32_t>(ex_.corrections.size());
    ex_.corrections.push_back(c);
    ex_.ops.push_back(op);
  }

  ExRec finish(std::vector<Block> outputs) {
    ex_.outputs = std::move(outputs);
    return std::move(ex_);
  }

 private:
  ExRec ex_;
};

}  // namespace detail

/// One Steane EC gadget acting on data qubits 0..6.
inline ExRec build_ec_gadget(EncoderVariant v) {
  detail::ExRecBuilder b(v);
  const Block data = b.new_block();
  b.ec(data, "ec");
  return b.finish({data});
}

/// CNOT extended rectangle: leading EC on both blocks, transversal CNOT
/// (block 1 controls block 2), trailing EC on both blocks.
inline ExRec build_cnot_exrec(EncoderVariant v) {
  detail::ExRecBuilder b(v);
  const Block d1 = b.new_block();
  const Block d2 = b.new_block();
  b.ec(d1, "lec1");
  b.ec(d2, "lec2");
  for (std::uint32_t j = 0; j < 7; ++j) {
    b.gate(GateKind::CNOT, d1[j], d2[j], "cnot");
  }
  b.ec(d1, "tec1");
  b.ec(d2, "tec2");
  return b.finish({d1, d2});
}

}  // namespace bqec::ft
